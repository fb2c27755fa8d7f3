#pragma once

// Configuration text format, one record per line:
//
//   finite q#=<cell> @<offset>: v1,v2,...
//   cyclic: v1,v2,...
//   biperiodic left=v1,... center@<offset>=v1,... right=v1,...
//
// Cells are decimal states, or "(c,r)" pair literals for partitioned
// configurations. Periodic words are phase-anchored at position 0. Lines that
// are blank or start with '#' are skipped; only the first record is read.

#include <string>
#include <string_view>

#include "rncca/rpca.hpp"
#include "rncca/rule.hpp"

namespace rncca {

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t column, const std::string& message)
        : std::runtime_error("column " + std::to_string(column) + ": " + message), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

std::string format_configuration(const Configuration& config);
std::string format_configuration(const RpcaConfiguration& config);

Configuration parse_configuration(std::string_view text);
RpcaConfiguration parse_rpca_configuration(std::string_view text);

// True if the first record uses "(c,r)" pair literals.
bool holds_pair_cells(std::string_view text);

}  // namespace rncca
