#pragma once

// Rule file formats read by the command-line tool.
//
//   rpca   a partitioned rule (see rpca.hpp)
//   ncca   a converted rule: one metadata line
//            ncca C=<c> R=<r> states=<4cr> neighborhood=-2,-1,0,1 phi=canonical source=<hash>
//          followed by the source rpca table, and optionally by the balanced
//          pairs as "bc <q1> <q2>" and "br <q1> <q2>" lines
//   ca     a table-backed rule:
//            ca states=<s> neighborhood=<n1,...> quiescent=<q> [default=<q>]
//            q1 ... qm -> q
//          tuples without a line map to `default`; without a default every
//          tuple must be listed.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "rncca/convert.hpp"
#include "rncca/rpca.hpp"
#include "rncca/rule.hpp"

namespace rncca {

// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);

// Hash of the canonical text of a partitioned rule, as 16 lowercase hex digits.
std::string source_hash(const Rpca2& p);

std::string format_ncca(const NccaRule& rule, bool dump_balanced_pairs = false);
NccaRule parse_ncca(std::string_view text);

Rule parse_table_rule(std::string_view text);

using RuleFile = std::variant<Rpca2, NccaRule, Rule>;

// Dispatches on the first keyword of the first non-comment line.
RuleFile parse_rule_file(std::string_view text);

}  // namespace rncca
