#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rncca/configuration.hpp"

namespace rncca {

using State = std::uint32_t;
using Configuration = BasicConfiguration<State>;

// Local map of a CA: reads the neighborhood states in offset order.
using LocalMap = std::function<State(std::span<const State>)>;

class RuleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A one-dimensional CA (Q, N, f, #) with Q = {0, ..., state_count - 1}.
// The local map may be table-backed or computed; it is never tabulated here.
class Rule {
public:
    Rule(std::size_t state_count, std::vector<int> neighborhood, LocalMap local, State quiescent);

    std::size_t state_count() const { return state_count_; }
    const std::vector<int>& neighborhood() const { return neighborhood_; }
    State quiescent() const { return quiescent_; }

    // Evaluates the local map; throws RuleError on an out-of-range input or output.
    State apply(std::span<const State> neighbors) const;

    // Evaluates without range checks. Callers guarantee in-range inputs.
    State apply_unchecked(std::span<const State> neighbors) const { return local_(neighbors); }

private:
    std::size_t state_count_;
    std::vector<int> neighborhood_;
    LocalMap local_;
    State quiescent_;
};

Rule make_rule(std::size_t state_count, std::vector<int> neighborhood, LocalMap local, State quiescent);

// Table-backed rule. The table index of (q_1, ..., q_m) is the base-s number
// q_1 q_2 ... q_m with q_1 most significant.
Rule make_table_rule(std::size_t state_count, std::vector<int> neighborhood, std::vector<State> table,
                     State quiescent);

struct Trajectory {
    Rule rule;
    std::vector<Configuration> configs;
};

// Throws RuleError if any stored cell is not a state of the rule.
void check_states(const Rule& rule, const Configuration& config);

Configuration step(const Rule& rule, const Configuration& config);

Trajectory run(const Rule& rule, const Configuration& config, std::size_t steps);

}  // namespace rncca
