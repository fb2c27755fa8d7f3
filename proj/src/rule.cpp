#include "rncca/rule.hpp"

#include <algorithm>
#include <set>

namespace rncca {

Rule::Rule(std::size_t state_count, std::vector<int> neighborhood, LocalMap local, State quiescent)
    : state_count_(state_count),
      neighborhood_(std::move(neighborhood)),
      local_(std::move(local)),
      quiescent_(quiescent) {
    if (state_count_ == 0) throw RuleError("state count must be positive");
    if (neighborhood_.empty()) throw RuleError("neighborhood must be non-empty");
    if (std::set<int>(neighborhood_.begin(), neighborhood_.end()).size() != neighborhood_.size())
        throw RuleError("neighborhood offsets must be pairwise distinct");
    if (!local_) throw RuleError("local map is empty");
    if (quiescent_ >= state_count_) throw RuleError("quiescent state out of range");
    std::vector<State> all_quiet(neighborhood_.size(), quiescent_);
    const State image = apply(all_quiet);
    if (image != quiescent_)
        throw RuleError("local map does not fix the quiescent state " + std::to_string(quiescent_) +
                        " (maps to " + std::to_string(image) + ")");
}

State Rule::apply(std::span<const State> neighbors) const {
    if (neighbors.size() != neighborhood_.size()) throw RuleError("neighborhood arity mismatch");
    for (State q : neighbors)
        if (q >= state_count_) throw RuleError("state " + std::to_string(q) + " out of range");
    const State out = local_(neighbors);
    if (out >= state_count_) throw RuleError("local map produced out-of-range state " + std::to_string(out));
    return out;
}

Rule make_rule(std::size_t state_count, std::vector<int> neighborhood, LocalMap local, State quiescent) {
    return Rule(state_count, std::move(neighborhood), std::move(local), quiescent);
}

Rule make_table_rule(std::size_t state_count, std::vector<int> neighborhood, std::vector<State> table,
                     State quiescent) {
    std::size_t expected = 1;
    for (std::size_t i = 0; i < neighborhood.size(); ++i) expected *= state_count;
    if (table.size() != expected)
        throw RuleError("rule table has " + std::to_string(table.size()) + " entries, expected " +
                        std::to_string(expected));
    for (State q : table)
        if (q >= state_count) throw RuleError("rule table entry " + std::to_string(q) + " out of range");
    auto local = [s = state_count, table = std::move(table)](std::span<const State> nb) {
        std::size_t index = 0;
        for (State q : nb) index = index * s + q;
        return table[index];
    };
    return Rule(state_count, std::move(neighborhood), std::move(local), quiescent);
}

void check_states(const Rule& rule, const Configuration& config) {
    config.for_each_stored_cell([&](State q) {
        if (q >= rule.state_count())
            throw RuleError("configuration state " + std::to_string(q) + " out of range for a " +
                            std::to_string(rule.state_count()) + "-state rule");
    });
}

Configuration step(const Rule& rule, const Configuration& config) {
    check_states(rule, config);
    return step_configuration(config, std::span<const int>(rule.neighborhood()),
                              [&](std::span<const State> nb) { return rule.apply(nb); });
}

Trajectory run(const Rule& rule, const Configuration& config, std::size_t steps) {
    Trajectory trajectory{rule, {config}};
    trajectory.configs.reserve(steps + 1);
    for (std::size_t t = 0; t < steps; ++t) trajectory.configs.push_back(step(rule, trajectory.configs.back()));
    return trajectory;
}

}  // namespace rncca
