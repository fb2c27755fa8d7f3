#pragma once

// Two-neighbor partitioned CA of radius 1/2 with neighborhood (0, -1): every
// cell holds a center part c and a right part r, and the next state of cell x
// is f(c_x, r_{x-1}).

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rncca/configuration.hpp"
#include "rncca/rule.hpp"

namespace rncca {

struct PairState {
    std::uint32_t c = 0;
    std::uint32_t r = 0;

    auto operator<=>(const PairState&) const = default;
};

using RpcaConfiguration = BasicConfiguration<PairState>;

class Rpca2 {
public:
    // `table` is indexed by c * r_size + r. The quiescent pair is (0, 0) and
    // must be a fixed point of the table.
    Rpca2(std::uint32_t c_size, std::uint32_t r_size, std::vector<PairState> table);

    std::uint32_t c_size() const { return c_size_; }
    std::uint32_t r_size() const { return r_size_; }
    std::uint32_t pair_count() const { return c_size_ * r_size_; }
    static constexpr PairState quiescent() { return {0, 0}; }

    PairState apply(PairState in) const { return table_[index(in)]; }
    PairState apply(std::uint32_t c, std::uint32_t r) const { return apply(PairState{c, r}); }

    std::uint32_t index(PairState p) const { return p.c * r_size_ + p.r; }
    PairState pair(std::uint32_t index) const { return {index / r_size_, index % r_size_}; }
    bool contains(PairState p) const { return p.c < c_size_ && p.r < r_size_; }

    const std::vector<PairState>& table() const { return table_; }

    bool operator==(const Rpca2&) const = default;

private:
    std::uint32_t c_size_;
    std::uint32_t r_size_;
    std::vector<PairState> table_;
};

// Two distinct inputs with the same image, if any.
struct Collision {
    PairState first;
    PairState second;
    PairState image;
};

std::optional<Collision> find_collision(const Rpca2& p);

// True iff the local map is a permutation of C x R, which is equivalent to
// injectivity of the global map.
bool check_local_injective(const Rpca2& p);

void check_states(const Rpca2& p, const RpcaConfiguration& config);

RpcaConfiguration step_rpca(const Rpca2& p, const RpcaConfiguration& config);

std::vector<RpcaConfiguration> run_rpca(const Rpca2& p, const RpcaConfiguration& config, std::size_t steps);

// Backward stepper of a reversible PCA. Given a configuration at time t+1 it
// recovers the unique predecessor: with (c_x, r_{x-1}) = f^{-1}(b_x), the old
// cell x is (c-part of f^{-1}(b_x), r-part of f^{-1}(b_{x+1})).
class RpcaInverse {
public:
    explicit RpcaInverse(const Rpca2& p);

    RpcaConfiguration step_back(const RpcaConfiguration& config) const;

private:
    Rpca2 forward_;
    std::vector<PairState> inverse_;
};

RpcaInverse invert_rpca(const Rpca2& p);

// Built-in rules: "identity", "xor", "swap". Sizes default to |C| = |R| = 2.
Rpca2 identity_rpca(std::uint32_t c_size, std::uint32_t r_size);
Rpca2 xor_rpca();
Rpca2 swap_rpca(std::uint32_t size);

// Uniformly random reversible PCA. Pairs are listed in lexicographic order
// (index c * |R| + r) and shuffled with Fisher-Yates: for i = N-1 down to 1,
// j = rng.uniform(i + 1), swap(a[i], a[j]). The table maps pair i to a[i].
// If a[0] != 0, the outputs of 0 and of the pair mapped to 0 are exchanged so
// that (0, 0) is fixed.
Rpca2 random_rpca(std::uint64_t seed, std::uint32_t c_size, std::uint32_t r_size);

// Looks up "identity", "xor", "swap" or "random:<seed>:<C>:<R>".
Rpca2 example_rpca(std::string_view name);

// The PCA as an ordinary CA over pair indices with neighborhood (0, -1).
Rule to_rule(const Rpca2& p);

// Rule text format:
//   rpca C=<int> R=<int>
//   c r -> c' r'        (one line per pair, each pair exactly once)
// Text after "#" and blank lines are ignored.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

Rpca2 parse_rpca(std::string_view text);
std::string format_rpca(const Rpca2& p);

}  // namespace rncca
