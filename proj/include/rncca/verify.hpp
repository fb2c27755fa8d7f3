#pragma once

// Bounded oracles for the properties of the converted rules: number
// conservation, injectivity on cyclic configurations, step-for-step
// simulation of the source PCA, and the heavy/light mass ledger.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rncca/convert.hpp"
#include "rncca/rpca.hpp"
#include "rncca/rule.hpp"

namespace rncca {

struct Counterexample {
    std::string input;
    std::string expected;
    std::string actual;
};

struct VerificationReport {
    std::string property;
    std::string domain;
    bool passed = true;
    std::optional<Counterexample> counterexample;
    std::chrono::milliseconds elapsed{0};
};

// property=<name> domain=<desc> passed=<bool> [counterexample="..."] elapsed_ms=<int>
std::string serialize(const VerificationReport& report);

// Finite words of exactly max_support cells (shorter supports are covered by
// quiescent padding), or `count` random words of 1..max_support cells.
struct Exhaustive {
    int max_support = 1;
};
struct Sampled {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    int max_support = 1;
};
using SweepMode = std::variant<Exhaustive, Sampled>;

// Cyclic words of a fixed length: all of them, or `count` random ones.
struct AllWords {};
struct RandomWords {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};
using CycleMode = std::variant<AllWords, RandomWords>;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct VerifyOptions {
    std::uint64_t budget = kDefaultBudget;  // maximum words per exhaustive sweep
    unsigned threads = 0;                   // 0: hardware concurrency
};

// Reads RNCCA_BUDGET if set to a positive integer.
std::uint64_t budget_from_environment(std::uint64_t fallback = kDefaultBudget);

class BudgetExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Sum of cells before and after one step, on finite words over a zero
// background and on cyclic words of every length 1..max_support.
VerificationReport check_number_conserving(const Rule& rule, const SweepMode& mode, const VerifyOptions& options = {});

// No two distinct cyclic words of length n share an image. Words are compared
// exactly, so rotations of one word count as distinct.
VerificationReport check_injective_cyclic(const Rule& rule, std::size_t n, const CycleMode& mode,
                                          const VerifyOptions& options = {});

// Cyclic injectivity of a partitioned rule, through its pair-index CA.
VerificationReport check_rpca_injective_cyclic(const Rpca2& p, std::size_t n, const CycleMode& mode,
                                               const VerifyOptions& options = {});

// Initial configurations enumerated or sampled by a sweep mode.
std::vector<RpcaConfiguration> sweep_inputs(const Rpca2& p, const SweepMode& mode,
                                            const VerifyOptions& options = {});

// tau(F^t(a)) == F~^(2t)(tau(a)) for every input a and t <= steps.
VerificationReport check_simulation_correspondence(const Rpca2& p, const SweepMode& mode, std::size_t steps,
                                                   const VerifyOptions& options = {});

struct TauPrimeReport {
    VerificationReport report;
    // Smallest P in 1..4k with F~^(Pt)(tau'(a)) == tau'(F^t(a)) on every input.
    std::optional<int> period;
};

// Uniform spacing k: passes iff period k works; also searches for the
// smallest working period. k == 2 is the dense embedding. Gap spacing:
// checks windowed heavy and light conservation for `steps` steps on inputs
// whose support matches the gap list.
TauPrimeReport check_tau_prime_correspondence(const Rpca2& p, const Spacing& spacing, const SweepMode& mode,
                                              std::size_t steps, const VerifyOptions& options = {});

struct LedgerRow {
    std::size_t t = 0;
    std::int64_t heavy = 0;  // over [lo, hi]
    std::int64_t light = 0;  // over [lo + t, hi + t]
};

// Per-step heavy and light mass over a window. The heavy window is fixed and
// the light window advances one cell per step, following the light particles.
std::vector<LedgerRow> mass_ledger(const ParticleCode& code, std::span<const Configuration> trajectory, Position lo,
                                   Position hi);

// True if every row carries the same heavy and the same light mass.
bool ledger_is_constant(std::span<const LedgerRow> rows);

}  // namespace rncca
