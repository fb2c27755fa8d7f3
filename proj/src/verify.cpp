#include "rncca/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "rncca/random.hpp"
#include "rncca/text_format.hpp"

namespace rncca {

namespace {

using Clock = std::chrono::steady_clock;

unsigned thread_count(const VerifyOptions& options) {
    if (options.threads) return options.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exponent) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
        out *= base;
    }
    return out;
}

std::uint64_t within_budget(std::uint64_t base, std::size_t exponent, const VerifyOptions& options,
                            std::string_view what) {
    auto total = checked_pow(base, exponent);
    if (!total || *total > options.budget)
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(exponent) +
                             " words exceed the exhaustive budget of " + std::to_string(options.budget) +
                             "; use a sampled mode");
    return *total;
}

// Lowest index in [0, total) for which `fn` reports a failure. The range is
// split into contiguous chunks; the answer does not depend on the split.
template <class Fn>
std::optional<std::pair<std::uint64_t, Counterexample>> first_failure(std::uint64_t total, unsigned threads, Fn&& fn) {
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1)));
    std::atomic<std::uint64_t> best{total};
    std::vector<std::optional<std::pair<std::uint64_t, Counterexample>>> found(threads);
    std::vector<std::exception_ptr> errors(threads);
    const std::uint64_t chunk = (total + threads - 1) / threads;

    auto work = [&](unsigned id) {
        try {
            const std::uint64_t begin = id * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            for (std::uint64_t i = begin; i < end && i < best.load(std::memory_order_relaxed); ++i) {
                if (auto cex = fn(i)) {
                    found[id] = {i, std::move(*cex)};
                    std::uint64_t current = best.load();
                    while (i < current && !best.compare_exchange_weak(current, i)) {
                    }
                    return;
                }
            }
        } catch (...) {
            errors[id] = std::current_exception();
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::optional<std::pair<std::uint64_t, Counterexample>> out;
    for (auto& f : found)
        if (f && (!out || f->first < out->first)) out = std::move(f);
    return out;
}

// Digits of `index` in base s, most significant first.
std::vector<State> word_at(std::uint64_t index, std::uint64_t s, std::size_t length) {
    std::vector<State> word(length);
    for (std::size_t i = length; i-- > 0;) {
        word[i] = static_cast<State>(index % s);
        index /= s;
    }
    return word;
}

std::int64_t sum(std::span<const State> cells) {
    std::int64_t out = 0;
    for (State q : cells) out += q;
    return out;
}

std::vector<State> step_cyclic_word(const Rule& rule, const std::vector<State>& word) {
    const auto n = static_cast<Position>(word.size());
    return evaluate_window<State>(
        0, n - 1, std::span<const int>(rule.neighborhood()),
        [&](Position x) { return word[static_cast<std::size_t>(floor_mod(x, n))]; },
        [&](std::span<const State> nb) { return rule.apply(nb); });
}

std::vector<State> step_finite_word(const Rule& rule, const std::vector<State>& word) {
    const auto& nbh = rule.neighborhood();
    const auto [mn, mx] = std::minmax_element(nbh.begin(), nbh.end());
    const Position lo = -std::max(0, *mx);
    const Position hi = static_cast<Position>(word.size()) - 1 + std::max(0, -*mn);
    return evaluate_window<State>(
        lo, hi, std::span<const int>(nbh),
        [&](Position x) {
            return x >= 0 && x < static_cast<Position>(word.size()) ? word[static_cast<std::size_t>(x)] : 0;
        },
        [&](std::span<const State> nb) { return rule.apply(nb); });
}

std::optional<Counterexample> conservation_failure(const Rule& rule, const std::vector<State>& word, bool cyclic) {
    const auto image = cyclic ? step_cyclic_word(rule, word) : step_finite_word(rule, word);
    const auto before = sum(word);
    const auto after = sum(image);
    if (before == after) return std::nullopt;
    const std::string input = cyclic ? format_configuration(Configuration(Cyclic<State>{word}))
                                     : format_configuration(Configuration(Finite<State>{0, word, 0}));
    return Counterexample{input, "sum " + std::to_string(before), "sum " + std::to_string(after)};
}

void finish(VerificationReport& report, Clock::time_point start,
            const std::optional<std::pair<std::uint64_t, Counterexample>>& failure) {
    report.passed = !failure;
    if (failure) report.counterexample = failure->second;
    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

std::uint64_t encode_word(std::span<const State> word, std::uint64_t s) {
    std::uint64_t code = 0;
    for (State q : word) code = code * s + q;
    return code;
}

}  // namespace

std::string serialize(const VerificationReport& report) {
    std::ostringstream out;
    out << "property=" << report.property << " domain=" << report.domain
        << " passed=" << (report.passed ? "true" : "false");
    if (report.counterexample) {
        const auto& c = *report.counterexample;
        out << " counterexample=\"" << c.input << "; expected " << c.expected << "; actual " << c.actual << '"';
    }
    out << " elapsed_ms=" << report.elapsed.count();
    return out.str();
}

std::uint64_t budget_from_environment(std::uint64_t fallback) {
    const char* value = std::getenv("RNCCA_BUDGET");
    if (!value || !*value) return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (*end != '\0' || parsed == 0) return fallback;
    return parsed;
}

VerificationReport check_number_conserving(const Rule& rule, const SweepMode& mode, const VerifyOptions& options) {
    if (rule.quiescent() != 0) throw RuleError("number conservation needs quiescent state 0");
    const auto start = Clock::now();
    const std::uint64_t s = rule.state_count();
    VerificationReport report{"conserve", "", true, std::nullopt, {}};
    std::optional<std::pair<std::uint64_t, Counterexample>> failure;

    if (auto ex = std::get_if<Exhaustive>(&mode)) {
        if (ex->max_support < 1) throw std::invalid_argument("max_support must be at least 1");
        const auto length = static_cast<std::size_t>(ex->max_support);
        const auto finite_words = within_budget(s, length, options, "conserve");
        failure = first_failure(finite_words, thread_count(options),
                                [&](std::uint64_t i) { return conservation_failure(rule, word_at(i, s, length), false); });
        std::uint64_t cyclic_words = 0;
        for (std::size_t n = 1; n <= length && !failure; ++n) {
            const auto count = within_budget(s, n, options, "conserve");
            cyclic_words += count;
            failure = first_failure(count, thread_count(options),
                                    [&](std::uint64_t i) { return conservation_failure(rule, word_at(i, s, n), true); });
        }
        report.domain = "exhaustive(states=" + std::to_string(s) + ",max_support=" + std::to_string(length) +
                        ",finite_words=" + std::to_string(finite_words) +
                        ",cyclic_words=" + std::to_string(cyclic_words) + ")";
    } else {
        const auto& sm = std::get<Sampled>(mode);
        if (sm.max_support < 1) throw std::invalid_argument("max_support must be at least 1");
        Rng rng(sm.seed);
        std::vector<std::vector<State>> words(sm.count);
        for (auto& w : words) {
            w.resize(1 + rng.uniform(static_cast<std::uint64_t>(sm.max_support)));
            for (auto& q : w) q = static_cast<State>(rng.uniform(s));
        }
        failure = first_failure(2 * sm.count, thread_count(options), [&](std::uint64_t i) {
            return conservation_failure(rule, words[i / 2], i % 2 == 1);
        });
        report.domain = "sampled(states=" + std::to_string(s) + ",count=" + std::to_string(sm.count) +
                        ",seed=" + std::to_string(sm.seed) + ",max_support=" + std::to_string(sm.max_support) + ")";
    }
    finish(report, start, failure);
    return report;
}

VerificationReport check_injective_cyclic(const Rule& rule, std::size_t n, const CycleMode& mode,
                                          const VerifyOptions& options) {
    if (n < 1) throw std::invalid_argument("cycle length must be at least 1");
    const auto start = Clock::now();
    const std::uint64_t s = rule.state_count();
    VerificationReport report{"inject", "", true, std::nullopt, {}};
    std::optional<std::pair<std::uint64_t, Counterexample>> failure;

    auto image_code = [&](const std::vector<State>& word) { return encode_word(step_cyclic_word(rule, word), s); };
    auto collision = [&](const std::vector<State>& a, const std::vector<State>& b) {
        const auto image = step_cyclic_word(rule, a);
        return Counterexample{format_configuration(Configuration(Cyclic<State>{a})) + " and " +
                                  format_configuration(Configuration(Cyclic<State>{b})),
                              "distinct images", "both map to " + format_configuration(Configuration(Cyclic<State>{image}))};
    };

    if (std::holds_alternative<AllWords>(mode)) {
        const auto total = within_budget(s, n, options, "inject");
        std::vector<std::atomic<std::uint64_t>> seen((total + 63) / 64);
        std::atomic<bool> clash{false};
        first_failure(total, thread_count(options), [&](std::uint64_t i) -> std::optional<Counterexample> {
            const auto code = image_code(word_at(i, s, n));
            const std::uint64_t bit = std::uint64_t{1} << (code % 64);
            if (seen[code / 64].fetch_or(bit) & bit) clash = true;
            return std::nullopt;
        });
        if (clash) {
            // Deterministic witness: the first word whose image was already hit,
            // paired with the earliest word sharing that image.
            std::vector<std::uint64_t> hit((total + 63) / 64, 0);
            for (std::uint64_t i = 0; i < total && !failure; ++i) {
                const auto code = image_code(word_at(i, s, n));
                const std::uint64_t bit = std::uint64_t{1} << (code % 64);
                if (hit[code / 64] & bit) {
                    for (std::uint64_t j = 0; j < i; ++j)
                        if (image_code(word_at(j, s, n)) == code) {
                            failure = {{i, collision(word_at(j, s, n), word_at(i, s, n))}};
                            break;
                        }
                }
                hit[code / 64] |= bit;
            }
        }
        report.domain = "exhaustive(states=" + std::to_string(s) + ",cycle=" + std::to_string(n) +
                        ",words=" + std::to_string(total) + ")";
    } else {
        const auto& rw = std::get<RandomWords>(mode);
        Rng rng(rw.seed);
        std::unordered_map<std::uint64_t, std::vector<State>> preimage;
        if (!checked_pow(s, n)) throw BudgetExceeded("inject: cyclic words of this length cannot be indexed");
        for (std::uint64_t i = 0; i < rw.count && !failure; ++i) {
            std::vector<State> word(n);
            for (auto& q : word) q = static_cast<State>(rng.uniform(s));
            auto [it, inserted] = preimage.try_emplace(image_code(word), word);
            if (!inserted && it->second != word) failure = {{i, collision(it->second, word)}};
        }
        report.domain = "sampled(states=" + std::to_string(s) + ",cycle=" + std::to_string(n) +
                        ",count=" + std::to_string(rw.count) + ",seed=" + std::to_string(rw.seed) + ")";
    }
    finish(report, start, failure);
    return report;
}

VerificationReport check_rpca_injective_cyclic(const Rpca2& p, std::size_t n, const CycleMode& mode,
                                               const VerifyOptions& options) {
    auto report = check_injective_cyclic(to_rule(p), n, mode, options);
    report.property = "inject-rpca";
    return report;
}

std::vector<RpcaConfiguration> sweep_inputs(const Rpca2& p, const SweepMode& mode, const VerifyOptions& options) {
    const std::uint64_t pairs = p.pair_count();
    std::vector<RpcaConfiguration> out;
    auto make = [&](const std::vector<State>& indices) {
        std::vector<PairState> word;
        for (State q : indices) word.push_back(p.pair(q));
        return RpcaConfiguration(Finite<PairState>{0, std::move(word), Rpca2::quiescent()});
    };
    if (auto ex = std::get_if<Exhaustive>(&mode)) {
        if (ex->max_support < 1) throw std::invalid_argument("max_support must be at least 1");
        const auto length = static_cast<std::size_t>(ex->max_support);
        const auto total = within_budget(pairs, length, options, "sweep");
        out.reserve(total);
        for (std::uint64_t i = 0; i < total; ++i) out.push_back(make(word_at(i, pairs, length)));
        return out;
    }
    const auto& sm = std::get<Sampled>(mode);
    if (sm.max_support < 1) throw std::invalid_argument("max_support must be at least 1");
    Rng rng(sm.seed);
    for (std::uint64_t i = 0; i < sm.count; ++i) {
        std::vector<State> indices(1 + rng.uniform(static_cast<std::uint64_t>(sm.max_support)));
        for (auto& q : indices) q = static_cast<State>(rng.uniform(pairs));
        out.push_back(make(indices));
    }
    return out;
}

namespace {

std::string describe(const SweepMode& mode, std::size_t inputs) {
    if (auto ex = std::get_if<Exhaustive>(&mode))
        return "exhaustive(max_support=" + std::to_string(ex->max_support) + ",inputs=" + std::to_string(inputs);
    const auto& sm = std::get<Sampled>(mode);
    return "sampled(count=" + std::to_string(sm.count) + ",seed=" + std::to_string(sm.seed) +
           ",max_support=" + std::to_string(sm.max_support);
}

Configuration run_to(const Rule& rule, Configuration config, std::size_t steps) {
    for (std::size_t t = 0; t < steps; ++t) config = step(rule, config);
    return config;
}

}  // namespace

VerificationReport check_simulation_correspondence(const Rpca2& p, const SweepMode& mode, std::size_t steps,
                                                   const VerifyOptions& options) {
    const auto start = Clock::now();
    const auto ncca = convert(p);
    const auto inputs = sweep_inputs(p, mode, options);
    VerificationReport report{"simulate", describe(mode, inputs.size()) + ",steps=" + std::to_string(steps) + ")",
                              true, std::nullopt, {}};

    auto failure = first_failure(inputs.size(), thread_count(options), [&](std::uint64_t i) -> std::optional<Counterexample> {
        auto alpha = inputs[i];
        auto image = encode_tau(ncca.code(), alpha);
        for (std::size_t t = 1; t <= steps; ++t) {
            alpha = step_rpca(p, alpha);
            image = run_to(ncca.rule(), image, 2);
            const auto expected = encode_tau(ncca.code(), alpha);
            if (!(image == expected))
                return Counterexample{format_configuration(inputs[i]) + " at t=" + std::to_string(t),
                                      format_configuration(expected), format_configuration(image)};
        }
        return std::nullopt;
    });
    finish(report, start, failure);
    return report;
}

namespace {

TauPrimeReport check_uniform_spacing(const Rpca2& p, int k, const SweepMode& mode, std::size_t steps,
                                     const VerifyOptions& options, Clock::time_point start) {
    const auto ncca = convert(p);
    const auto inputs = sweep_inputs(p, mode, options);
    const int max_period = 4 * k;
    // working[P] stays true while period P matches on every input seen so far.
    std::vector<std::atomic<bool>> working(static_cast<std::size_t>(max_period + 1));
    for (auto& w : working) w = true;
    working[0] = false;

    auto failure = first_failure(inputs.size(), thread_count(options), [&](std::uint64_t i) -> std::optional<Counterexample> {
        const auto source = run_rpca(p, inputs[i], steps);
        std::vector<Configuration> expected;
        for (const auto& a : source) expected.push_back(encode_tau_prime(ncca.code(), a, UniformSpacing{k}));
        const auto trajectory = run(ncca.rule(), expected.front(), static_cast<std::size_t>(max_period) * steps);
        std::optional<Counterexample> at_k;
        for (int period = 1; period <= max_period; ++period) {
            for (std::size_t t = 1; t <= steps; ++t) {
                const auto& actual = trajectory.configs[static_cast<std::size_t>(period) * t];
                if (!(actual == expected[t])) {
                    working[static_cast<std::size_t>(period)] = false;
                    if (period == k)
                        at_k = Counterexample{format_configuration(inputs[i]) + " at t=" + std::to_string(t),
                                              format_configuration(expected[t]), format_configuration(actual)};
                    break;
                }
            }
        }
        return at_k;
    });

    TauPrimeReport out;
    out.report = {"tauprime", describe(mode, inputs.size()) + ",k=" + std::to_string(k) + ",steps=" +
                                  std::to_string(steps),
                  true, std::nullopt, {}};
    // A failure at period k stops the sweep early, so the search is finished
    // on the remaining inputs sequentially.
    if (failure) {
        for (std::size_t i = failure->first + 1; i < inputs.size(); ++i) {
            const auto source = run_rpca(p, inputs[i], steps);
            std::vector<Configuration> expected;
            for (const auto& a : source) expected.push_back(encode_tau_prime(ncca.code(), a, UniformSpacing{k}));
            const auto trajectory = run(ncca.rule(), expected.front(), static_cast<std::size_t>(max_period) * steps);
            for (int period = 1; period <= max_period; ++period)
                for (std::size_t t = 1; t <= steps && working[static_cast<std::size_t>(period)]; ++t)
                    if (!(trajectory.configs[static_cast<std::size_t>(period) * t] == expected[t]))
                        working[static_cast<std::size_t>(period)] = false;
        }
    }
    for (int period = 1; period <= max_period; ++period)
        if (working[static_cast<std::size_t>(period)]) {
            out.period = period;
            break;
        }
    out.report.domain += ",period=" + (out.period ? std::to_string(*out.period) : std::string("none")) + ")";
    finish(out.report, start, failure);
    return out;
}

TauPrimeReport check_gap_spacing(const Rpca2& p, const GapSpacing& spacing, const SweepMode& mode, std::size_t steps,
                                 const VerifyOptions& options, Clock::time_point start) {
    const auto ncca = convert(p);
    const auto& code = ncca.code();
    const std::uint64_t pairs = p.pair_count();
    if (pairs < 2) throw std::invalid_argument("gap spacing check needs at least one non-quiescent pair");
    const std::size_t length = spacing.gaps.size() + 1;

    // Supports of exactly `length` cells: both end cells are non-quiescent.
    std::vector<RpcaConfiguration> inputs;
    auto make = [&](const std::vector<State>& indices) {
        std::vector<PairState> word;
        for (State q : indices) word.push_back(p.pair(q));
        return RpcaConfiguration(Finite<PairState>{0, std::move(word), Rpca2::quiescent()});
    };
    std::string domain;
    if (std::holds_alternative<Exhaustive>(mode)) {
        const auto total = within_budget(pairs, length, options, "tauprime");
        for (std::uint64_t i = 0; i < total; ++i) {
            auto w = word_at(i, pairs, length);
            if (w.front() != 0 && w.back() != 0) inputs.push_back(make(w));
        }
        domain = "exhaustive(";
    } else {
        const auto& sm = std::get<Sampled>(mode);
        Rng rng(sm.seed);
        for (std::uint64_t i = 0; i < sm.count; ++i) {
            std::vector<State> w(length);
            for (auto& q : w) q = static_cast<State>(rng.uniform(pairs));
            w.front() = static_cast<State>(1 + rng.uniform(pairs - 1));
            w.back() = static_cast<State>(1 + rng.uniform(pairs - 1));
            inputs.push_back(make(w));
        }
        domain = "sampled(count=" + std::to_string(sm.count) + ",seed=" + std::to_string(sm.seed) + ",";
    }
    std::string gaps;
    for (std::size_t i = 0; i < spacing.gaps.size(); ++i) gaps += (i ? ":" : "") + std::to_string(spacing.gaps[i]);
    domain += "inputs=" + std::to_string(inputs.size()) + ",gaps=" + gaps + ",background_gap=" +
              std::to_string(spacing.background_gap) + ",steps=" + std::to_string(steps) + ")";

    const Position background_period = 2 + spacing.background_gap;
    auto failure = first_failure(inputs.size(), thread_count(options), [&](std::uint64_t i) -> std::optional<Counterexample> {
        const auto encoded = encode_tau_prime(code, inputs[i], spacing);
        const auto starts = gap_block_starts(background_period * inputs[i].finite()->offset, spacing.gaps);
        const Position lo = starts.front() - 2 * background_period;
        const Position hi = starts.back() + 1 + 2 * background_period;
        const auto trajectory = run(ncca.rule(), encoded, steps);
        const auto rows = mass_ledger(code, trajectory.configs, lo, hi);
        if (ledger_is_constant(rows)) return std::nullopt;
        const auto bad = std::find_if(rows.begin(), rows.end(), [&](const LedgerRow& r) {
            return r.heavy != rows.front().heavy || r.light != rows.front().light;
        });
        return Counterexample{format_configuration(encoded) + " window=[" + std::to_string(lo) + "," +
                                  std::to_string(hi) + "] at t=" + std::to_string(bad->t),
                              "heavy " + std::to_string(rows.front().heavy) + " light " + std::to_string(rows.front().light),
                              "heavy " + std::to_string(bad->heavy) + " light " + std::to_string(bad->light)};
    });
    TauPrimeReport out;
    out.report = {"tauprime-gaps", domain, true, std::nullopt, {}};
    finish(out.report, start, failure);
    return out;
}

}  // namespace

TauPrimeReport check_tau_prime_correspondence(const Rpca2& p, const Spacing& spacing, const SweepMode& mode,
                                              std::size_t steps, const VerifyOptions& options) {
    const auto start = Clock::now();
    if (auto gaps = std::get_if<GapSpacing>(&spacing)) return check_gap_spacing(p, *gaps, mode, steps, options, start);
    const int k = std::get<UniformSpacing>(spacing).period;
    if (k < 2) throw std::invalid_argument("block period must be at least 2");
    if (k == 2) {
        TauPrimeReport out{check_simulation_correspondence(p, mode, steps, options), std::nullopt};
        if (out.report.passed) out.period = 2;
        return out;
    }
    return check_uniform_spacing(p, k, mode, steps, options, start);
}

std::vector<LedgerRow> mass_ledger(const ParticleCode& code, std::span<const Configuration> trajectory, Position lo,
                                   Position hi) {
    std::vector<LedgerRow> rows;
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        const auto& config = trajectory[t];
        LedgerRow row{t, 0, 0};
        for (Position x = lo; x <= hi; ++x) row.heavy += code.heavy(config.at(x));
        const auto shift = static_cast<Position>(t);
        for (Position x = lo + shift; x <= hi + shift; ++x) row.light += code.light(config.at(x));
        rows.push_back(row);
    }
    return rows;
}

bool ledger_is_constant(std::span<const LedgerRow> rows) {
    return std::all_of(rows.begin(), rows.end(), [&](const LedgerRow& r) {
        return r.heavy == rows.front().heavy && r.light == rows.front().light;
    });
}

}  // namespace rncca
