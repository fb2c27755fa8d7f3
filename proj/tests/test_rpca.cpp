#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rncca/random.hpp"
#include "rncca/rpca.hpp"
#include "rncca/verify.hpp"

using namespace rncca;

namespace {

Rpca2 constant_rpca() { return Rpca2(2, 2, std::vector<PairState>(4, PairState{0, 0})); }

// Every word of `len` cells over the pair alphabet, at offset 0.
std::vector<RpcaConfiguration> all_words(const Rpca2& p, std::size_t len) {
    std::vector<RpcaConfiguration> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= p.pair_count();
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<PairState> w(len);
        auto k = code;
        for (auto& cell : w) {
            cell = p.pair(static_cast<std::uint32_t>(k % p.pair_count()));
            k /= p.pair_count();
        }
        out.push_back(Finite<PairState>{0, w, {0, 0}});
    }
    return out;
}

}  // namespace

TEST_CASE("local injectivity") {
    CHECK(check_local_injective(identity_rpca(2, 2)));
    CHECK(check_local_injective(xor_rpca()));
    CHECK_FALSE(check_local_injective(constant_rpca()));
    const auto witness = find_collision(constant_rpca());
    REQUIRE(witness);
    CHECK(witness->first != witness->second);
    CHECK(witness->image == PairState{0, 0});
}

TEST_CASE("table validation") {
    CHECK_THROWS_AS(Rpca2(2, 2, {{0, 0}, {0, 1}, {1, 0}}), RuleError);
    CHECK_THROWS_AS(Rpca2(2, 2, {{0, 1}, {0, 0}, {1, 0}, {1, 1}}), RuleError);
    CHECK_THROWS_AS(Rpca2(2, 2, {{0, 0}, {0, 2}, {1, 0}, {1, 1}}), RuleError);
    CHECK_THROWS_AS(Rpca2(0, 2, {}), RuleError);
}

TEST_CASE("forward step") {
    const RpcaConfiguration a = Finite<PairState>{0, {{1, 1}}, {0, 0}};
    const auto b = step_rpca(xor_rpca(), a);
    CHECK(b.at(0) == PairState{1, 0});
    CHECK(b.at(1) == PairState{1, 1});
    CHECK(b.at(-1) == PairState{0, 0});
    CHECK(b.at(2) == PairState{0, 0});

    // identity: cell x becomes (c_x, r_{x-1})
    const RpcaConfiguration w = Finite<PairState>{0, {{1, 1}, {0, 1}, {1, 0}}, {0, 0}};
    const auto s = step_rpca(identity_rpca(2, 2), w);
    for (Position x = -2; x <= 4; ++x) {
        CHECK(s.at(x).c == w.at(x).c);
        CHECK(s.at(x).r == w.at(x - 1).r);
    }

    const RpcaConfiguration zero = Finite<PairState>{0, {}, {0, 0}};
    CHECK(step_rpca(random_rpca(5, 3, 3), zero) == zero);
    CHECK(step_rpca(xor_rpca(), Cyclic<PairState>{{{0, 0}}}) == RpcaConfiguration(Cyclic<PairState>{{{0, 0}}}));
}

TEST_CASE("backward step") {
    const auto p = xor_rpca();
    const auto inv = invert_rpca(p);
    for (std::size_t len = 1; len <= 4; ++len)
        for (const auto& a : all_words(p, len)) CHECK(inv.step_back(step_rpca(p, a)) == a);

    const RpcaConfiguration w = Finite<PairState>{0, {{1, 1}, {0, 1}, {1, 0}}, {0, 0}};
    const auto back = invert_rpca(identity_rpca(2, 2)).step_back(w);
    for (Position x = -2; x <= 4; ++x) {
        CHECK(back.at(x).c == w.at(x).c);
        CHECK(back.at(x).r == w.at(x + 1).r);
    }

    const RpcaConfiguration cyc = Cyclic<PairState>{{{1, 1}, {0, 1}, {1, 0}}};
    CHECK(inv.step_back(step_rpca(p, cyc)) == cyc);

    CHECK_THROWS_AS(invert_rpca(constant_rpca()), RuleError);
}

TEST_CASE("built-in rules") {
    const auto x = example_rpca("xor");
    CHECK(x.c_size() == 2);
    CHECK(x.r_size() == 2);
    for (std::uint32_t c = 0; c < 2; ++c)
        for (std::uint32_t r = 0; r < 2; ++r) CHECK(x.apply(c, r) == PairState{c ^ r, r});
    CHECK(check_local_injective(x));

    const auto id = identity_rpca(3, 2);
    CHECK(id.pair_count() == 6);
    for (std::uint32_t i = 0; i < 6; ++i) CHECK(id.apply(id.pair(i)) == id.pair(i));

    const auto r1 = example_rpca("random:1:4:6");
    CHECK(r1.pair_count() == 24);
    CHECK(r1.apply(0, 0) == PairState{0, 0});
    CHECK(check_local_injective(r1));
    CHECK(r1 == random_rpca(1, 4, 6));
    CHECK_FALSE(r1 == random_rpca(2, 4, 6));

    CHECK(check_local_injective(example_rpca("swap")));
    CHECK_THROWS_AS(example_rpca("nope"), std::invalid_argument);
    CHECK_THROWS_AS(example_rpca("random:1:4"), std::invalid_argument);
}

TEST_CASE("random rules are fixed-point-normalized permutations") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto p = random_rpca(seed, 1 + seed % 4, 1 + seed % 5);
        CHECK(check_local_injective(p));
        CHECK(p.apply(0, 0) == PairState{0, 0});
    }
    // A 1x1 rule has one pair and is the identity.
    CHECK(random_rpca(9, 1, 1).apply(0, 0) == PairState{0, 0});
}

TEST_CASE("random generator") {
    // mt19937_64 with the standard's default seed: the 10000th output is fixed.
    Rng rng(5489);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = rng.next();
    CHECK(v == 9981545732273789042ull);

    Rng a(3), b(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.uniform(7);
        CHECK(x == b.uniform(7));
        CHECK(x < 7);
        seen.insert(x);
    }
    CHECK(seen.size() == 7);
    CHECK(a.uniform(1) == 0);
    CHECK_THROWS_AS(a.uniform(0), std::invalid_argument);
}

TEST_CASE("global injectivity follows from local injectivity on small cycles") {
    const std::vector<Rpca2> rules{xor_rpca(), identity_rpca(3, 2), swap_rpca(2), random_rpca(4, 2, 3),
                                   random_rpca(8, 3, 2)};
    for (const auto& p : rules)
        for (std::size_t n = 1; n <= 5; ++n) {
            const auto report = check_rpca_injective_cyclic(p, n, AllWords{});
            CHECK_MESSAGE(report.passed, serialize(report));
        }
    const auto broken = check_rpca_injective_cyclic(constant_rpca(), 2, AllWords{});
    CHECK_FALSE(broken.passed);
    CHECK(broken.counterexample);
}

TEST_CASE("rule text format") {
    const std::string text =
        "# xor\n"
        "rpca C=2 R=2\n"
        "0 0 -> 0 0\n"
        "0 1 -> 1 1\n"
        "\n"
        "1 0 -> 1 0\n"
        "1 1 -> 0 1   # trailing comment\n";
    CHECK(parse_rpca(text) == xor_rpca());
    CHECK(parse_rpca(format_rpca(random_rpca(3, 4, 6))) == random_rpca(3, 4, 6));

    auto line_of = [](const std::string& bad) {
        try {
            parse_rpca(bad);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("rpca C=2 R=2\n0 0 -> 0 0\n1 2 ->\n") == 3);
    CHECK(line_of("rpca C=2 R=2\n0 0 -> 0 0\n0 0 -> 0 1\n") == 3);
    CHECK(line_of("rpca C=2 R=2\n0 0 -> 0 0\n0 1 -> 0 5\n") == 3);
    CHECK(line_of("rpca C=2\n") == 1);
    CHECK(line_of("rpca C=2 R=2\n0 0 -> 0 0\n0 1 -> 1 1\n1 0 -> 1 0\n") > 0);
    CHECK(line_of("rpca C=2 R=2\n0 0 -> 0 0\n0 1 -> 1 1\n1 0 -> 1 0\n1 1 -> 0 1 7\n") == 5);
}

TEST_CASE("pair-index CA") {
    const auto p = xor_rpca();
    const auto rule = to_rule(p);
    CHECK(rule.state_count() == 4);
    CHECK(rule.quiescent() == 0);
    const RpcaConfiguration a = Finite<PairState>{0, {{1, 1}, {0, 1}}, {0, 0}};
    const auto via_rule = step(rule, map_cells<State>(a, [&](PairState s) { return State(p.index(s)); }));
    const auto direct = map_cells<State>(step_rpca(p, a), [&](PairState s) { return State(p.index(s)); });
    CHECK(via_rule == direct);
}
