#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "rncca/convert.hpp"
#include "rncca/random.hpp"

using namespace rncca;

namespace {

// Independent model of the construction built from the particle sets
// themselves rather than from ParticleCode's arithmetic.
struct SetModel {
    std::uint32_t C, R;
    std::set<State> heavy_hat, heavy_check, light_hat, light_check;
    State sum_c, sum_r;
    std::map<PairState, State> hat, check;

    explicit SetModel(const Rpca2& p) : C(p.c_size()), R(p.r_size()) {
        for (State k = 0; k < C; ++k) {
            heavy_hat.insert(2 * k * R);
            heavy_check.insert(2 * (k + C) * R);
        }
        for (State k = 0; k < R; ++k) {
            light_hat.insert(k);
            light_check.insert(R + k);
        }
        sum_c = 2 * (2 * C - 1) * R;
        sum_r = 2 * R - 1;
        for (std::uint32_t c = 0; c < C; ++c)
            for (std::uint32_t r = 0; r < R; ++r) {
                hat[{c, r}] = 2 * c * R + r;
                check[{c, r}] = (sum_c - 2 * c * R) + (sum_r - r);
            }
    }

    // The unique (heavy, light) with heavy + light = q.
    std::pair<State, State> split(State q) const {
        std::optional<std::pair<State, State>> found;
        for (auto sets : {&heavy_hat, &heavy_check})
            for (State h : *sets)
                for (auto lsets : {&light_hat, &light_check})
                    for (State l : *lsets)
                        if (h + l == q) {
                            REQUIRE((!found || *found == std::pair{h, l}));
                            found = std::pair{h, l};
                        }
        REQUIRE(found);
        return *found;
    }

    bool bc(State a, State b) const {
        const auto x = split(a).first, y = split(b).first;
        return heavy_hat.count(x) && heavy_check.count(y) && x + y == sum_c;
    }
    bool br(State a, State b) const {
        const auto x = split(a).second, y = split(b).second;
        return light_hat.count(x) && light_check.count(y) && x + y == sum_r;
    }

    PairState unhat(State heavy, State light) const {
        for (const auto& [pr, q] : hat)
            if (q == heavy + light) return pr;
        FAIL("not a hat state");
        return {};
    }

    State local(const Rpca2& p, State a, State b, State q, State d) const {
        if (br(b, q) && bc(q, d)) return hat.at(p.apply(unhat(split(q).first, split(b).second)));
        if (br(a, b) && bc(b, q)) return check.at(p.apply(unhat(split(b).first, split(a).second)));
        return split(q).first + split(b).second;
    }
};

void check_against_model(const Rpca2& p) {
    const NccaRule rule(p);
    const SetModel model(p);
    const State s = rule.code().state_count();
    // The split of each state is precomputed once; the tuple loop then only
    // exercises the guards and the table.
    std::vector<std::pair<State, State>> parts(s);
    for (State q = 0; q < s; ++q) parts[q] = model.split(q);
    std::size_t mismatches = 0;
    for (State a = 0; a < s; ++a)
        for (State b = 0; b < s; ++b)
            for (State q = 0; q < s; ++q)
                for (State d = 0; d < s; ++d) {
                    const auto expected = model.local(p, a, b, q, d);
                    if (rule.local(a, b, q, d) != expected) ++mismatches;
                    const std::array<State, 4> nb{a, b, q, d};
                    if (rule.rule().apply(nb) != expected) ++mismatches;
                }
    CHECK(mismatches == 0);
}

}  // namespace

TEST_CASE("particle decomposition") {
    const ParticleCode code(2, 2);
    CHECK(code.decompose(13) == Particles{12, 1});
    CHECK(code.decompose(0) == Particles{0, 0});
    CHECK(code.decompose(5) == Particles{4, 1});
    CHECK(code.heavy_sum() == 12);
    CHECK(code.light_sum() == 3);
    CHECK(code.state_count() == 16);
    CHECK_THROWS_AS(code.decompose(16), std::invalid_argument);
    CHECK_THROWS_AS(code.compose(Particles{2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(code.compose(Particles{0, 4}), std::invalid_argument);

    for (std::uint32_t c = 1; c <= 4; ++c)
        for (std::uint32_t r = 1; r <= 6; ++r) {
            const ParticleCode k(c, r);
            for (State q = 0; q < k.state_count(); ++q) CHECK(k.compose(k.decompose(q)) == q);
        }
}

TEST_CASE("decomposition agrees with the particle sets") {
    for (const auto& p : {xor_rpca(), identity_rpca(3, 2), identity_rpca(4, 6)}) {
        const ParticleCode code(p);
        const SetModel model(p);
        for (State q = 0; q < code.state_count(); ++q) {
            const auto [h, l] = model.split(q);
            CHECK(code.decompose(q) == Particles{h, l});
            CHECK(code.is_hat_heavy(h) == (model.heavy_hat.count(h) == 1));
            CHECK(code.is_hat_light(l) == (model.light_hat.count(l) == 1));
        }
    }
}

TEST_CASE("balanced pairs") {
    const ParticleCode code(2, 2);
    CHECK(code.is_balanced_heavy(5, 11));
    CHECK(code.is_balanced_light(5, 10));
    CHECK_FALSE(code.is_balanced_light(4, 10));
    CHECK_FALSE(code.is_balanced_heavy(11, 5));
    CHECK_FALSE(code.is_balanced_light(0, 0));
    CHECK_FALSE(code.is_balanced_heavy(0, 0));
}

TEST_CASE("phi bijections") {
    const ParticleCode code(2, 2);
    CHECK(code.phi(Variant::hat, 1, 1) == 5);
    CHECK(code.phi(Variant::check, 1, 0) == 11);
    CHECK(code.phi(Variant::check, 0, 0) == 15);
    CHECK(code.phi_inverse(Variant::check, 11) == PairState{1, 0});
    CHECK_FALSE(code.try_phi_inverse(Variant::hat, 7));
    CHECK_FALSE(code.try_phi_inverse(Variant::check, 5));
    CHECK_THROWS_AS(code.phi_inverse(Variant::hat, 7), std::invalid_argument);

    for (std::uint32_t c = 1; c <= 4; ++c)
        for (std::uint32_t r = 1; r <= 6; ++r) {
            const ParticleCode k(c, r);
            std::set<State> hats, checks;
            for (std::uint32_t x = 0; x < c; ++x)
                for (std::uint32_t y = 0; y < r; ++y) {
                    const PairState pr{x, y};
                    const auto h = k.phi(Variant::hat, pr), v = k.phi(Variant::check, pr);
                    hats.insert(h);
                    checks.insert(v);
                    CHECK(k.phi_inverse(Variant::hat, h) == pr);
                    CHECK(k.phi_inverse(Variant::check, v) == pr);
                    // a hat block and its check partner are balanced both ways
                    CHECK(k.is_balanced_heavy(h, v));
                    CHECK(k.is_balanced_light(h, v));
                }
            CHECK(hats.size() == c * r);
            CHECK(checks.size() == c * r);
        }
}

TEST_CASE("local map examples") {
    const NccaRule rule(xor_rpca());
    CHECK(rule.local(0, 0, 0, 0) == 0);
    CHECK(rule.local(0, 15, 5, 10) == 7);
    CHECK(rule.local(3, 12, 7, 9) == 4);
    CHECK(rule.local(12, 7, 9, 2) == 11);
    CHECK(classify(rule.code(), 0, 15, 5, 10) == Branch::move);
    CHECK(classify(rule.code(), 3, 12, 7, 9) == Branch::interact_hat);
    CHECK(classify(rule.code(), 12, 7, 9, 2) == Branch::interact_check);
    CHECK(NccaRule::neighborhood() == std::vector<int>{-2, -1, 0, 1});
}

TEST_CASE("local map against the set model, every tuple") {
    check_against_model(xor_rpca());
    check_against_model(swap_rpca(2));
    check_against_model(random_rpca(7, 2, 3));
}

TEST_CASE("guards never both hold") {
    for (const auto& p : {xor_rpca(), random_rpca(7, 2, 3)}) {
        const ParticleCode code(p);
        const State s = code.state_count();
        std::size_t both = 0;
        for (State a = 0; a < s; ++a)
            for (State b = 0; b < s; ++b)
                for (State q = 0; q < s; ++q)
                    for (State d = 0; d < s; ++d)
                        if (code.is_balanced_light(b, q) && code.is_balanced_heavy(q, d) &&
                            code.is_balanced_light(a, b) && code.is_balanced_heavy(b, q))
                            ++both;
        CHECK(both == 0);
    }
}

TEST_CASE("conversion rejects non-reversible rules") {
    const Rpca2 constant(2, 2, std::vector<PairState>(4, PairState{0, 0}));
    CHECK_THROWS_AS(convert(constant), RuleError);
    CHECK(convert(random_rpca(1, 4, 6)).rule().state_count() == 96);
    CHECK(convert(identity_rpca(3, 2)).rule().state_count() == 24);
}

TEST_CASE("dense embedding") {
    const ParticleCode code(2, 2);
    const RpcaConfiguration one = Finite<PairState>{0, {{1, 1}}, {0, 0}};
    CHECK(encode_tau(code, one) == Configuration(BiPeriodic<State>{{0, 15}, 0, {5, 10}, {0, 15}}));

    const RpcaConfiguration empty = Finite<PairState>{0, {}, {0, 0}};
    const auto bg = encode_tau(code, empty);
    for (Position x = -6; x < 6; ++x) CHECK(bg.at(x) == (x % 2 == 0 ? 0u : 15u));

    const RpcaConfiguration cyc = Cyclic<PairState>{{{1, 0}, {0, 0}}};
    const auto c = encode_tau(code, cyc);
    REQUIRE(c.cyclic());
    CHECK(c.cyclic()->word == std::vector<State>{4, 11, 0, 15});

    const RpcaConfiguration bi = BiPeriodic<PairState>{{{1, 0}}, 1, {{1, 1}}, {{0, 1}}};
    const auto b = encode_tau(code, bi);
    for (Position x = -4; x < 6; ++x) {
        const auto a = bi.at(floor_div(x, 2));
        CHECK(b.at(x) == code.phi(x % 2 == 0 ? Variant::hat : Variant::check, a));
    }
}

TEST_CASE("spaced embedding") {
    const ParticleCode code(2, 2);
    const RpcaConfiguration empty = Finite<PairState>{0, {}, {0, 0}};
    const auto k3 = encode_tau_prime(code, empty, UniformSpacing{3});
    REQUIRE(k3.biperiodic());
    CHECK(k3.biperiodic()->left == std::vector<State>{0, 15, 0});

    const RpcaConfiguration one = Finite<PairState>{0, {{1, 1}}, {0, 0}};
    const auto k4 = encode_tau_prime(code, one, UniformSpacing{4});
    const std::vector<State> expect{0, 15, 0, 0, 5, 10, 0, 0, 0, 15, 0, 0};
    for (Position x = -4; x < 8; ++x) CHECK(k4.at(x) == expect[static_cast<std::size_t>(x + 4)]);

    CHECK_THROWS_AS(encode_tau_prime(code, one, UniformSpacing{2}), std::invalid_argument);
    CHECK_THROWS_AS(encode_tau_prime(code, one, GapSpacing{{}, 0}), std::invalid_argument);

    // Gaps count the zero cells between consecutive blocks.
    CHECK(gap_block_starts(0, {1, 2}) == std::vector<Position>{0, 3, 7});
    const RpcaConfiguration three = Finite<PairState>{0, {{1, 1}, {1, 0}, {0, 1}}, {0, 0}};
    const auto g = encode_tau_prime(code, three, GapSpacing{{1, 2}, 1});
    const std::vector<State> cells{5, 10, 0, 4, 11, 0, 0, 1, 14};
    for (Position x = 0; x < 9; ++x) CHECK(g.at(x) == cells[static_cast<std::size_t>(x)]);
    CHECK(g.at(-3) == 0);
    CHECK(g.at(-2) == 15);
    CHECK(g.at(9) == 0);
    CHECK(g.at(10) == 0);
    CHECK(g.at(11) == 15);
    CHECK_THROWS_AS(encode_tau_prime(code, three, GapSpacing{{1, 0}, 1}), std::invalid_argument);
    CHECK_THROWS_AS(encode_tau_prime(code, three, GapSpacing{{1}, 1}), std::invalid_argument);

    const RpcaConfiguration cyc = Cyclic<PairState>{{{1, 0}, {0, 0}}};
    const auto gc = encode_tau_prime(code, cyc, GapSpacing{{1, 2}, 1});
    REQUIRE(gc.cyclic());
    CHECK(gc.cyclic()->word == std::vector<State>{4, 11, 0, 0, 15, 0, 0});
}

TEST_CASE("decoding") {
    const auto p = xor_rpca();
    const ParticleCode code(p);
    std::size_t checked = 0;
    for (std::size_t len = 1; len <= 4; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= 4;
        for (std::size_t k = 0; k < total; ++k) {
            std::vector<PairState> w(len);
            auto v = k;
            for (auto& cell : w) {
                cell = p.pair(static_cast<std::uint32_t>(v % 4));
                v /= 4;
            }
            const RpcaConfiguration a = Finite<PairState>{static_cast<Position>(k % 3) - 1, w, {0, 0}};
            CHECK(decode(code, encode_tau(code, a)) == a);
            CHECK(decode_tau_prime(code, encode_tau_prime(code, a, UniformSpacing{3}), 3) == a);
            ++checked;
        }
    }
    CHECK(checked == 4 + 16 + 64 + 256);

    const RpcaConfiguration empty = Finite<PairState>{0, {}, {0, 0}};
    CHECK(decode(code, BiPeriodic<State>{{0, 15}, 0, {}, {0, 15}}) == empty);

    const RpcaConfiguration cyc = Cyclic<PairState>{{{1, 0}, {0, 0}, {1, 1}}};
    CHECK(decode(code, encode_tau(code, cyc)) == cyc);

    try {
        decode(code, BiPeriodic<State>{{0, 15}, 0, {7, 9}, {0, 15}});
        FAIL("expected a decode error");
    } catch (const DecodeError& e) {
        CHECK(e.position() == 0);
    }
    CHECK_THROWS_AS(decode(code, Cyclic<State>{{0, 15, 0}}), DecodeError);
    CHECK_THROWS_AS(decode(code, Finite<State>{0, {}, 0}), DecodeError);
    CHECK_THROWS_AS(decode(code, encode_tau(code, cyc), Phase::odd), std::invalid_argument);
}

TEST_CASE("balanced pairs never chain") {
    const ParticleCode code(2, 2);
    Rng rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 3 + rng.uniform(10);
        std::vector<State> w(n);
        for (auto& q : w) q = static_cast<State>(rng.uniform(16));
        const Configuration c = Cyclic<State>{w};
        for (Position x = 0; x < static_cast<Position>(n); ++x) {
            if (code.is_balanced_heavy(c.at(x), c.at(x + 1))) {
                CHECK_FALSE(code.is_balanced_heavy(c.at(x - 1), c.at(x)));
                CHECK_FALSE(code.is_balanced_heavy(c.at(x + 1), c.at(x + 2)));
            }
            if (code.is_balanced_light(c.at(x), c.at(x + 1))) {
                CHECK_FALSE(code.is_balanced_light(c.at(x - 1), c.at(x)));
                CHECK_FALSE(code.is_balanced_light(c.at(x + 1), c.at(x + 2)));
            }
        }
    }
}

TEST_CASE("balanced pairs propagate and masses are conserved") {
    for (const auto& p : {xor_rpca(), random_rpca(2, 4, 6)}) {
        const NccaRule rule(p);
        const auto& code = rule.code();
        Rng rng(22);
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t n = 2 * (1 + rng.uniform(6));
            std::vector<State> w(n);
            for (auto& q : w) q = static_cast<State>(rng.uniform(code.state_count()));
            const Configuration c = Cyclic<State>{w};
            const auto next = step(rule.rule(), c);
            std::int64_t heavy0 = 0, heavy1 = 0, light0 = 0, light1 = 0;
            for (Position x = 0; x < static_cast<Position>(n); ++x) {
                CHECK(code.is_balanced_heavy(c.at(x), c.at(x + 1)) ==
                      code.is_balanced_heavy(next.at(x), next.at(x + 1)));
                CHECK(code.is_balanced_light(c.at(x), c.at(x + 1)) ==
                      code.is_balanced_light(next.at(x + 1), next.at(x + 2)));
                heavy0 += code.heavy(c.at(x));
                heavy1 += code.heavy(next.at(x));
                light0 += code.light(c.at(x));
                light1 += code.light(next.at(x));
            }
            CHECK(heavy0 == heavy1);
            CHECK(light0 == light1);
        }
    }
}

TEST_CASE("two steps simulate one source step") {
    for (const auto& p : {xor_rpca(), random_rpca(3, 3, 2), identity_rpca(3, 2)}) {
        const NccaRule rule(p);
        Rng rng(23);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<PairState> w(1 + rng.uniform(5));
            for (auto& cell : w) cell = p.pair(static_cast<std::uint32_t>(rng.uniform(p.pair_count())));
            const RpcaConfiguration a = Finite<PairState>{0, w, {0, 0}};
            const auto lhs = step(rule.rule(), step(rule.rule(), encode_tau(rule.code(), a)));
            CHECK(lhs == encode_tau(rule.code(), step_rpca(p, a)));
        }
    }
}
