#include "rncca/convert.hpp"

#include <numeric>
#include <string>

namespace rncca {

const std::vector<int>& NccaRule::neighborhood() {
    static const std::vector<int> offsets{-2, -1, 0, 1};
    return offsets;
}

Branch classify(const ParticleCode& code, State left2, State left1, State center, State right1) {
    const bool interact_here = code.is_balanced_light(left1, center) && code.is_balanced_heavy(center, right1);
    const bool interact_left = code.is_balanced_light(left2, left1) && code.is_balanced_heavy(left1, center);
    // (left1, center) and (center, right1) cannot both be heavy-balanced, since
    // center would need a hat and a check heavy mass at once.
    if (interact_here && interact_left) throw std::logic_error("interaction guards overlap");
    if (interact_here) return Branch::interact_hat;
    if (interact_left) return Branch::interact_check;
    return Branch::move;
}

namespace {

const Rpca2& reversible(const Rpca2& p) {
    if (auto collision = find_collision(p))
        throw RuleError("cannot convert a non-reversible partitioned rule: (" + std::to_string(collision->first.c) +
                        "," + std::to_string(collision->first.r) + ") and (" +
                        std::to_string(collision->second.c) + "," + std::to_string(collision->second.r) +
                        ") share an image");
    return p;
}

}  // namespace

NccaRule::NccaRule(const Rpca2& source)
    : source_(reversible(source)),
      code_(source),
      rule_(code_.state_count(), neighborhood(),
            [p = source, code = ParticleCode(source)](std::span<const State> nb) -> State {
                const State a = nb[0], b = nb[1], q = nb[2], d = nb[3];
                switch (classify(code, a, b, q, d)) {
                    case Branch::interact_hat: {
                        const PairState in{code.heavy(q) / code.heavy_stride(), code.light(b)};
                        return code.phi(Variant::hat, p.apply(in));
                    }
                    case Branch::interact_check: {
                        const PairState in{code.heavy(b) / code.heavy_stride(), code.light(a)};
                        return code.phi(Variant::check, p.apply(in));
                    }
                    case Branch::move:
                        break;
                }
                return code.heavy(q) + code.light(b);
            },
            0) {}

State NccaRule::local(State left2, State left1, State center, State right1) const {
    const State nb[] = {left2, left1, center, right1};
    return rule_.apply(nb);
}

NccaRule convert(const Rpca2& p) { return NccaRule(p); }

namespace {

std::vector<State> block(const ParticleCode& code, PairState cell, int period) {
    std::vector<State> out(static_cast<std::size_t>(period), 0);
    out[0] = code.phi(Variant::hat, cell);
    out[1] = code.phi(Variant::check, cell);
    return out;
}

std::vector<State> blocks(const ParticleCode& code, const std::vector<PairState>& cells, int period) {
    std::vector<State> out;
    out.reserve(cells.size() * static_cast<std::size_t>(period));
    for (const auto& cell : cells) {
        auto b = block(code, cell, period);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

Configuration encode_uniform(const ParticleCode& code, const RpcaConfiguration& alpha, int period) {
    const Position k = period;
    if (auto f = alpha.finite()) {
        const auto background = block(code, f->quiescent, period);
        return BiPeriodic<State>{background, k * f->offset, blocks(code, f->word, period), background};
    }
    if (auto c = alpha.cyclic()) return Cyclic<State>{blocks(code, c->word, period)};
    const auto& b = *alpha.biperiodic();
    return BiPeriodic<State>{blocks(code, b.left, period), k * b.center_offset, blocks(code, b.center, period),
                             blocks(code, b.right, period)};
}

Configuration encode_gaps(const ParticleCode& code, const RpcaConfiguration& alpha, const GapSpacing& spacing) {
    for (int g : spacing.gaps)
        if (g < 1) throw std::invalid_argument("every gap must hold at least one zero cell");
    if (spacing.background_gap < 1) throw std::invalid_argument("background gap must be at least 1");

    auto append_block = [&](std::vector<State>& out, PairState cell, int gap) {
        auto b = block(code, cell, 2 + gap);
        out.insert(out.end(), b.begin(), b.end());
    };

    if (auto c = alpha.cyclic()) {
        if (spacing.gaps.size() != c->word.size())
            throw std::invalid_argument("a cyclic source of length " + std::to_string(c->word.size()) +
                                        " needs exactly that many gaps");
        std::vector<State> word;
        for (std::size_t i = 0; i < c->word.size(); ++i) append_block(word, c->word[i], spacing.gaps[i]);
        return Cyclic<State>{std::move(word)};
    }
    const auto* f = alpha.finite();
    if (!f) throw std::invalid_argument("gap spacing supports finite and cyclic sources only");

    const int background_period = 2 + spacing.background_gap;
    const auto background = block(code, f->quiescent, background_period);
    if (f->word.empty()) return BiPeriodic<State>{background, 0, {}, background};
    if (spacing.gaps.size() + 1 != f->word.size())
        throw std::invalid_argument("a support of " + std::to_string(f->word.size()) + " cells needs exactly " +
                                    std::to_string(f->word.size() - 1) + " gaps");

    const auto starts = gap_block_starts(background_period * f->offset, spacing.gaps);
    std::vector<State> center;
    for (std::size_t i = 0; i < f->word.size(); ++i) {
        const int gap = i + 1 < f->word.size() ? spacing.gaps[i] : 0;
        append_block(center, f->word[i], gap);
    }
    // The right background continues the block lattice from the last block.
    std::vector<State> right(static_cast<std::size_t>(background_period));
    for (Position y = 0; y < background_period; ++y)
        right[static_cast<std::size_t>(y)] =
            background[static_cast<std::size_t>(floor_mod(y - starts.back(), background_period))];
    return BiPeriodic<State>{background, starts.front(), std::move(center), std::move(right)};
}

}  // namespace

std::vector<Position> gap_block_starts(Position first, const std::vector<int>& gaps) {
    std::vector<Position> starts{first};
    for (int g : gaps) starts.push_back(starts.back() + 2 + g);
    return starts;
}

Configuration encode_tau(const ParticleCode& code, const RpcaConfiguration& alpha) {
    return encode_uniform(code, alpha, 2);
}

Configuration encode_tau_prime(const ParticleCode& code, const RpcaConfiguration& alpha, const Spacing& spacing) {
    if (auto u = std::get_if<UniformSpacing>(&spacing)) {
        if (u->period < 3)
            throw std::invalid_argument("spaced embedding needs a period of at least 3 (period 2 is the dense one)");
        return encode_uniform(code, alpha, u->period);
    }
    return encode_gaps(code, alpha, std::get<GapSpacing>(spacing));
}

namespace {

template <class At>
PairState decode_block(const ParticleCode& code, At&& at, Position start, int period) {
    const State hat_state = at(start);
    const State check_state = at(start + 1);
    const auto hat = code.try_phi_inverse(Variant::hat, hat_state);
    if (!hat) throw DecodeError(start, "state " + std::to_string(hat_state) + " is not a hat-encoded cell");
    const auto check = code.try_phi_inverse(Variant::check, check_state);
    if (!check)
        throw DecodeError(start + 1, "state " + std::to_string(check_state) + " is not a check-encoded cell");
    if (*hat != *check)
        throw DecodeError(start + 1, "check cell " + std::to_string(check_state) + " does not complement hat cell " +
                                         std::to_string(hat_state));
    for (Position i = 2; i < period; ++i)
        if (at(start + i) != 0) throw DecodeError(start + i, "expected a zero spacer cell");
    return *hat;
}

std::vector<PairState> decode_background(const ParticleCode& code, const std::vector<State>& word, int period,
                                         Position anchor) {
    const auto n = static_cast<Position>(std::lcm(word.size(), static_cast<std::size_t>(period)));
    // Errors are reported in the repetition nearest to `anchor`.
    const Position shift = n * floor_div(anchor, n);
    auto at = [&](Position y) { return detail::periodic_at(word, y); };
    std::vector<PairState> out;
    for (Position x = 0; x < n / period; ++x) {
        try {
            out.push_back(decode_block(code, at, shift + x * period, period));
        } catch (const DecodeError& e) {
            throw DecodeError(e.position(), std::string("background: ") + e.what());
        }
    }
    return out;
}

}  // namespace

RpcaConfiguration decode_tau_prime(const ParticleCode& code, const Configuration& config, int period) {
    if (period < 2) throw std::invalid_argument("block period must be at least 2");
    const Position k = period;
    auto at = [&](Position y) { return config.at(y); };

    if (auto c = config.cyclic()) {
        const auto n = static_cast<Position>(c->word.size());
        if (n % k != 0)
            throw DecodeError(n - 1, "cyclic length " + std::to_string(n) + " is not a multiple of " +
                                         std::to_string(k));
        std::vector<PairState> word;
        for (Position x = 0; x < n / k; ++x) word.push_back(decode_block(code, at, x * k, period));
        return Cyclic<PairState>{std::move(word)};
    }
    if (auto f = config.finite()) {
        // The quiescent background cannot carry both a hat and a check cell.
        const Position start = f->word.empty() ? 0 : k * floor_div(f->offset, k) - k;
        decode_block(code, at, start, period);
        throw DecodeError(start, "a finite configuration is not a block embedding");
    }

    const auto& b = *config.biperiodic();
    const Position first = floor_div(b.center_offset, k) - 1;
    const Position last = floor_div(b.center_offset + static_cast<Position>(b.center.size()), k) + 1;
    std::vector<PairState> center;
    for (Position x = first; x <= last; ++x) center.push_back(decode_block(code, at, x * k, period));
    auto left = decode_background(code, b.left, period, b.center_offset - 1);
    auto right = decode_background(code, b.right, period, b.center_offset + static_cast<Position>(b.center.size()));

    RpcaConfiguration decoded(BiPeriodic<PairState>{std::move(left), first, std::move(center), std::move(right)});
    const auto& d = *decoded.biperiodic();
    const std::vector<PairState> quiet{Rpca2::quiescent()};
    if (d.left == quiet && d.right == quiet) return Finite<PairState>{d.center_offset, d.center, Rpca2::quiescent()};
    return decoded;
}

RpcaConfiguration decode(const ParticleCode& code, const Configuration& config, Phase phase) {
    if (phase == Phase::odd) throw std::invalid_argument("odd-phase decoding is not supported");
    return decode_tau_prime(code, config, 2);
}

}  // namespace rncca
