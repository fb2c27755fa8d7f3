#include "rncca/particle.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace rncca {

ParticleCode::ParticleCode(std::uint32_t c_size, std::uint32_t r_size) : c_size_(c_size), r_size_(r_size) {
    if (c_size_ == 0 || r_size_ == 0) throw std::invalid_argument("|C| and |R| must be positive");
    if (static_cast<std::uint64_t>(4) * c_size_ * r_size_ > std::numeric_limits<State>::max())
        throw std::invalid_argument("state count 4|C||R| overflows");
}

void ParticleCode::check_range(State q) const {
    if (q >= state_count())
        throw std::invalid_argument("state " + std::to_string(q) + " out of range for " +
                                    std::to_string(state_count()) + " states");
}

Particles ParticleCode::decompose(State q) const {
    check_range(q);
    return {heavy(q), light(q)};
}

State ParticleCode::compose(Particles p) const {
    if (p.heavy % heavy_stride() != 0 || p.light >= heavy_stride())
        throw std::invalid_argument("not a heavy/light particle pair");
    const State q = p.heavy + p.light;
    check_range(q);
    return q;
}

bool ParticleCode::is_balanced_heavy(State q1, State q2) const {
    const State h1 = heavy(q1);
    const State h2 = heavy(q2);
    return is_hat_heavy(h1) && !is_hat_heavy(h2) && h1 + h2 == heavy_sum();
}

bool ParticleCode::is_balanced_light(State q1, State q2) const {
    const State l1 = light(q1);
    const State l2 = light(q2);
    return is_hat_light(l1) && !is_hat_light(l2) && l1 + l2 == light_sum();
}

State ParticleCode::phi_heavy(Variant v, std::uint32_t c) const {
    if (c >= c_size_) throw std::invalid_argument("center state out of range");
    const State hat = 2 * c * r_size_;
    return v == Variant::hat ? hat : heavy_sum() - hat;
}

State ParticleCode::phi_light(Variant v, std::uint32_t r) const {
    if (r >= r_size_) throw std::invalid_argument("right state out of range");
    return v == Variant::hat ? r : light_sum() - r;
}

std::optional<PairState> ParticleCode::try_phi_inverse(Variant v, State q) const {
    if (q >= state_count()) return std::nullopt;
    State h = heavy(q);
    State l = light(q);
    const bool hat = v == Variant::hat;
    if (is_hat_heavy(h) != hat || is_hat_light(l) != hat) return std::nullopt;
    if (!hat) {
        h = heavy_sum() - h;
        l = light_sum() - l;
    }
    return PairState{h / heavy_stride(), l};
}

PairState ParticleCode::phi_inverse(Variant v, State q) const {
    if (auto p = try_phi_inverse(v, q)) return *p;
    throw std::invalid_argument("state " + std::to_string(q) + " is not in the " +
                                (v == Variant::hat ? std::string("hat") : std::string("check")) +
                                " codomain");
}

}  // namespace rncca
