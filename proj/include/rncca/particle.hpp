#pragma once

// Particle arithmetic of the RPCA-to-RNCCA construction.
//
// A state q in {0, ..., 4|C||R| - 1} is the sum of a heavy mass (a multiple of
// 2|R|, stationary) and a light mass in {0, ..., 2|R| - 1} (right-moving):
//
//   hat heavy    {2k|R|         : 0 <= k < |C|}
//   check heavy  {2(k + |C|)|R| : 0 <= k < |C|}
//   hat light    {0, ..., |R| - 1}
//   check light  {|R|, ..., 2|R| - 1}
//
// Complementary pairs sum to 2(2|C| - 1)|R| (heavy) or 2|R| - 1 (light).
// Mass 0 counts as both a heavy and a light particle.

#include <cstdint>
#include <optional>

#include "rncca/rpca.hpp"
#include "rncca/rule.hpp"

namespace rncca {

enum class Variant { hat, check };

struct Particles {
    State heavy = 0;
    State light = 0;

    bool operator==(const Particles&) const = default;
};

class ParticleCode {
public:
    ParticleCode(std::uint32_t c_size, std::uint32_t r_size);
    explicit ParticleCode(const Rpca2& p) : ParticleCode(p.c_size(), p.r_size()) {}

    std::uint32_t c_size() const { return c_size_; }
    std::uint32_t r_size() const { return r_size_; }

    State heavy_stride() const { return 2 * r_size_; }
    State heavy_sum() const { return 2 * (2 * c_size_ - 1) * r_size_; }
    State light_sum() const { return 2 * r_size_ - 1; }
    std::uint32_t state_count() const { return 4 * c_size_ * r_size_; }

    // Heavy masses below 2|C||R| are hat particles; light masses below |R| are.
    bool is_hat_heavy(State heavy) const { return heavy < 2 * c_size_ * r_size_; }
    bool is_hat_light(State light) const { return light < r_size_; }

    Particles decompose(State q) const;
    State compose(Particles p) const;

    State heavy(State q) const { return q - q % heavy_stride(); }
    State light(State q) const { return q % heavy_stride(); }

    // (q1, q2) in B_C: heavy parts are (hat, check) and complementary.
    bool is_balanced_heavy(State q1, State q2) const;
    // (q1, q2) in B_R: light parts are (hat, check) and complementary.
    bool is_balanced_light(State q1, State q2) const;

    // Fixed encoding: hat_C(c) = 2c|R|, hat_R(r) = r,
    // check_C(c) = heavy_sum - hat_C(c), check_R(r) = light_sum - hat_R(r).
    State phi_heavy(Variant v, std::uint32_t c) const;
    State phi_light(Variant v, std::uint32_t r) const;
    State phi(Variant v, PairState cr) const { return phi_heavy(v, cr.c) + phi_light(v, cr.r); }
    State phi(Variant v, std::uint32_t c, std::uint32_t r) const { return phi(v, PairState{c, r}); }

    // Inverse of phi, or nullopt if q is not in the variant's codomain.
    std::optional<PairState> try_phi_inverse(Variant v, State q) const;
    // Throws std::invalid_argument if q is not in the variant's codomain.
    PairState phi_inverse(Variant v, State q) const;

    bool operator==(const ParticleCode&) const = default;

private:
    void check_range(State q) const;

    std::uint32_t c_size_;
    std::uint32_t r_size_;
};

}  // namespace rncca
