#pragma once

// Conversion of a 2-neighbor reversible PCA into a 4-neighbor reversible
// number-conserving CA with 4|C||R| states and neighborhood (-2, -1, 0, 1),
// plus the embeddings of PCA configurations into it and their inverses.

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rncca/particle.hpp"
#include "rncca/rpca.hpp"
#include "rncca/rule.hpp"

namespace rncca {

// The derived rule. Its local map is computed on demand:
//
//   f~(a, b, q, d) =
//     phi_hat  (f(c of q, r of b))   if (b, q) in B_R and (q, d) in B_C
//     phi_check(f(c of b, r of a))   if (a, b) in B_R and (b, q) in B_C
//     heavy(q) + light(b)            otherwise
//
// where "c of x" and "r of x" decode the hat heavy/light mass of x.
class NccaRule {
public:
    explicit NccaRule(const Rpca2& source);

    const Rule& rule() const { return rule_; }
    const ParticleCode& code() const { return code_; }
    const Rpca2& source() const { return source_; }

    State local(State left2, State left1, State center, State right1) const;

    static const std::vector<int>& neighborhood();

private:
    Rpca2 source_;
    ParticleCode code_;
    Rule rule_;
};

// Throws RuleError if the source is not reversible.
NccaRule convert(const Rpca2& p);

// Which branch of the local map fires for a given neighborhood.
enum class Branch { interact_hat, interact_check, move };
Branch classify(const ParticleCode& code, State left2, State left1, State center, State right1);

// Block layout of an embedded configuration: blocks (phi_hat, phi_check)
// separated by zero cells. Uniform{2} is the dense embedding.
struct UniformSpacing {
    int period = 2;
};

// Explicit zero-cell counts between consecutive blocks. For a finite source
// there is one gap per adjacent pair of support cells and the backgrounds use
// `background_gap` zeros per block; for a cyclic source there is one gap per
// cell, the last one wrapping around.
struct GapSpacing {
    std::vector<int> gaps;
    int background_gap = 1;
};

using Spacing = std::variant<UniformSpacing, GapSpacing>;

// Dense embedding: cell 2x holds phi_hat(a(x)), cell 2x+1 holds phi_check(a(x)).
// Finite and bi-periodic sources map to bi-periodic configurations, cyclic
// sources of length n to cyclic configurations of length 2n.
Configuration encode_tau(const ParticleCode& code, const RpcaConfiguration& alpha);

// Spaced embedding. Uniform spacing needs a period of at least 3 and accepts
// any source shape; gap lists need every gap >= 1 and accept finite and
// cyclic sources only. Throws std::invalid_argument otherwise.
Configuration encode_tau_prime(const ParticleCode& code, const RpcaConfiguration& alpha, const Spacing& spacing);

// Block start positions of a gap-spaced finite source, relative to the first
// support block (which sits at background_period * offset).
std::vector<Position> gap_block_starts(Position first, const std::vector<int>& gaps);

class DecodeError : public std::runtime_error {
public:
    DecodeError(Position position, const std::string& message)
        : std::runtime_error("position " + std::to_string(position) + ": " + message), position_(position) {}
    Position position() const { return position_; }

private:
    Position position_;
};

enum class Phase { even, odd };

// Inverse of encode_tau at even phase. Odd phase is not a block-aligned
// layout and is rejected. Backgrounds equal to the encoded quiescent pair
// decode to a finite configuration.
RpcaConfiguration decode(const ParticleCode& code, const Configuration& config, Phase phase = Phase::even);

// Inverse of encode_tau_prime with uniform spacing (period >= 2).
RpcaConfiguration decode_tau_prime(const ParticleCode& code, const Configuration& config, int period);

}  // namespace rncca
