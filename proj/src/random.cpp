#include "rncca/random.hpp"

#include <limits>
#include <stdexcept>

namespace rncca {

std::uint64_t Rng::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform bound must be positive");
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    // 2^64 mod bound
    const std::uint64_t excess = (max % bound + 1) % bound;
    const std::uint64_t last_accepted = max - excess;
    std::uint64_t x = next();
    while (x > last_accepted) x = next();
    return x % bound;
}

}  // namespace rncca
