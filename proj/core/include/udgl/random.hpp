#pragma once

#include <cstdint>
#include <random>

namespace udgl {

/// mt19937_64 output is fully specified by the standard, unlike the standard
/// distributions, so bounded draws are done here to keep streams portable.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling. bound must be positive.
inline auto uniform_index(Rng & rng, std::uint64_t bound) -> std::uint64_t
{
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
    std::uint64_t draw = rng();
    while (draw >= limit)
        draw = rng();
    return draw % bound;
}

} // namespace udgl
