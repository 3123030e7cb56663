#include "udgl/geometry.hpp"

namespace udgl {

auto isqrt(std::uint64_t n) noexcept -> std::uint64_t
{
    if (n < 2)
        return n;

    // Newton iteration from an upper bound; monotonically decreasing to floor(sqrt(n)).
    std::uint64_t x = n;
    std::uint64_t y = x / 2 + (x & 1);
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

auto lattice_circle(const LatticePoint & center, SquaredDistance s) -> std::vector<LatticePoint>
{
    std::vector<LatticePoint> result;
    const auto limit = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(s.value)));
    for (std::int64_t a = -limit; a <= limit; ++a) {
        const std::int64_t rest = s.value - a * a;
        const auto b = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest)));
        if (b * b != rest)
            continue;
        result.emplace_back(center.x + a, center.y - b);
        if (b != 0)
            result.emplace_back(center.x + a, center.y + b);
    }
    return result;
}

auto collinear(std::span<const LatticePoint> points) -> bool
{
    if (points.size() <= 2)
        return true;

    const LatticePoint & origin = points[0];
    // Find a second point distinct from the first to define the direction.
    std::size_t k = 1;
    while (k < points.size() && points[k] == origin)
        ++k;
    if (k == points.size())
        return true;

    const std::int64_t dx = points[k].x - origin.x;
    const std::int64_t dy = points[k].y - origin.y;
    for (std::size_t i = k + 1; i < points.size(); ++i) {
        const std::int64_t ex = points[i].x - origin.x;
        const std::int64_t ey = points[i].y - origin.y;
        // Products of differences up to 2e9 fit in 128 bits; 64 bits would overflow at the extremes.
        const __int128 cross = static_cast<__int128>(dx) * ey - static_cast<__int128>(dy) * ex;
        if (cross != 0)
            return false;
    }
    return true;
}

} // namespace udgl
