#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "udgl/errors.hpp"

namespace udgl {

/// Largest absolute coordinate accepted. Any difference of two in-range
/// coordinates squared and summed stays below 2^63.
inline constexpr std::int64_t kMaxCoordinate = 1'000'000'000;

struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr LatticePoint() = default;
    constexpr LatticePoint(std::int64_t x_, std::int64_t y_) : x(x_), y(y_)
    {
        if (x_ > kMaxCoordinate || x_ < -kMaxCoordinate || y_ > kMaxCoordinate || y_ < -kMaxCoordinate)
            throw ModelSizeError("lattice coordinate outside supported range");
    }

    friend constexpr auto operator<=>(const LatticePoint &, const LatticePoint &) = default;
};

/// A squared Euclidean distance in grid units squared; always non-negative.
struct SquaredDistance {
    std::int64_t value = 0;

    constexpr SquaredDistance() = default;
    constexpr explicit SquaredDistance(std::int64_t v) : value(v)
    {
        if (v < 0)
            throw ModelSizeError("negative squared distance");
    }

    friend constexpr auto operator<=>(const SquaredDistance &, const SquaredDistance &) = default;
};

/// Exact squared distance between two lattice points.
constexpr auto dist2(const LatticePoint & a, const LatticePoint & b) noexcept -> SquaredDistance
{
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    SquaredDistance d;
    d.value = dx * dx + dy * dy;
    return d;
}

/// Floor of the square root of n, computed without floating point.
auto isqrt(std::uint64_t n) noexcept -> std::uint64_t;

/// All lattice points p with dist2(center, p) == s, sorted by (x, y).
/// The size of the result is the circle's lattice point count D(s).
auto lattice_circle(const LatticePoint & center, SquaredDistance s) -> std::vector<LatticePoint>;

/// True iff all points lie on one line. Sets of at most two points are collinear.
auto collinear(std::span<const LatticePoint> points) -> bool;

} // namespace udgl
