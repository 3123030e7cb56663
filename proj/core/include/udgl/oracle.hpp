#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "udgl/solver.hpp"

namespace udgl {

/// Inclusive rectangle of lattice points.
struct SearchBox {
    std::int64_t x_min = 0;
    std::int64_t y_min = 0;
    std::int64_t x_max = 0;
    std::int64_t y_max = 0;

    auto contains(const LatticePoint & p) const -> bool
    {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    auto size() const -> unsigned __int128;
};

/// The grid (or, without one, the anchors' bounding box) grown by h * ceil(sqrt(radius_sq))
/// on every side, where h is the largest hop distance from the anchor set to any unknown.
/// Every node of every realization lies within h hops of length <= r of an anchor,
/// so no realization can leave this box.
auto default_search_box(const Problem & problem, std::optional<std::int64_t> grid_side = std::nullopt) -> SearchBox;

struct OracleOptions {
    std::size_t max_unknowns = 4;
    /// Upper bound on |box|^unknowns, the size of the cartesian product enumerated.
    unsigned __int128 work_limit = 1'000'000'000;
};

/// Every assignment of the non-anchors to distinct points of the box that satisfies
/// the rule set, sorted lexicographically. Throws CapExceeded past the limits.
auto brute_force_solutions(const Problem & problem, RuleSet rules, const SearchBox & box,
    const OracleOptions & options = {}) -> std::vector<Assignment>;

/// Smallest-grid instance with three anchors and one unknown whose placement is
/// ambiguous (two realizations) under edge constraints alone but unique once
/// non-adjacency is enforced. Throws NotFound if no grid up to max_grid has one.
auto find_fixture_f1(std::int64_t max_grid) -> Instance;

/// Three anchors (0, 1, 2), two unknowns (3, 4), radius 1: node 3 touches anchors 1
/// and 2 only and has two placements consistent with the anchors; node 4 touches 3;
/// the full network has exactly one unit disk realization.
auto find_fixture_f2(std::int64_t max_grid) -> Instance;

} // namespace udgl
