#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "udgl/geometry.hpp"

namespace udgl {

using NodeId = std::uint32_t;

/// An undirected edge in canonical orientation (i < j) carrying its exact squared length.
struct Edge {
    NodeId i = 0;
    NodeId j = 0;
    SquaredDistance d2;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Ground-truth network: every node's position is known.
struct Instance {
    std::int64_t grid_side = 0;
    SquaredDistance radius_sq;
    std::vector<LatticePoint> positions;
    std::vector<bool> anchor_flags;
    std::vector<Edge> edges;

    auto n_nodes() const noexcept -> std::size_t { return positions.size(); }
    auto n_anchors() const -> std::size_t;

    friend auto operator==(const Instance &, const Instance &) -> bool = default;
};

/// What a solver is given: anchor positions, the measured edges, and the radius.
struct Problem {
    std::size_t n_nodes = 0;
    SquaredDistance radius_sq;
    std::map<NodeId, LatticePoint> anchors;
    std::vector<Edge> edges;
    std::optional<std::int64_t> grid_side;

    auto n_unknowns() const noexcept -> std::size_t { return n_nodes - anchors.size(); }
    auto is_anchor(NodeId id) const -> bool { return anchors.contains(id); }

    friend auto operator==(const Problem &, const Problem &) -> bool = default;
};

/// Every pair (i < j) with dist2 <= radius_sq, in lexicographic order.
auto derive_edges(const std::vector<LatticePoint> & positions, SquaredDistance radius_sq) -> std::vector<Edge>;

/// Whether the undirected graph on n nodes with the given edges is connected.
auto is_connected(std::size_t n_nodes, const std::vector<Edge> & edges) -> bool;

/// Throws ValidationError on the first broken Instance invariant.
void validate(const Instance & inst);

/// Throws ValidationError on the first broken Problem invariant. A problem
/// whose nodes are all anchors is accepted (it has exactly one realization).
void validate(const Problem & problem);

struct GeneratorOptions {
    int max_attempts = 1000;
};

/// Uniform random placement of n_nodes distinct points on a grid_side x grid_side grid,
/// resampled until the unit disk graph is connected and the anchors are not collinear.
auto generate_instance(std::int64_t grid_side, std::int64_t radius_sq, std::size_t n_nodes,
    std::size_t n_anchors, std::uint64_t seed, GeneratorOptions options = {}) -> Instance;

/// Withholds the non-anchor positions. The grid side survives only if keep_bounds.
auto strip_instance(const Instance & inst, bool keep_bounds) -> Problem;

} // namespace udgl
