#include "udgl/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "udgl/random.hpp"

namespace udgl {

namespace {

    auto inside_grid(const LatticePoint & p, std::int64_t side) -> bool
    {
        return p.x >= 0 && p.y >= 0 && p.x < side && p.y < side;
    }

    auto describe(const Edge & e) -> std::string
    {
        return "edge " + std::to_string(e.i) + " " + std::to_string(e.j);
    }

    void validate_edge_list(std::size_t n_nodes, SquaredDistance radius_sq, const std::vector<Edge> & edges)
    {
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const Edge & e = edges[k];
            if (e.i >= e.j)
                throw ValidationError(describe(e) + ": endpoints must satisfy i < j");
            if (e.j >= n_nodes)
                throw ValidationError(describe(e) + ": endpoint out of range");
            if (e.d2.value < 1)
                throw ValidationError(describe(e) + ": squared distance must be at least 1");
            if (e.d2 > radius_sq)
                throw ValidationError(describe(e) + ": squared distance exceeds radius_sq");
            if (k > 0 && std::pair{edges[k - 1].i, edges[k - 1].j} >= std::pair{e.i, e.j})
                throw ValidationError(describe(e) + ": edges must be strictly ascending by (i, j)");
        }
    }

    void require_distinct(const std::vector<LatticePoint> & points, const char * what)
    {
        std::set<LatticePoint> seen;
        for (const auto & p : points)
            if (! seen.insert(p).second)
                throw ValidationError(std::string(what) + ": two nodes share position (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }

} // namespace

auto Instance::n_anchors() const -> std::size_t
{
    return static_cast<std::size_t>(std::count(anchor_flags.begin(), anchor_flags.end(), true));
}

auto derive_edges(const std::vector<LatticePoint> & positions, SquaredDistance radius_sq) -> std::vector<Edge>
{
    std::vector<Edge> edges;
    const auto n = static_cast<NodeId>(positions.size());
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            const auto d = dist2(positions[i], positions[j]);
            if (d <= radius_sq)
                edges.push_back(Edge{i, j, d});
        }
    return edges;
}

auto is_connected(std::size_t n_nodes, const std::vector<Edge> & edges) -> bool
{
    if (n_nodes == 0)
        return true;

    std::vector<std::vector<NodeId>> adjacent(n_nodes);
    for (const auto & e : edges) {
        adjacent[e.i].push_back(e.j);
        adjacent[e.j].push_back(e.i);
    }

    std::vector<bool> seen(n_nodes, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (! stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : adjacent[v])
            if (! seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == n_nodes;
}

void validate(const Instance & inst)
{
    const std::size_t n = inst.positions.size();
    if (inst.grid_side < 1)
        throw ValidationError("grid side must be positive");
    if (inst.radius_sq.value < 1)
        throw ValidationError("radius_sq must be positive");
    if (inst.anchor_flags.size() != n)
        throw ValidationError("anchor flags do not match node count");

    for (std::size_t i = 0; i < n; ++i)
        if (! inside_grid(inst.positions[i], inst.grid_side))
            throw ValidationError("node " + std::to_string(i) + " lies outside the grid");
    require_distinct(inst.positions, "instance");

    validate_edge_list(n, inst.radius_sq, inst.edges);
    if (inst.edges != derive_edges(inst.positions, inst.radius_sq))
        throw ValidationError("edge list differs from the pairs within radius of the given positions");
    if (! is_connected(n, inst.edges))
        throw ValidationError("graph is not connected");

    std::vector<LatticePoint> anchor_points;
    for (std::size_t i = 0; i < n; ++i)
        if (inst.anchor_flags[i])
            anchor_points.push_back(inst.positions[i]);
    if (anchor_points.size() < 3 || anchor_points.size() >= n)
        throw ValidationError("anchor count must satisfy 3 <= M < N");
    if (collinear(anchor_points))
        throw ValidationError("anchors are collinear");
}

void validate(const Problem & problem)
{
    if (problem.radius_sq.value < 1)
        throw ValidationError("radius_sq must be positive");
    if (problem.grid_side && *problem.grid_side < 1)
        throw ValidationError("grid side must be positive");
    if (problem.anchors.size() < 3 || problem.anchors.size() > problem.n_nodes)
        throw ValidationError("anchor count must satisfy 3 <= M <= N");

    std::vector<LatticePoint> anchor_points;
    for (const auto & [id, p] : problem.anchors) {
        if (id >= problem.n_nodes)
            throw ValidationError("anchor id " + std::to_string(id) + " out of range");
        if (problem.grid_side && ! inside_grid(p, *problem.grid_side))
            throw ValidationError("anchor " + std::to_string(id) + " lies outside the grid");
        anchor_points.push_back(p);
    }
    require_distinct(anchor_points, "problem");
    if (collinear(anchor_points))
        throw ValidationError("anchors are collinear");

    validate_edge_list(problem.n_nodes, problem.radius_sq, problem.edges);
    for (const auto & e : problem.edges) {
        const auto a = problem.anchors.find(e.i);
        const auto b = problem.anchors.find(e.j);
        if (a != problem.anchors.end() && b != problem.anchors.end() && dist2(a->second, b->second) != e.d2)
            throw ValidationError(describe(e) + ": squared distance disagrees with anchor positions");
    }
}

auto generate_instance(std::int64_t grid_side, std::int64_t radius_sq, std::size_t n_nodes,
    std::size_t n_anchors, std::uint64_t seed, GeneratorOptions options) -> Instance
{
    if (n_nodes < 4)
        throw ValidationError("generator needs at least 4 nodes");
    if (n_anchors < 3 || n_anchors >= n_nodes)
        throw ValidationError("anchor count must satisfy 3 <= M < N");
    if (grid_side < 1 || grid_side > kMaxCoordinate)
        throw ValidationError("grid side out of range");
    if (static_cast<unsigned __int128>(grid_side) * static_cast<unsigned __int128>(grid_side) < n_nodes)
        throw ValidationError("grid has fewer cells than nodes");
    if (radius_sq < 1)
        throw ValidationError("radius_sq must be positive");
    if (options.max_attempts < 1)
        throw ValidationError("max_attempts must be positive");

    Rng rng(seed);
    const auto cells = static_cast<std::uint64_t>(grid_side) * static_cast<std::uint64_t>(grid_side);

    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        Instance inst;
        inst.grid_side = grid_side;
        inst.radius_sq = SquaredDistance(radius_sq);

        // Distinct cells, sampled without replacement.
        std::set<std::uint64_t> used;
        while (inst.positions.size() < n_nodes) {
            const auto cell = uniform_index(rng, cells);
            if (used.insert(cell).second)
                inst.positions.emplace_back(static_cast<std::int64_t>(cell % static_cast<std::uint64_t>(grid_side)),
                    static_cast<std::int64_t>(cell / static_cast<std::uint64_t>(grid_side)));
        }

        // Partial Fisher-Yates over node ids picks the anchors.
        std::vector<NodeId> ids(n_nodes);
        std::iota(ids.begin(), ids.end(), NodeId{0});
        for (std::size_t k = 0; k < n_anchors; ++k)
            std::swap(ids[k], ids[k + uniform_index(rng, n_nodes - k)]);
        inst.anchor_flags.assign(n_nodes, false);
        std::vector<LatticePoint> anchor_points;
        for (std::size_t k = 0; k < n_anchors; ++k) {
            inst.anchor_flags[ids[k]] = true;
            anchor_points.push_back(inst.positions[ids[k]]);
        }

        if (collinear(anchor_points))
            continue;
        inst.edges = derive_edges(inst.positions, inst.radius_sq);
        if (! is_connected(n_nodes, inst.edges))
            continue;
        return inst;
    }

    throw GenerationFailure("no connected instance with non-collinear anchors after "
        + std::to_string(options.max_attempts) + " attempts");
}

auto strip_instance(const Instance & inst, bool keep_bounds) -> Problem
{
    Problem problem;
    problem.n_nodes = inst.n_nodes();
    problem.radius_sq = inst.radius_sq;
    for (std::size_t i = 0; i < inst.n_nodes(); ++i)
        if (inst.anchor_flags[i])
            problem.anchors.emplace(static_cast<NodeId>(i), inst.positions[i]);
    problem.edges = inst.edges;
    if (keep_bounds)
        problem.grid_side = inst.grid_side;
    return problem;
}

} // namespace udgl
