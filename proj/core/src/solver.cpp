#include "udgl/solver.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "udgl/random.hpp"

namespace udgl {

namespace {

    constexpr std::int64_t kNoEdge = -1;

    /// Sorted adjacency lists carrying squared edge lengths.
    class Adjacency {
    public:
        Adjacency(std::size_t n_nodes, const std::vector<Edge> & edges) : lists_(n_nodes)
        {
            for (const auto & e : edges) {
                lists_[e.i].emplace_back(e.j, e.d2.value);
                lists_[e.j].emplace_back(e.i, e.d2.value);
            }
            for (auto & list : lists_)
                std::sort(list.begin(), list.end());
        }

        auto d2(NodeId a, NodeId b) const -> std::int64_t
        {
            const auto & list = lists_[a];
            const auto it = std::lower_bound(list.begin(), list.end(), std::pair<NodeId, std::int64_t>{b, std::numeric_limits<std::int64_t>::min()});
            return (it != list.end() && it->first == b) ? it->second : kNoEdge;
        }

        auto neighbours(NodeId a) const -> const std::vector<std::pair<NodeId, std::int64_t>> & { return lists_[a]; }

    private:
        std::vector<std::vector<std::pair<NodeId, std::int64_t>>> lists_;
    };

    /// Lattice circles about the origin, memoised by squared radius.
    class CircleCache {
    public:
        auto offsets(std::int64_t s) -> const std::vector<LatticePoint> &
        {
            auto it = cache_.find(s);
            if (it == cache_.end())
                it = cache_.emplace(s, lattice_circle(LatticePoint{0, 0}, SquaredDistance(s))).first;
            return it->second;
        }

    private:
        std::unordered_map<std::int64_t, std::vector<LatticePoint>> cache_;
    };

    struct EdgeCheck {
        std::size_t slot;
        std::int64_t d2;
    };

    /// Everything needed to expand one tree level. Realized nodes live in "slots"
    /// (an array of positions); the plan refers to them by slot index.
    struct LevelPlan {
        NodeId node = 0;
        std::size_t pivot_slot = 0;
        const std::vector<LatticePoint> * offsets = nullptr;
        std::vector<EdgeCheck> edge_checks;
        std::vector<std::size_t> other_slots;
    };

    /// realized[k] is the node held in slot k.
    auto plan_level(NodeId n, const std::vector<NodeId> & realized, const Adjacency & adjacency, CircleCache & circles) -> LevelPlan
    {
        LevelPlan plan;
        plan.node = n;
        std::optional<std::pair<std::size_t, NodeId>> best; // (D, node id)
        for (std::size_t slot = 0; slot < realized.size(); ++slot) {
            const NodeId m = realized[slot];
            const auto d2 = adjacency.d2(n, m);
            if (d2 == kNoEdge) {
                plan.other_slots.push_back(slot);
                continue;
            }
            plan.edge_checks.push_back(EdgeCheck{slot, d2});
            const auto & offsets = circles.offsets(d2);
            const std::pair<std::size_t, NodeId> key{offsets.size(), m};
            if (! best || key < *best) {
                best = key;
                plan.pivot_slot = slot;
                plan.offsets = &offsets;
            }
        }
        if (! best)
            throw NoEligibleNode("node " + std::to_string(n) + " has no realized neighbour");
        return plan;
    }

    struct Bounds {
        bool enabled = false;
        std::int64_t side = 0;

        auto contains(const LatticePoint & p) const -> bool
        {
            return ! enabled || (p.x >= 0 && p.y >= 0 && p.x < side && p.y < side);
        }
    };

    auto bounds_for(const Problem & problem, const SolverConfig & config) -> Bounds
    {
        if (! config.enforce_bounds)
            return {};
        if (! problem.grid_side)
            throw ValidationError("bounds enforcement requested but the problem carries no grid side");
        return Bounds{true, *problem.grid_side};
    }

    /// Candidate test against all realized slots under the active rule set.
    auto admissible(const LatticePoint & x, const LevelPlan & plan, const std::vector<LatticePoint> & slots,
        RuleSet rules, std::int64_t radius_sq, const Bounds & bounds) -> bool
    {
        if (! bounds.contains(x))
            return false;
        for (const auto & check : plan.edge_checks)
            if (dist2(x, slots[check.slot]).value != check.d2)
                return false;
        if (rules == RuleSet::UnitDisk) {
            for (auto slot : plan.other_slots)
                if (dist2(x, slots[slot]).value <= radius_sq)
                    return false;
        }
        else {
            for (auto slot : plan.other_slots)
                if (x == slots[slot])
                    return false;
        }
        return true;
    }

    /// Fills out with the admissible points of the plan's pivot circle.
    void expand(const LevelPlan & plan, const std::vector<LatticePoint> & slots, RuleSet rules,
        std::int64_t radius_sq, const Bounds & bounds, SearchStats & stats, std::vector<LatticePoint> & out)
    {
        out.clear();
        const LatticePoint & pivot = slots[plan.pivot_slot];
        for (const auto & offset : *plan.offsets) {
            ++stats.candidates_checked;
            const LatticePoint x(pivot.x + offset.x, pivot.y + offset.y);
            if (admissible(x, plan, slots, rules, radius_sq, bounds))
                out.push_back(x);
        }
    }

    /// Anchors must already be mutually consistent, otherwise the root has no valid children.
    auto anchors_consistent(const Problem & problem, const Adjacency & adjacency, RuleSet rules) -> bool
    {
        for (auto a = problem.anchors.begin(); a != problem.anchors.end(); ++a)
            for (auto b = std::next(a); b != problem.anchors.end(); ++b) {
                const auto d = dist2(a->second, b->second).value;
                const auto e = adjacency.d2(a->first, b->first);
                if (d == 0)
                    return false;
                if (e != kNoEdge && d != e)
                    return false;
                if (e == kNoEdge && rules == RuleSet::UnitDisk && d <= problem.radius_sq.value)
                    return false;
            }
        return true;
    }

    class TreeSearch {
    public:
        TreeSearch(const Problem & problem, const SolverConfig & config) :
            problem_(problem),
            config_(config),
            adjacency_(problem.n_nodes, problem.edges),
            bounds_(bounds_for(problem, config))
        {
            if (config.budget < 1)
                throw ValidationError("search budget must be at least 1");

            const auto order = realization_order(problem, config.ordering, config.seed);
            for (const auto & [id, p] : problem.anchors) {
                realized_.push_back(id);
                slots_.push_back(p);
            }
            for (NodeId n : order) {
                plans_.push_back(plan_level(n, realized_, adjacency_, circles_));
                realized_.push_back(n);
            }
            slots_.resize(realized_.size());
            candidates_.resize(order.size());
        }

        auto run() -> SolutionSet
        {
            if (! anchors_consistent(problem_, adjacency_, config_.rules))
                return std::move(result_);

            active_path_ = 1;
            result_.stats.max_path_length = 1;
            descend(0);
            return std::move(result_);
        }

    private:
        void descend(std::size_t level)
        {
            auto & stats = result_.stats;
            if (level == plans_.size()) {
                ++stats.solutions_found;
                if (config_.record_solutions) {
                    Assignment solution(problem_.n_nodes);
                    for (std::size_t slot = 0; slot < realized_.size(); ++slot)
                        solution[realized_[slot]] = slots_[slot];
                    result_.solutions.push_back(std::move(solution));
                }
                if (! config_.find_all)
                    stop_ = true;
                return;
            }

            auto & candidates = candidates_[level];
            expand(plans_[level], slots_, config_.rules, problem_.radius_sq.value, bounds_, stats, candidates);

            const std::size_t slot = problem_.anchors.size() + level;
            for (const auto & x : candidates) {
                if (stats.instances_visited >= config_.budget) {
                    stats.budget_exhausted = true;
                    stop_ = true;
                    return;
                }
                ++stats.instances_visited;
                stats.max_depth_reached = std::max(stats.max_depth_reached, level + 1);
                slots_[slot] = x;

                ++active_path_;
                stats.max_path_length = std::max(stats.max_path_length, active_path_);
                descend(level + 1);
                --active_path_;

                if (stop_)
                    return;
            }
        }

        const Problem & problem_;
        const SolverConfig & config_;
        Adjacency adjacency_;
        Bounds bounds_;
        CircleCache circles_;
        std::vector<NodeId> realized_;
        std::vector<LatticePoint> slots_;
        std::vector<LevelPlan> plans_;
        std::vector<std::vector<LatticePoint>> candidates_;
        std::size_t active_path_ = 0;
        bool stop_ = false;
        SolutionSet result_;
    };

} // namespace

auto to_string(RuleSet rules) -> std::string_view
{
    return rules == RuleSet::UnitDisk ? "unit-disk" : "conventional";
}

auto to_string(Ordering ordering) -> std::string_view
{
    return ordering == Ordering::MostConnected ? "most-connected" : "random";
}

auto parse_rule_set(std::string_view text) -> std::optional<RuleSet>
{
    if (text == "unit-disk")
        return RuleSet::UnitDisk;
    if (text == "conventional")
        return RuleSet::Conventional;
    return std::nullopt;
}

auto parse_ordering(std::string_view text) -> std::optional<Ordering>
{
    if (text == "most-connected")
        return Ordering::MostConnected;
    if (text == "random")
        return Ordering::Random;
    return std::nullopt;
}

auto to_string(ViolationKind kind) -> std::string_view
{
    switch (kind) {
    case ViolationKind::EdgeLength: return "edge-length";
    case ViolationKind::NoEdgeTooClose: return "no-edge-too-close";
    case ViolationKind::Collision: return "collision";
    }
    return "unknown";
}

auto realization_order(const Problem & problem, Ordering ordering, std::uint64_t seed) -> std::vector<NodeId>
{
    const std::size_t n = problem.n_nodes;
    std::vector<bool> realized(n, false);
    std::vector<std::size_t> links(n, 0);
    const Adjacency adjacency(n, problem.edges);

    auto realize = [&](NodeId v) {
        realized[v] = true;
        for (const auto & [w, d2] : adjacency.neighbours(v))
            ++links[w];
    };
    for (const auto & entry : problem.anchors)
        realize(entry.first);

    Rng rng(seed);
    std::vector<NodeId> order;
    std::vector<NodeId> eligible;
    while (order.size() < problem.n_unknowns()) {
        eligible.clear();
        for (NodeId v = 0; v < n; ++v)
            if (! realized[v] && links[v] > 0)
                eligible.push_back(v);
        if (eligible.empty())
            throw NoEligibleNode("some non-anchor nodes are not connected to the anchors");

        NodeId pick = eligible.front();
        if (ordering == Ordering::MostConnected) {
            for (NodeId v : eligible)
                if (links[v] > links[pick])
                    pick = v;
        }
        else
            pick = eligible[uniform_index(rng, eligible.size())];

        order.push_back(pick);
        realize(pick);
    }
    return order;
}

auto sub_locations(NodeId n, const PartialRealization & partial, const Problem & problem,
    const SolverConfig & config, SearchStats & stats) -> std::vector<LatticePoint>
{
    if (n >= problem.n_nodes || partial.assigned.contains(n))
        throw ValidationError("sub_locations needs an unrealized node id");

    const Adjacency adjacency(problem.n_nodes, problem.edges);
    CircleCache circles;
    std::vector<NodeId> realized;
    std::vector<LatticePoint> slots;
    for (const auto & [id, p] : partial.assigned) {
        realized.push_back(id);
        slots.push_back(p);
    }

    const auto plan = plan_level(n, realized, adjacency, circles);
    std::vector<LatticePoint> out;
    expand(plan, slots, config.rules, problem.radius_sq.value, bounds_for(problem, config), stats, out);
    return out;
}

auto solve(const Problem & problem, const SolverConfig & config) -> SolutionSet
{
    validate(problem);
    TreeSearch search(problem, config);
    return search.run();
}

auto verify(const Problem & problem, const Assignment & assignment, RuleSet rules) -> VerifyResult
{
    if (assignment.size() != problem.n_nodes)
        throw MissingNode("assignment covers " + std::to_string(assignment.size()) + " of " + std::to_string(problem.n_nodes) + " nodes");
    for (const auto & [id, p] : problem.anchors)
        if (assignment[id] != p)
            throw AnchorMismatch("anchor " + std::to_string(id) + " is not at its known position");

    for (const auto & e : problem.edges)
        if (dist2(assignment[e.i], assignment[e.j]) != e.d2)
            return VerifyResult{false, Violation{ViolationKind::EdgeLength, e.i, e.j}};

    const Adjacency adjacency(problem.n_nodes, problem.edges);
    const auto n = static_cast<NodeId>(problem.n_nodes);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            const auto d = dist2(assignment[i], assignment[j]);
            if (d.value == 0)
                return VerifyResult{false, Violation{ViolationKind::Collision, i, j}};
            if (rules == RuleSet::UnitDisk && d <= problem.radius_sq && adjacency.d2(i, j) == kNoEdge)
                return VerifyResult{false, Violation{ViolationKind::NoEdgeTooClose, i, j}};
        }
    return {};
}

} // namespace udgl
