#include "udgl/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace udgl {

namespace {

    /// Dense squared-length matrix; the oracle keeps its own edge lookup.
    class EdgeMatrix {
    public:
        EdgeMatrix(std::size_t n, const std::vector<Edge> & edges) : n_(n), d2_(n * n, -1)
        {
            for (const auto & e : edges) {
                d2_[e.i * n + e.j] = e.d2.value;
                d2_[e.j * n + e.i] = e.d2.value;
            }
        }

        auto at(std::size_t i, std::size_t j) const -> std::int64_t { return d2_[i * n_ + j]; }

    private:
        std::size_t n_;
        std::vector<std::int64_t> d2_;
    };

    auto pair_ok(const LatticePoint & a, const LatticePoint & b, std::int64_t edge_d2, std::int64_t radius_sq, RuleSet rules) -> bool
    {
        const std::int64_t dx = a.x - b.x;
        const std::int64_t dy = a.y - b.y;
        const std::int64_t d = dx * dx + dy * dy;
        if (d == 0)
            return false;
        if (edge_d2 >= 0)
            return d == edge_d2;
        return rules == RuleSet::Conventional || d > radius_sq;
    }

    class Enumerator {
    public:
        Enumerator(const Problem & problem, RuleSet rules, const SearchBox & box) :
            problem_(problem), rules_(rules), box_(box), edges_(problem.n_nodes, problem.edges),
            assignment_(problem.n_nodes), placed_(problem.n_nodes, false)
        {
            for (const auto & [id, p] : problem.anchors) {
                assignment_[id] = p;
                placed_[id] = true;
            }
            for (NodeId v = 0; v < problem.n_nodes; ++v)
                if (! placed_[v])
                    unknowns_.push_back(v);
        }

        auto run() -> std::vector<Assignment>
        {
            // Anchor pairs are checked once up front.
            for (auto a = problem_.anchors.begin(); a != problem_.anchors.end(); ++a)
                for (auto b = std::next(a); b != problem_.anchors.end(); ++b)
                    if (! pair_ok(a->second, b->second, edges_.at(a->first, b->first), problem_.radius_sq.value, rules_))
                        return {};
            place(0);
            std::sort(found_.begin(), found_.end());
            return std::move(found_);
        }

    private:
        void place(std::size_t k)
        {
            if (k == unknowns_.size()) {
                accept();
                return;
            }
            const NodeId v = unknowns_[k];
            for (std::int64_t x = box_.x_min; x <= box_.x_max; ++x)
                for (std::int64_t y = box_.y_min; y <= box_.y_max; ++y) {
                    const LatticePoint p(x, y);
                    if (! consistent(v, p))
                        continue;
                    assignment_[v] = p;
                    placed_[v] = true;
                    place(k + 1);
                    placed_[v] = false;
                }
        }

        /// A necessary condition: p is compatible with every node placed so far.
        auto consistent(NodeId v, const LatticePoint & p) const -> bool
        {
            for (NodeId w = 0; w < problem_.n_nodes; ++w)
                if (placed_[w] && ! pair_ok(p, assignment_[w], edges_.at(v, w), problem_.radius_sq.value, rules_))
                    return false;
            return true;
        }

        /// Full re-check by two independent routes; they must agree.
        void accept()
        {
            bool all_pairs = true;
            for (NodeId i = 0; i < problem_.n_nodes && all_pairs; ++i)
                for (NodeId j = i + 1; j < problem_.n_nodes; ++j)
                    if (! pair_ok(assignment_[i], assignment_[j], edges_.at(i, j), problem_.radius_sq.value, rules_)) {
                        all_pairs = false;
                        break;
                    }
            const bool verified = verify(problem_, assignment_, rules_).valid;
            if (verified != all_pairs)
                throw std::logic_error("oracle constraint loop and verify() disagree");
            if (verified)
                found_.push_back(assignment_);
        }

        const Problem & problem_;
        RuleSet rules_;
        SearchBox box_;
        EdgeMatrix edges_;
        Assignment assignment_;
        std::vector<bool> placed_;
        std::vector<NodeId> unknowns_;
        std::vector<Assignment> found_;
    };

    auto ceil_sqrt(std::int64_t s) -> std::int64_t
    {
        auto r = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(s)));
        return r * r == s ? r : r + 1;
    }

    /// Largest BFS hop count from the anchor set to any node (0 if there are no unknowns).
    auto max_hops_from_anchors(const Problem & problem) -> std::int64_t
    {
        std::vector<std::vector<NodeId>> adjacent(problem.n_nodes);
        for (const auto & e : problem.edges) {
            adjacent[e.i].push_back(e.j);
            adjacent[e.j].push_back(e.i);
        }
        std::vector<std::int64_t> hops(problem.n_nodes, -1);
        std::deque<NodeId> queue;
        for (const auto & entry : problem.anchors) {
            hops[entry.first] = 0;
            queue.push_back(entry.first);
        }
        std::int64_t worst = 0;
        while (! queue.empty()) {
            const NodeId v = queue.front();
            queue.pop_front();
            worst = std::max(worst, hops[v]);
            for (NodeId w : adjacent[v])
                if (hops[w] < 0) {
                    hops[w] = hops[v] + 1;
                    queue.push_back(w);
                }
        }
        if (std::find(hops.begin(), hops.end(), -1) != hops.end())
            throw NoEligibleNode("some non-anchor nodes are not connected to the anchors");
        return worst;
    }

    auto oracle_count(const Problem & problem, RuleSet rules) -> std::size_t
    {
        return brute_force_solutions(problem, rules, default_search_box(problem, problem.grid_side)).size();
    }

    auto make_instance(std::int64_t grid, std::int64_t radius_sq, std::vector<LatticePoint> positions, std::size_t n_anchors) -> std::optional<Instance>
    {
        Instance inst;
        inst.grid_side = grid;
        inst.radius_sq = SquaredDistance(radius_sq);
        inst.positions = std::move(positions);
        inst.anchor_flags.assign(inst.positions.size(), false);
        std::fill_n(inst.anchor_flags.begin(), n_anchors, true);
        inst.edges = derive_edges(inst.positions, inst.radius_sq);
        try {
            validate(inst);
        }
        catch (const ValidationError &) {
            return std::nullopt;
        }
        return inst;
    }

} // namespace

auto SearchBox::size() const -> unsigned __int128
{
    if (x_max < x_min || y_max < y_min)
        return 0;
    return static_cast<unsigned __int128>(x_max - x_min + 1) * static_cast<unsigned __int128>(y_max - y_min + 1);
}

auto default_search_box(const Problem & problem, std::optional<std::int64_t> grid_side) -> SearchBox
{
    SearchBox box;
    if (grid_side) {
        box = SearchBox{0, 0, *grid_side - 1, *grid_side - 1};
    }
    else {
        box = SearchBox{kMaxCoordinate, kMaxCoordinate, -kMaxCoordinate, -kMaxCoordinate};
        for (const auto & [id, p] : problem.anchors) {
            box.x_min = std::min(box.x_min, p.x);
            box.y_min = std::min(box.y_min, p.y);
            box.x_max = std::max(box.x_max, p.x);
            box.y_max = std::max(box.y_max, p.y);
        }
    }
    const std::int64_t grow = max_hops_from_anchors(problem) * ceil_sqrt(problem.radius_sq.value);
    box.x_min -= grow;
    box.y_min -= grow;
    box.x_max += grow;
    box.y_max += grow;
    return box;
}

auto brute_force_solutions(const Problem & problem, RuleSet rules, const SearchBox & box,
    const OracleOptions & options) -> std::vector<Assignment>
{
    validate(problem);
    const std::size_t unknowns = problem.n_unknowns();
    if (unknowns > options.max_unknowns)
        throw CapExceeded("oracle limited to " + std::to_string(options.max_unknowns) + " non-anchors");

    unsigned __int128 work = 1;
    for (std::size_t k = 0; k < unknowns; ++k) {
        work *= box.size();
        if (work > options.work_limit)
            throw CapExceeded("search box too large for brute-force enumeration");
    }

    Enumerator enumerator(problem, rules, box);
    return enumerator.run();
}

auto find_fixture_f1(std::int64_t max_grid) -> Instance
{
    for (std::int64_t grid = 2; grid <= max_grid; ++grid) {
        std::vector<LatticePoint> cells;
        for (std::int64_t y = 0; y < grid; ++y)
            for (std::int64_t x = 0; x < grid; ++x)
                cells.emplace_back(x, y);

        for (std::int64_t r2 = 1; r2 <= 2 * (grid - 1) * (grid - 1); ++r2)
            for (const auto & u : cells)
                for (std::size_t a = 0; a < cells.size(); ++a)
                    for (std::size_t b = a + 1; b < cells.size(); ++b) {
                        const auto & pa = cells[a];
                        const auto & pb = cells[b];
                        if (pa == u || pb == u || dist2(pa, u).value > r2 || dist2(pb, u).value > r2)
                            continue;
                        // Mirror image of u across line AB: the other common point of the two circles.
                        std::vector<LatticePoint> common;
                        for (const auto & p : lattice_circle(pa, dist2(pa, u)))
                            if (dist2(pb, p) == dist2(pb, u))
                                common.push_back(p);
                        if (common.size() != 2)
                            continue;
                        const auto mirror = common[0] == u ? common[1] : common[0];

                        for (const auto & pc : cells) {
                            if (pc == u || pc == pa || pc == pb || pc == mirror)
                                continue;
                            if (dist2(pc, u).value <= r2 || dist2(pc, mirror).value > r2)
                                continue;
                            auto inst = make_instance(grid, r2, {pa, pb, pc, u}, 3);
                            if (! inst)
                                continue;
                            const auto problem = strip_instance(*inst, false);
                            const auto unit_disk = brute_force_solutions(problem, RuleSet::UnitDisk, default_search_box(problem));
                            if (oracle_count(problem, RuleSet::Conventional) == 2 && unit_disk.size() == 1
                                && unit_disk.front() == inst->positions)
                                return *inst;
                        }
                    }
    }
    throw NotFound("no flip-ambiguous fixture on grids up to " + std::to_string(max_grid));
}

auto find_fixture_f2(std::int64_t max_grid) -> Instance
{
    constexpr std::int64_t r2 = 1;
    for (std::int64_t grid = 2; grid <= max_grid; ++grid) {
        std::vector<LatticePoint> cells;
        for (std::int64_t y = 0; y < grid; ++y)
            for (std::int64_t x = 0; x < grid; ++x)
                cells.emplace_back(x, y);

        auto adjacent = [](const LatticePoint & p, const LatticePoint & q) { return dist2(p, q).value <= r2; };

        for (const auto & p3 : cells)
            for (const auto & p1 : cells) {
                if (! adjacent(p1, p3) || p1 == p3)
                    continue;
                for (const auto & p2 : cells) {
                    if (p2 <= p1 || p2 == p3 || ! adjacent(p2, p3))
                        continue;
                    for (const auto & p4 : cells) {
                        if (p4 == p1 || p4 == p2 || p4 == p3 || ! adjacent(p4, p3))
                            continue;
                        for (const auto & p0 : cells) {
                            if (p0 == p1 || p0 == p2 || p0 == p3 || p0 == p4 || adjacent(p0, p3))
                                continue;
                            auto inst = make_instance(grid, r2, {p0, p1, p2, p3, p4}, 3);
                            if (! inst)
                                continue;
                            const auto problem = strip_instance(*inst, false);
                            const auto unit_disk = brute_force_solutions(problem, RuleSet::UnitDisk, default_search_box(problem));
                            if (unit_disk.size() != 1 || unit_disk.front() != inst->positions)
                                continue;

                            // Node 3 alone must be two-way ambiguous against the anchors.
                            Problem partial = problem;
                            partial.n_nodes = 4;
                            std::erase_if(partial.edges, [](const Edge & e) { return e.j == 4; });
                            if (oracle_count(partial, RuleSet::UnitDisk) != 2)
                                continue;
                            return *inst;
                        }
                    }
                }
            }
    }
    throw NotFound("no two-unknown unit-radius fixture on grids up to " + std::to_string(max_grid));
}

} // namespace udgl
