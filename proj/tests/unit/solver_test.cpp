#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "udgl/model.hpp"
#include "udgl/model_io.hpp"
#include "udgl/oracle.hpp"
#include "udgl/solver.hpp"

using namespace udgl;

namespace {

auto load_fixture(const std::string & name) -> Instance
{
    return std::get<Instance>(parse_file(read_text_file(std::string(UDGL_FIXTURE_DIR) + "/" + name)));
}

auto config_for(RuleSet rules, Ordering ordering = Ordering::MostConnected, std::uint64_t seed = 0) -> SolverConfig
{
    SolverConfig config;
    config.rules = rules;
    config.ordering = ordering;
    config.seed = seed;
    return config;
}

auto anchors_only(const Problem & problem) -> PartialRealization
{
    PartialRealization partial;
    partial.assigned = problem.anchors;
    return partial;
}

/// Three far-apart anchors plus one unknown (id 3) with the given edges to it.
auto probe_problem(std::int64_t radius_sq, std::vector<LatticePoint> anchors, std::vector<Edge> edges) -> Problem
{
    Problem problem;
    problem.n_nodes = 4;
    problem.radius_sq = SquaredDistance(radius_sq);
    for (NodeId id = 0; id < anchors.size(); ++id)
        problem.anchors.emplace(id, anchors[id]);
    problem.edges = std::move(edges);
    validate(problem);
    return problem;
}

} // namespace

TEST(RealizationOrder, ChainFixturePicksBestConnectedFirst)
{
    const auto problem = strip_instance(load_fixture("fixture_f2.udgl"), false);
    EXPECT_EQ(realization_order(problem, Ordering::MostConnected, 0), (std::vector<NodeId>{3, 4}));
}

TEST(RealizationOrder, NoUnknownsGivesEmptyOrder)
{
    Problem problem;
    problem.n_nodes = 3;
    problem.radius_sq = SquaredDistance(4);
    problem.anchors = {{0, {0, 0}}, {1, {10, 0}}, {2, {0, 10}}};
    EXPECT_TRUE(realization_order(problem, Ordering::Random, 1).empty());
    EXPECT_TRUE(realization_order(problem, Ordering::MostConnected, 1).empty());
}

TEST(RealizationOrder, StarTopologyWaitsForTheHub)
{
    Problem problem;
    problem.n_nodes = 5;
    problem.radius_sq = SquaredDistance(100);
    problem.anchors = {{0, {0, 0}}, {1, {30, 0}}, {2, {0, 30}}};
    problem.edges = {{0, 3, SquaredDistance(50)}, {1, 3, SquaredDistance(50)}, {2, 3, SquaredDistance(50)}, {3, 4, SquaredDistance(9)}};
    EXPECT_EQ(realization_order(problem, Ordering::MostConnected, 0), (std::vector<NodeId>{3, 4}));
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        EXPECT_EQ(realization_order(problem, Ordering::Random, seed), (std::vector<NodeId>{3, 4}));
}

TEST(RealizationOrder, EveryNodeTouchesEarlierNodes)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = generate_instance(60, 200, 40, 3 + seed % 6, seed);
        const auto problem = strip_instance(inst, false);
        for (auto ordering : {Ordering::Random, Ordering::MostConnected}) {
            const auto order = realization_order(problem, ordering, seed);
            ASSERT_EQ(order.size(), problem.n_unknowns());
            std::set<NodeId> realized;
            for (const auto & entry : problem.anchors)
                realized.insert(entry.first);
            for (NodeId v : order) {
                ASSERT_FALSE(realized.contains(v));
                const bool touches = std::any_of(problem.edges.begin(), problem.edges.end(), [&](const Edge & e) {
                    return (e.i == v && realized.contains(e.j)) || (e.j == v && realized.contains(e.i));
                });
                ASSERT_TRUE(touches);
                realized.insert(v);
            }
            ASSERT_EQ(order, realization_order(problem, ordering, seed));
        }
    }
}

TEST(RealizationOrder, DisconnectedProblemHasNoEligibleNode)
{
    Problem problem;
    problem.n_nodes = 5;
    problem.radius_sq = SquaredDistance(25);
    problem.anchors = {{0, {0, 0}}, {1, {30, 0}}, {2, {0, 30}}};
    problem.edges = {{0, 3, SquaredDistance(25)}};
    EXPECT_THROW(realization_order(problem, Ordering::MostConnected, 0), NoEligibleNode);
    EXPECT_THROW(solve(problem, SolverConfig{}), NoEligibleNode);
}

TEST(SubLocations, EmptyCircleIsADeadEnd)
{
    const auto problem = probe_problem(25, {{0, 0}, {100, 0}, {0, 100}}, {{0, 3, SquaredDistance(3)}});
    SearchStats stats;
    EXPECT_TRUE(sub_locations(3, anchors_only(problem), problem, config_for(RuleSet::UnitDisk), stats).empty());
    EXPECT_EQ(stats.candidates_checked, 0u);
}

TEST(SubLocations, TwoCirclesMeetInOnePoint)
{
    // Independent expectation: box-scan intersection of both circles.
    std::vector<LatticePoint> expected;
    for (std::int64_t x = -10; x <= 20; ++x)
        for (std::int64_t y = -10; y <= 10; ++y)
            if (x * x + y * y == 25 && (x - 10) * (x - 10) + y * y == 25)
                expected.emplace_back(x, y);
    ASSERT_EQ(expected, (std::vector<LatticePoint>{{5, 0}}));

    const auto problem = probe_problem(25, {{0, 0}, {10, 0}, {0, 100}}, {{0, 3, SquaredDistance(25)}, {1, 3, SquaredDistance(25)}});
    for (auto rules : {RuleSet::UnitDisk, RuleSet::Conventional}) {
        SearchStats stats;
        EXPECT_EQ(sub_locations(3, anchors_only(problem), problem, config_for(rules), stats), expected);
        EXPECT_EQ(stats.candidates_checked, 12u);
    }
}

TEST(SubLocations, FixtureOneMirrorIsExcludedOnlyUnderUnitDisk)
{
    const auto inst = load_fixture("fixture_f1.udgl");
    const auto problem = strip_instance(inst, false);
    const auto box = default_search_box(problem);

    for (auto rules : {RuleSet::Conventional, RuleSet::UnitDisk}) {
        std::vector<LatticePoint> expected;
        for (const auto & solution : brute_force_solutions(problem, rules, box))
            expected.push_back(solution[3]);
        std::sort(expected.begin(), expected.end());

        SearchStats stats;
        EXPECT_EQ(sub_locations(3, anchors_only(problem), problem, config_for(rules), stats), expected);
    }
    SearchStats stats;
    EXPECT_EQ(sub_locations(3, anchors_only(problem), problem, config_for(RuleSet::Conventional), stats).size(), 2u);
    EXPECT_EQ(sub_locations(3, anchors_only(problem), problem, config_for(RuleSet::UnitDisk), stats),
        (std::vector<LatticePoint>{inst.positions[3]}));
}

TEST(SubLocations, EnumeratesExactlyTheSmallestNeighbourCircle)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = generate_instance(60, 300, 30, 4, seed);
        const auto problem = strip_instance(inst, false);
        const auto order = realization_order(problem, Ordering::MostConnected, 0);

        // Ground truth realized up to each level; count the pivot circle independently.
        PartialRealization partial = anchors_only(problem);
        for (NodeId n : order) {
            std::size_t smallest = SIZE_MAX;
            for (const auto & e : problem.edges) {
                const NodeId other = e.i == n ? e.j : (e.j == n ? e.i : n);
                if (other != n && partial.assigned.contains(other))
                    smallest = std::min(smallest, lattice_circle({0, 0}, e.d2).size());
            }
            SearchStats stats;
            const auto found = sub_locations(n, partial, problem, config_for(RuleSet::UnitDisk), stats);
            ASSERT_EQ(stats.candidates_checked, smallest);
            ASSERT_TRUE(std::find(found.begin(), found.end(), inst.positions[n]) != found.end());
            partial.assigned.emplace(n, inst.positions[n]);
            ++partial.depth;
        }
    }
}

TEST(Solve, NoUnknownsYieldsTheAnchorAssignment)
{
    Problem problem;
    problem.n_nodes = 3;
    problem.radius_sq = SquaredDistance(4);
    problem.anchors = {{0, {0, 0}}, {1, {10, 0}}, {2, {0, 10}}};
    const auto result = solve(problem, SolverConfig{});
    ASSERT_EQ(result.solutions.size(), 1u);
    EXPECT_EQ(result.solutions.front(), (Assignment{{0, 0}, {10, 0}, {0, 10}}));
    EXPECT_EQ(result.stats.instances_visited, 0u);
    EXPECT_EQ(result.stats.solutions_found, 1u);
}

TEST(Solve, ChainFixtureHasUniqueRealization)
{
    const auto inst = load_fixture("fixture_f2.udgl");
    const auto result = solve(strip_instance(inst, false), config_for(RuleSet::UnitDisk));
    ASSERT_EQ(result.solutions.size(), 1u);
    EXPECT_EQ(result.solutions.front(), inst.positions);

    // Level one branches two ways; one branch dies at level two.
    EXPECT_EQ(result.stats.max_depth_reached, 2u);
    EXPECT_GE(result.stats.instances_visited, 3u);
}

TEST(Solve, FixtureOneCounts)
{
    const auto inst = load_fixture("fixture_f1.udgl");
    const auto problem = strip_instance(inst, false);
    EXPECT_EQ(solve(problem, config_for(RuleSet::Conventional)).solutions.size(), 2u);
    const auto unit_disk = solve(problem, config_for(RuleSet::UnitDisk));
    ASSERT_EQ(unit_disk.solutions.size(), 1u);
    EXPECT_EQ(unit_disk.solutions.front(), inst.positions);
}

TEST(Solve, InconsistentAnchorsHaveNoRealization)
{
    // Anchors 0 and 1 are within radius but not linked.
    Problem problem;
    problem.n_nodes = 4;
    problem.radius_sq = SquaredDistance(25);
    problem.anchors = {{0, {0, 0}}, {1, {3, 0}}, {2, {0, 50}}};
    problem.edges = {{0, 3, SquaredDistance(25)}};
    EXPECT_TRUE(solve(problem, config_for(RuleSet::UnitDisk)).solutions.empty());
    EXPECT_FALSE(solve(problem, config_for(RuleSet::Conventional)).solutions.empty());
}

TEST(Solve, FirstStopsAfterOneSolution)
{
    const auto problem = strip_instance(load_fixture("fixture_f1.udgl"), false);
    auto config = config_for(RuleSet::Conventional);
    config.find_all = false;
    const auto result = solve(problem, config);
    EXPECT_EQ(result.solutions.size(), 1u);
    EXPECT_EQ(result.stats.solutions_found, 1u);
}

TEST(Solve, BudgetExhaustionIsFlagged)
{
    const auto problem = strip_instance(generate_instance(100, 625, 60, 3, 5), false);
    auto config = config_for(RuleSet::Conventional, Ordering::Random, 5);
    config.budget = 10;
    const auto result = solve(problem, config);
    EXPECT_TRUE(result.stats.budget_exhausted);
    EXPECT_EQ(result.stats.instances_visited, 10u);

    config.budget = 0;
    EXPECT_THROW(solve(problem, config), ValidationError);
}

TEST(Solve, BoundsEnforcement)
{
    const auto inst = load_fixture("fixture_f1.udgl");
    auto config = config_for(RuleSet::Conventional);
    config.enforce_bounds = true;
    EXPECT_THROW(solve(strip_instance(inst, false), config), ValidationError);

    const auto bounded = solve(strip_instance(inst, true), config);
    for (const auto & solution : bounded.solutions)
        for (const auto & p : solution)
            EXPECT_TRUE(p.x >= 0 && p.y >= 0 && p.x < inst.grid_side && p.y < inst.grid_side);
}

TEST(Solve, RecordSolutionsOffStillCounts)
{
    const auto problem = strip_instance(load_fixture("fixture_f1.udgl"), false);
    auto config = config_for(RuleSet::Conventional);
    config.record_solutions = false;
    const auto result = solve(problem, config);
    EXPECT_TRUE(result.solutions.empty());
    EXPECT_EQ(result.stats.solutions_found, 2u);
}

TEST(SolveProperties, TreeSubsetCompletenessAndMemory)
{
    int complete_runs = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto inst = generate_instance(40, 80 + static_cast<std::int64_t>(seed % 5) * 20, 25, 3 + seed % 4, seed);
        const auto problem = strip_instance(inst, false);
        const std::size_t unknowns = problem.n_unknowns();

        for (auto ordering : {Ordering::Random, Ordering::MostConnected}) {
            auto config = config_for(RuleSet::Conventional, ordering, seed);
            config.budget = 2'000'000;
            const auto conventional = solve(problem, config);
            config.rules = RuleSet::UnitDisk;
            const auto unit_disk = solve(problem, config);

            for (const auto * result : {&conventional, &unit_disk}) {
                ASSERT_LE(result->stats.instances_visited, result->stats.candidates_checked);
                ASSERT_LE(result->stats.max_depth_reached, unknowns);
                ASSERT_LE(result->stats.max_path_length, unknowns + 1);
            }
            ASSERT_LE(unit_disk.stats.instances_visited, conventional.stats.instances_visited);
            ASSERT_LE(unit_disk.stats.candidates_checked, conventional.stats.candidates_checked);

            ASSERT_FALSE(unit_disk.stats.budget_exhausted);
            ASSERT_TRUE(std::find(unit_disk.solutions.begin(), unit_disk.solutions.end(), inst.positions) != unit_disk.solutions.end());
            for (const auto & s : unit_disk.solutions)
                ASSERT_TRUE(verify(problem, s, RuleSet::UnitDisk).valid);

            if (conventional.stats.budget_exhausted)
                continue;
            ++complete_runs;
            ASSERT_TRUE(std::find(conventional.solutions.begin(), conventional.solutions.end(), inst.positions) != conventional.solutions.end());
            const std::set<Assignment> all(conventional.solutions.begin(), conventional.solutions.end());
            ASSERT_EQ(all.size(), conventional.solutions.size());
            for (const auto & s : unit_disk.solutions)
                ASSERT_TRUE(all.contains(s));
            for (const auto & s : conventional.solutions)
                ASSERT_TRUE(verify(problem, s, RuleSet::Conventional).valid);
        }
    }
    EXPECT_GT(complete_runs, 60);
}

TEST(SolveProperties, Deterministic)
{
    const auto problem = strip_instance(generate_instance(80, 400, 50, 4, 77), false);
    for (auto rules : {RuleSet::UnitDisk, RuleSet::Conventional}) {
        auto config = config_for(rules, Ordering::Random, 9);
        config.budget = 500'000;
        EXPECT_EQ(solve(problem, config), solve(problem, config));
    }
}

TEST(Verify, GroundTruthPasses)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate_instance(50, 150, 30, 3 + seed % 3, seed);
        EXPECT_TRUE(verify(strip_instance(inst, false), inst.positions, RuleSet::UnitDisk).valid);
        EXPECT_TRUE(verify(strip_instance(inst, false), inst.positions, RuleSet::Conventional).valid);
    }
}

TEST(Verify, DisplacedNodeBreaksAnEdge)
{
    const auto inst = generate_instance(100, 625, 100, 4, 42);
    const auto problem = strip_instance(inst, false);
    const auto unknown = static_cast<NodeId>(std::find(inst.anchor_flags.begin(), inst.anchor_flags.end(), false) - inst.anchor_flags.begin());
    auto moved = inst.positions;
    moved[unknown].x += 1;
    const auto outcome = verify(problem, moved, RuleSet::UnitDisk);
    ASSERT_FALSE(outcome.valid);
    EXPECT_EQ(outcome.violation->kind, ViolationKind::EdgeLength);
    EXPECT_TRUE(outcome.violation->i == unknown || outcome.violation->j == unknown);
}

TEST(Verify, FixtureOneMirrorViolatesNoEdge)
{
    const auto inst = load_fixture("fixture_f1.udgl");
    const auto problem = strip_instance(inst, false);
    const auto conventional = brute_force_solutions(problem, RuleSet::Conventional, default_search_box(problem));
    ASSERT_EQ(conventional.size(), 2u);
    const auto & mirrored = conventional[0] == inst.positions ? conventional[1] : conventional[0];

    const auto outcome = verify(problem, mirrored, RuleSet::UnitDisk);
    ASSERT_FALSE(outcome.valid);
    EXPECT_EQ(outcome.violation->kind, ViolationKind::NoEdgeTooClose);
    EXPECT_EQ(outcome.violation->j, 3u);
    EXPECT_TRUE(verify(problem, mirrored, RuleSet::Conventional).valid);
}

TEST(Verify, ReportsCollisionsAndBadInput)
{
    const auto inst = load_fixture("fixture_f2.udgl");
    const auto problem = strip_instance(inst, false);

    auto collided = inst.positions;
    collided[4] = collided[3];
    const auto outcome = verify(problem, collided, RuleSet::Conventional);
    ASSERT_FALSE(outcome.valid);

    EXPECT_THROW(verify(problem, Assignment(inst.positions.begin(), inst.positions.end() - 1), RuleSet::UnitDisk), MissingNode);
    auto shifted = inst.positions;
    shifted[0].x += 1;
    EXPECT_THROW(verify(problem, shifted, RuleSet::UnitDisk), AnchorMismatch);
}
