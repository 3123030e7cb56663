#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "udgl/model.hpp"

namespace udgl {

/// Which constraints prune the search.
enum class RuleSet {
    /// Edge lengths and pairwise distinctness only.
    Conventional,
    /// Additionally, every non-adjacent pair must be strictly farther apart than the radius.
    UnitDisk,
};

enum class Ordering {
    /// Uniform (seeded) choice among the currently eligible unknowns.
    Random,
    /// Unknown with the most edges into the realized set; lowest id breaks ties.
    MostConnected,
};

auto to_string(RuleSet rules) -> std::string_view;
auto to_string(Ordering ordering) -> std::string_view;
auto parse_rule_set(std::string_view text) -> std::optional<RuleSet>;
auto parse_ordering(std::string_view text) -> std::optional<Ordering>;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct SolverConfig {
    RuleSet rules = RuleSet::UnitDisk;
    Ordering ordering = Ordering::MostConnected;
    std::uint64_t seed = 0;
    bool find_all = true;
    /// Maximum number of tree instances entered before the search gives up.
    std::uint64_t budget = kDefaultBudget;
    /// Restrict placements to the problem's grid (requires Problem::grid_side).
    bool enforce_bounds = false;
    /// When false, leaves are counted but complete assignments are not kept.
    bool record_solutions = true;
};

/// Coordinates indexed by NodeId.
using Assignment = std::vector<LatticePoint>;

/// A node of the search tree: the realized set with its tentative coordinates.
struct PartialRealization {
    std::map<NodeId, LatticePoint> assigned;
    std::size_t depth = 0;
};

struct SearchStats {
    /// Tree instances entered, the root excluded.
    std::uint64_t instances_visited = 0;
    /// Lattice-circle points validated, whether they passed or not.
    std::uint64_t candidates_checked = 0;
    std::size_t max_depth_reached = 0;
    std::uint64_t solutions_found = 0;
    bool budget_exhausted = false;
    /// Largest number of partial realizations alive at once on the active path, root included.
    std::size_t max_path_length = 0;

    friend auto operator==(const SearchStats &, const SearchStats &) -> bool = default;
};

struct SolutionSet {
    std::vector<Assignment> solutions;
    SearchStats stats;

    friend auto operator==(const SolutionSet &, const SolutionSet &) -> bool = default;
};

/// Static order in which the non-anchors are realized, shared by every branch.
/// Throws NoEligibleNode if some unknown is unreachable from the anchors.
auto realization_order(const Problem & problem, Ordering ordering, std::uint64_t seed) -> std::vector<NodeId>;

/// Valid placements of unrealized node n given the partial realization, in (x, y) order.
/// The candidates are the lattice circle around the realized neighbor whose
/// circle has the fewest lattice points; stats.candidates_checked grows by that count.
auto sub_locations(NodeId n, const PartialRealization & partial, const Problem & problem,
    const SolverConfig & config, SearchStats & stats) -> std::vector<LatticePoint>;

/// Depth-first tree search for every (or the first) assignment satisfying the rule set.
auto solve(const Problem & problem, const SolverConfig & config) -> SolutionSet;

enum class ViolationKind {
    EdgeLength,
    NoEdgeTooClose,
    Collision,
};

auto to_string(ViolationKind kind) -> std::string_view;

struct Violation {
    ViolationKind kind;
    NodeId i;
    NodeId j;

    friend auto operator==(const Violation &, const Violation &) -> bool = default;
};

struct VerifyResult {
    bool valid = true;
    std::optional<Violation> violation;

    explicit operator bool() const noexcept { return valid; }
};

/// Direct evaluation of every constraint of the rule set. Edge lengths are checked
/// first (in edge-list order), then all pairs (i < j) lexicographically.
/// Throws MissingNode or AnchorMismatch if the assignment does not fit the problem.
auto verify(const Problem & problem, const Assignment & assignment, RuleSet rules) -> VerifyResult;

} // namespace udgl
