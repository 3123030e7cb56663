#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "udgl/solver.hpp"

namespace udgl {

/// A grid of experiment cells: every (radius_sq, anchors) pair crossed with
/// every (rules, ordering) pair, each run on `trials` seeded instances.
struct SweepSpec {
    std::int64_t grid_side = 100;
    std::size_t n_nodes = 100;
    std::vector<std::int64_t> radius_sq_values{625};
    std::vector<std::size_t> anchor_counts{3, 5, 10, 15, 20};
    std::vector<RuleSet> rule_sets{RuleSet::UnitDisk, RuleSet::Conventional};
    std::vector<Ordering> orderings{Ordering::Random, Ordering::MostConnected};
    std::size_t trials = 20;
    std::uint64_t base_seed = 1;
    std::uint64_t budget = kDefaultBudget;
    bool find_all = true;

    friend auto operator==(const SweepSpec &, const SweepSpec &) -> bool = default;
};

/// Throws ValidationError if the spec cannot be run.
void validate(const SweepSpec & spec);

/// `key value` lines mirroring the SweepSpec fields; lists are comma-separated.
auto parse_sweep_spec(std::string_view text) -> SweepSpec;

struct TrialRecord {
    std::uint64_t seed = 0;
    std::size_t n_unknowns = 0;
    SearchStats stats;
};

struct CellResult {
    std::int64_t grid_side = 0;
    std::size_t n_nodes = 0;
    std::size_t n_anchors = 0;
    std::int64_t radius_sq = 0;
    RuleSet rules = RuleSet::UnitDisk;
    Ordering ordering = Ordering::MostConnected;
    std::size_t trials = 0;
    std::size_t generation_failures = 0;

    /// Means over trials that were not budget-censored; NaN if there are none.
    double mean_instances_visited_per_unknown = 0;
    double mean_candidates_checked_per_unknown = 0;
    /// Over generated trials: share finished uncensored with exactly one solution.
    double solved_unique_fraction = 0;
    double censored_fraction = 0;
    double wall_time_seconds = 0;

    /// One entry per successfully generated trial, in trial order.
    std::vector<TrialRecord> records;
};

struct SweepOptions {
    unsigned threads = 1;
    /// Record solve wall time; when false wall_time_seconds stays 0 so output is reproducible.
    bool measure_time = false;
    /// One line per completed cell, if set.
    std::ostream * progress = nullptr;
};

/// Runs every cell. Trial t of a (radius_sq, anchors) pair uses the instance
/// generated with seed base_seed + t for every rule set and ordering, and the
/// same seed for random ordering, so rule sets are compared on identical trees.
auto run_sweep(const SweepSpec & spec, const SweepOptions & options = {}) -> std::vector<CellResult>;

inline constexpr std::string_view kCsvHeader =
    "grid,nodes,anchors,radius_sq,rules,ordering,trials,mean_visits_per_unknown,"
    "mean_checks_per_unknown,unique_fraction,censored_fraction,wall_s";

auto write_csv(const std::vector<CellResult> & results) -> std::string;

} // namespace udgl
