#include "udgl/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "udgl/model.hpp"
#include "udgl/model_io.hpp"

namespace udgl {

namespace {

    auto format_number(double v) -> std::string
    {
        if (std::isnan(v))
            return "nan";
        // Fixed notation with six significant digits, never exponent form.
        int precision = 5;
        if (v != 0) {
            const int digits = static_cast<int>(std::floor(std::log10(std::fabs(v)))) + 1;
            precision = std::max(0, 6 - digits);
        }
        char buffer[512];
        std::snprintf(buffer, sizeof buffer, "%.*f", precision, v);
        return buffer;
    }

    template <typename T, typename Parse>
    auto parse_list(std::string_view text, std::size_t line_no, Parse parse) -> std::vector<T>
    {
        std::vector<T> values;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            if (item.empty())
                throw ParseError(line_no, "empty list item");
            values.push_back(parse(item));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return values;
    }

    auto non_negative(std::int64_t v, std::size_t line_no) -> std::uint64_t
    {
        if (v < 0)
            throw ParseError(line_no, "value must be non-negative");
        return static_cast<std::uint64_t>(v);
    }

    /// All trials of one (radius_sq, anchors) pair across the rule/ordering cells.
    struct Group {
        std::int64_t radius_sq;
        std::size_t n_anchors;
    };

    struct TrialOutcome {
        bool generated = false;
        std::vector<SearchStats> stats;       // per (rules, ordering) combination
        std::vector<double> seconds;
        std::size_t n_unknowns = 0;
    };

    auto run_trial(const SweepSpec & spec, const Group & group, std::size_t t, bool measure_time) -> TrialOutcome
    {
        TrialOutcome outcome;
        const std::uint64_t seed = spec.base_seed + t;
        Instance inst;
        try {
            inst = generate_instance(spec.grid_side, group.radius_sq, spec.n_nodes, group.n_anchors, seed);
        }
        catch (const GenerationFailure &) {
            return outcome;
        }
        outcome.generated = true;
        outcome.n_unknowns = inst.n_nodes() - inst.n_anchors();
        const auto problem = strip_instance(inst, false);

        for (auto rules : spec.rule_sets)
            for (auto ordering : spec.orderings) {
                SolverConfig config;
                config.rules = rules;
                config.ordering = ordering;
                config.seed = seed;
                config.find_all = spec.find_all;
                config.budget = spec.budget;
                config.record_solutions = false;

                const auto start = std::chrono::steady_clock::now();
                const auto result = solve(problem, config);
                const auto stop = std::chrono::steady_clock::now();
                outcome.stats.push_back(result.stats);
                outcome.seconds.push_back(measure_time ? std::chrono::duration<double>(stop - start).count() : 0.0);
            }
        return outcome;
    }

} // namespace

void validate(const SweepSpec & spec)
{
    if (spec.trials < 1)
        throw ValidationError("trials must be at least 1");
    if (spec.budget < 1)
        throw ValidationError("budget must be at least 1");
    if (spec.grid_side < 1)
        throw ValidationError("grid_side must be positive");
    if (spec.n_nodes < 4)
        throw ValidationError("n_nodes must be at least 4");
    if (spec.radius_sq_values.empty() || spec.anchor_counts.empty() || spec.rule_sets.empty() || spec.orderings.empty())
        throw ValidationError("every sweep axis needs at least one value");
    for (auto r2 : spec.radius_sq_values)
        if (r2 < 1)
            throw ValidationError("radius_sq values must be positive");
    for (auto m : spec.anchor_counts)
        if (m < 3 || m >= spec.n_nodes)
            throw ValidationError("anchor counts must satisfy 3 <= M < N");
}

auto parse_sweep_spec(std::string_view text) -> SweepSpec
{
    SweepSpec spec;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        const auto raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (raw.empty() || raw.front() == '#')
            continue;

        const auto fields = split_fields(raw, line_no);
        if (fields.size() != 2)
            throw ParseError(line_no, "expected 'key value'");
        const auto key = fields[0];
        const auto value = fields[1];
        auto integer = [&](std::string_view s) { return parse_integer(s, line_no); };

        if (key == "grid_side")
            spec.grid_side = integer(value);
        else if (key == "n_nodes")
            spec.n_nodes = non_negative(integer(value), line_no);
        else if (key == "radius_sq_values")
            spec.radius_sq_values = parse_list<std::int64_t>(value, line_no, integer);
        else if (key == "anchor_counts")
            spec.anchor_counts = parse_list<std::size_t>(value, line_no, [&](std::string_view s) { return non_negative(integer(s), line_no); });
        else if (key == "rule_sets")
            spec.rule_sets = parse_list<RuleSet>(value, line_no, [&](std::string_view s) {
                const auto r = parse_rule_set(s);
                if (! r)
                    throw ParseError(line_no, "unknown rule set '" + std::string(s) + "'");
                return *r;
            });
        else if (key == "orderings")
            spec.orderings = parse_list<Ordering>(value, line_no, [&](std::string_view s) {
                const auto o = parse_ordering(s);
                if (! o)
                    throw ParseError(line_no, "unknown ordering '" + std::string(s) + "'");
                return *o;
            });
        else if (key == "trials")
            spec.trials = non_negative(integer(value), line_no);
        else if (key == "base_seed")
            spec.base_seed = non_negative(integer(value), line_no);
        else if (key == "budget")
            spec.budget = non_negative(integer(value), line_no);
        else if (key == "find_all") {
            if (value == "true" || value == "1")
                spec.find_all = true;
            else if (value == "false" || value == "0")
                spec.find_all = false;
            else
                throw ParseError(line_no, "find_all must be true/false");
        }
        else
            throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }

    try {
        validate(spec);
    }
    catch (const ValidationError & e) {
        throw ParseError(line_no, e.what());
    }
    return spec;
}

auto run_sweep(const SweepSpec & spec, const SweepOptions & options) -> std::vector<CellResult>
{
    validate(spec);

    std::vector<std::pair<RuleSet, Ordering>> combos;
    for (auto rules : spec.rule_sets)
        for (auto ordering : spec.orderings)
            combos.emplace_back(rules, ordering);

    std::vector<CellResult> results;
    for (auto radius_sq : spec.radius_sq_values)
        for (auto n_anchors : spec.anchor_counts) {
            const Group group{radius_sq, n_anchors};

            std::vector<TrialOutcome> outcomes(spec.trials);
            std::atomic<std::size_t> next{0};
            std::vector<std::exception_ptr> errors(spec.trials);
            auto worker = [&] {
                for (auto t = next++; t < spec.trials; t = next++) {
                    try {
                        outcomes[t] = run_trial(spec, group, t, options.measure_time);
                    }
                    catch (...) {
                        errors[t] = std::current_exception();
                    }
                }
            };
            const unsigned n_threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(spec.trials)));
            if (n_threads == 1)
                worker();
            else {
                std::vector<std::jthread> pool;
                for (unsigned k = 0; k < n_threads; ++k)
                    pool.emplace_back(worker);
            }
            for (const auto & error : errors)
                if (error)
                    std::rethrow_exception(error);

            for (std::size_t c = 0; c < combos.size(); ++c) {
                CellResult cell;
                cell.grid_side = spec.grid_side;
                cell.n_nodes = spec.n_nodes;
                cell.n_anchors = n_anchors;
                cell.radius_sq = radius_sq;
                cell.rules = combos[c].first;
                cell.ordering = combos[c].second;
                cell.trials = spec.trials;

                double visits = 0, checks = 0;
                std::size_t kept = 0, censored = 0, unique = 0;
                for (std::size_t t = 0; t < spec.trials; ++t) {
                    const auto & outcome = outcomes[t];
                    if (! outcome.generated) {
                        ++cell.generation_failures;
                        continue;
                    }
                    const auto & stats = outcome.stats[c];
                    cell.records.push_back(TrialRecord{spec.base_seed + t, outcome.n_unknowns, stats});
                    cell.wall_time_seconds += outcome.seconds[c];
                    if (stats.budget_exhausted) {
                        ++censored;
                        continue;
                    }
                    ++kept;
                    visits += static_cast<double>(stats.instances_visited) / static_cast<double>(outcome.n_unknowns);
                    checks += static_cast<double>(stats.candidates_checked) / static_cast<double>(outcome.n_unknowns);
                    if (stats.solutions_found == 1)
                        ++unique;
                }

                const double nan = std::numeric_limits<double>::quiet_NaN();
                const auto generated = static_cast<double>(cell.records.size());
                cell.mean_instances_visited_per_unknown = kept ? visits / static_cast<double>(kept) : nan;
                cell.mean_candidates_checked_per_unknown = kept ? checks / static_cast<double>(kept) : nan;
                cell.solved_unique_fraction = generated > 0 ? static_cast<double>(unique) / generated : nan;
                cell.censored_fraction = generated > 0 ? static_cast<double>(censored) / generated : nan;

                if (options.progress) {
                    const double r_over_c = std::sqrt(static_cast<double>(radius_sq)) / static_cast<double>(spec.grid_side);
                    *options.progress << "cell r2=" << radius_sq << " (r/C=" << format_number(r_over_c) << ") anchors=" << n_anchors
                                      << " rules=" << to_string(cell.rules) << " ordering=" << to_string(cell.ordering)
                                      << " visits/unknown=" << format_number(cell.mean_instances_visited_per_unknown)
                                      << " censored=" << format_number(cell.censored_fraction)
                                      << " generation_failures=" << cell.generation_failures << '\n';
                    options.progress->flush();
                }
                results.push_back(std::move(cell));
            }
        }
    return results;
}

auto write_csv(const std::vector<CellResult> & results) -> std::string
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto & cell : results) {
        out += std::to_string(cell.grid_side) + ',' + std::to_string(cell.n_nodes) + ',' + std::to_string(cell.n_anchors) + ','
            + std::to_string(cell.radius_sq) + ',' + std::string(to_string(cell.rules)) + ',' + std::string(to_string(cell.ordering)) + ','
            + std::to_string(cell.trials) + ',' + format_number(cell.mean_instances_visited_per_unknown) + ','
            + format_number(cell.mean_candidates_checked_per_unknown) + ',' + format_number(cell.solved_unique_fraction) + ','
            + format_number(cell.censored_fraction) + ',' + format_number(cell.wall_time_seconds) + '\n';
    }
    return out;
}

} // namespace udgl
