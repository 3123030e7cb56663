// udgl: generate, solve, verify and benchmark integer unit disk graph localization.
//
// Exit codes: 0 success, 1 usage error, 2 parse or validation error,
// 3 budget exhausted without a solution, 4 no solution exists.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "udgl/bench.hpp"
#include "udgl/model.hpp"
#include "udgl/model_io.hpp"
#include "udgl/oracle.hpp"
#include "udgl/solution_io.hpp"
#include "udgl/solver.hpp"

using namespace udgl;

namespace {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kInvalid = 2,
    kBudgetExhausted = 3,
    kNoSolution = 4,
};

/// A usage problem detected after CLI11 has finished parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string & text, const std::string & path)
{
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

auto load_problem(const std::string & path) -> Problem
{
    const auto file = parse_file(read_text_file(path));
    if (const auto * inst = std::get_if<Instance>(&file))
        return strip_instance(*inst, true);
    return std::get<Problem>(file);
}


struct GenerateArgs {
    std::int64_t grid = 0;
    std::int64_t radius_sq = 0;
    std::size_t nodes = 0;
    std::size_t anchors = 0;
    std::uint64_t seed = 0;
    int max_attempts = 1000;
    std::string output;
    bool problem = false;
    bool keep_bounds = false;
};

auto run_generate(const GenerateArgs & args) -> int
{
    if (args.keep_bounds && ! args.problem)
        throw UsageError("--keep-bounds only applies together with --problem");
    const auto inst = generate_instance(args.grid, args.radius_sq, args.nodes, args.anchors, args.seed, GeneratorOptions{args.max_attempts});
    if (args.problem)
        write_text_file(args.output, write_file(strip_instance(inst, args.keep_bounds)));
    else
        write_text_file(args.output, write_file(inst));
    return kSuccess;
}

struct SolveArgs {
    std::string input;
    std::string rules = "unit-disk";
    std::string ordering = "most-connected";
    std::uint64_t seed = 0;
    bool all = false;
    bool first = false;
    std::uint64_t budget = kDefaultBudget;
    bool enforce_bounds = false;
    std::string output;
};

auto run_solve(const SolveArgs & args) -> int
{
    SolverConfig config;
    config.rules = *parse_rule_set(args.rules);
    config.ordering = *parse_ordering(args.ordering);
    config.seed = args.seed;
    config.find_all = ! args.first;
    config.budget = args.budget;
    config.enforce_bounds = args.enforce_bounds;

    const auto result = solve(load_problem(args.input), config);
    emit(write_solutions(result), args.output);

    if (result.stats.solutions_found == 0) {
        if (result.stats.budget_exhausted) {
            std::cerr << "udgl: search budget exhausted before any solution was found\n";
            return kBudgetExhausted;
        }
        std::cerr << "udgl: no realization satisfies the constraints\n";
        return kNoSolution;
    }
    return kSuccess;
}

struct VerifyArgs {
    std::string problem_file;
    std::string solution_file;
    std::string rules = "unit-disk";
};

auto run_verify(const VerifyArgs & args) -> int
{
    const auto problem = load_problem(args.problem_file);
    const auto text = read_text_file(args.solution_file);

    std::vector<Assignment> candidates;
    if (text.starts_with("udgl "))
        candidates.push_back(std::get<Instance>(parse_file(text)).positions);
    else
        candidates = parse_solutions(text).solutions;

    if (candidates.empty()) {
        std::cerr << "udgl: solution file contains no solutions\n";
        return kNoSolution;
    }
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const auto outcome = verify(problem, candidates[k], *parse_rule_set(args.rules));
        if (! outcome) {
            const auto & v = *outcome.violation;
            std::cout << "invalid solution " << k << ": " << to_string(v.kind) << " " << v.i << " " << v.j << "\n";
            return kInvalid;
        }
    }
    std::cout << "valid " << candidates.size() << "\n";
    return kSuccess;
}

struct BenchArgs {
    std::string spec_file;
    std::string output;
    unsigned threads = 1;
    bool timing = false;
};

auto run_bench(const BenchArgs & args) -> int
{
    const auto spec = parse_sweep_spec(read_text_file(args.spec_file));
    SweepOptions options;
    options.threads = args.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : args.threads;
    options.measure_time = args.timing;
    options.progress = &std::cerr;
    write_text_file(args.output, write_csv(run_sweep(spec, options)));
    return kSuccess;
}

struct FixtureArgs {
    std::string which;
    std::int64_t max_grid = 10;
    std::string output;
};

auto run_fixture(const FixtureArgs & args) -> int
{
    const auto inst = args.which == "f1" ? find_fixture_f1(args.max_grid) : find_fixture_f2(args.max_grid);
    emit(write_file(inst), args.output);
    return kSuccess;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Integer unit disk graph network localization by depth-first tree search"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto * generate = app.add_subcommand("generate", "Generate a random connected instance");
    generate->add_option("--grid", gen.grid, "Grid side C")->required();
    generate->add_option("--radius-sq", gen.radius_sq, "Squared radius r^2 (integer)")->required();
    generate->add_option("--nodes", gen.nodes, "Node count N")->required();
    generate->add_option("--anchors", gen.anchors, "Anchor count M")->required();
    generate->add_option("--seed", gen.seed, "Random seed")->required();
    generate->add_option("--max-attempts", gen.max_attempts, "Resampling attempts before giving up");
    generate->add_option("-o,--output", gen.output, "Output file")->required();
    generate->add_flag("--problem", gen.problem, "Write the solver input with unknown positions withheld");
    generate->add_flag("--keep-bounds", gen.keep_bounds, "Keep the grid line in a --problem file");

    SolveArgs sol;
    auto * solve_cmd = app.add_subcommand("solve", "Localize the unknown nodes of a problem or instance file");
    solve_cmd->add_option("file", sol.input, "Problem or instance file")->required();
    solve_cmd->add_option("--rules", sol.rules, "unit-disk or conventional")->check(CLI::IsMember({"unit-disk", "conventional"}));
    solve_cmd->add_option("--ordering", sol.ordering, "most-connected or random")->check(CLI::IsMember({"most-connected", "random"}));
    solve_cmd->add_option("--seed", sol.seed, "Seed for random ordering");
    auto * all_flag = solve_cmd->add_flag("--all", sol.all, "Enumerate every solution (default)");
    solve_cmd->add_flag("--first", sol.first, "Stop at the first solution")->excludes(all_flag);
    solve_cmd->add_option("--budget", sol.budget, "Maximum tree instances visited")->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--enforce-bounds", sol.enforce_bounds, "Confine placements to the grid");
    solve_cmd->add_option("-o,--output", sol.output, "Write solutions here instead of standard output");

    VerifyArgs ver;
    auto * verify_cmd = app.add_subcommand("verify", "Check solutions against a problem");
    verify_cmd->add_option("problem", ver.problem_file, "Problem or instance file")->required();
    verify_cmd->add_option("solution", ver.solution_file, "Solution file or ground-truth instance file")->required();
    verify_cmd->add_option("--rules", ver.rules, "unit-disk or conventional")->check(CLI::IsMember({"unit-disk", "conventional"}));

    BenchArgs ben;
    auto * bench_cmd = app.add_subcommand("bench", "Run a parameter sweep and write CSV");
    bench_cmd->add_option("--spec", ben.spec_file, "Sweep spec file (key value lines)")->required();
    bench_cmd->add_option("-o,--output", ben.output, "CSV output file")->required();
    bench_cmd->add_option("--threads", ben.threads, "Worker threads (0 = all cores)");
    bench_cmd->add_flag("--timing", ben.timing, "Record wall time (output is then not reproducible)");

    FixtureArgs fix;
    auto * fixture_cmd = app.add_subcommand("fixture", "Search for a small certified fixture instance");
    fixture_cmd->add_option("which", fix.which, "f1 or f2")->required()->check(CLI::IsMember({"f1", "f2"}));
    fixture_cmd->add_option("--max-grid", fix.max_grid, "Largest grid side to search");
    fixture_cmd->add_option("-o,--output", fix.output, "Output file (standard output if omitted)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*generate)
            return run_generate(gen);
        if (*solve_cmd)
            return run_solve(sol);
        if (*verify_cmd)
            return run_verify(ver);
        if (*bench_cmd)
            return run_bench(ben);
        if (*fixture_cmd)
            return run_fixture(fix);
    }
    catch (const UsageError & e) {
        std::cerr << "udgl: " << e.what() << "\n";
        return kUsage;
    }
    catch (const NotFound & e) {
        std::cerr << "udgl: " << e.what() << "\n";
        return kNoSolution;
    }
    catch (const Error & e) {
        std::cerr << "udgl: " << e.what() << "\n";
        return kInvalid;
    }
    catch (const std::bad_variant_access &) {
        std::cerr << "udgl: expected a ground-truth instance file\n";
        return kInvalid;
    }
    return kUsage;
}
