#include "udgl/solution_io.hpp"

#include "udgl/model_io.hpp"

namespace udgl {

auto write_solutions(const SolutionSet & set) -> std::string
{
    std::string out = "solutions " + std::to_string(set.solutions.size()) + "\n";
    for (std::size_t k = 0; k < set.solutions.size(); ++k) {
        out += "sol " + std::to_string(k) + "\n";
        const auto & solution = set.solutions[k];
        for (std::size_t id = 0; id < solution.size(); ++id)
            out += "node " + std::to_string(id) + " " + std::to_string(solution[id].x) + " " + std::to_string(solution[id].y) + "\n";
    }
    out += "stat instances_visited " + std::to_string(set.stats.instances_visited) + "\n";
    out += "stat candidates_checked " + std::to_string(set.stats.candidates_checked) + "\n";
    out += "stat max_depth " + std::to_string(set.stats.max_depth_reached) + "\n";
    out += "stat budget_exhausted " + std::string(set.stats.budget_exhausted ? "1" : "0") + "\n";
    return out;
}

auto parse_solutions(std::string_view text) -> ParsedSolutions
{
    std::vector<std::vector<std::string_view>> lines;
    std::vector<std::size_t> numbers;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        const auto raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (! raw.empty() && raw.front() == '#')
            continue;
        lines.push_back(split_fields(raw, line_no));
        numbers.push_back(line_no);
    }

    std::size_t cursor = 0;
    auto next = [&](std::string_view keyword, std::size_t n_fields) -> const std::vector<std::string_view> & {
        if (cursor >= lines.size())
            throw ParseError(line_no + 1, "unexpected end of file, expected '" + std::string(keyword) + "'");
        const auto & f = lines[cursor];
        if (f.front() != keyword || f.size() != n_fields)
            throw ParseError(numbers[cursor], "expected '" + std::string(keyword) + "' with " + std::to_string(n_fields - 1) + " value(s)");
        ++cursor;
        return f;
    };
    auto number = [&](std::string_view field) { return parse_integer(field, numbers[cursor - 1]); };

    ParsedSolutions parsed;
    const auto count = number(next("solutions", 2)[1]);
    if (count < 0)
        throw ParseError(numbers[0], "solution count must be non-negative");

    std::optional<std::size_t> n_nodes;
    for (std::int64_t k = 0; k < count; ++k) {
        if (number(next("sol", 2)[1]) != k)
            throw ParseError(numbers[cursor - 1], "solutions must be numbered from 0");
        Assignment solution;
        while (cursor < lines.size() && lines[cursor].front() == "node") {
            const auto & f = next("node", 4);
            if (number(f[1]) != static_cast<std::int64_t>(solution.size()))
                throw ParseError(numbers[cursor - 1], "node ids must be listed densely from 0");
            try {
                solution.emplace_back(number(f[2]), number(f[3]));
            }
            catch (const ModelSizeError & e) {
                throw ParseError(numbers[cursor - 1], e.what());
            }
        }
        if (n_nodes && *n_nodes != solution.size())
            throw ParseError(numbers[cursor - 1], "solutions list different node counts");
        n_nodes = solution.size();
        parsed.solutions.push_back(std::move(solution));
    }
    parsed.stats.solutions_found = parsed.solutions.size();

    auto stat = [&](std::string_view name) {
        const auto & f = next("stat", 3);
        if (f[1] != name)
            throw ParseError(numbers[cursor - 1], "expected stat '" + std::string(name) + "'");
        const auto v = number(f[2]);
        if (v < 0)
            throw ParseError(numbers[cursor - 1], "stat values must be non-negative");
        return v;
    };
    parsed.stats.instances_visited = static_cast<std::uint64_t>(stat("instances_visited"));
    parsed.stats.candidates_checked = static_cast<std::uint64_t>(stat("candidates_checked"));
    parsed.stats.max_depth_reached = static_cast<std::size_t>(stat("max_depth"));
    const auto exhausted = stat("budget_exhausted");
    if (exhausted > 1)
        throw ParseError(numbers[cursor - 1], "budget_exhausted must be 0 or 1");
    parsed.stats.budget_exhausted = exhausted == 1;

    if (cursor != lines.size())
        throw ParseError(numbers[cursor], "trailing content after stats");
    return parsed;
}

} // namespace udgl
