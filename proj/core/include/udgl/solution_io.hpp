#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "udgl/solver.hpp"

namespace udgl {

/// `solutions <k>`, then `sol <index>` blocks of `node <id> <x> <y>` lines,
/// then the four `stat` lines.
auto write_solutions(const SolutionSet & set) -> std::string;

struct ParsedSolutions {
    std::vector<Assignment> solutions;
    SearchStats stats;
};

/// Inverse of write_solutions. Only the stats present in the text format are
/// filled in; solutions_found is set to the number of solutions.
auto parse_solutions(std::string_view text) -> ParsedSolutions;

} // namespace udgl
