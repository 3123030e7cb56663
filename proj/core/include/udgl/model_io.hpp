#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "udgl/model.hpp"

namespace udgl {

/// Line-based `udgl 1` text format. A file whose unknown nodes all carry
/// coordinates (and which has a grid line) is an Instance; one whose unknowns
/// carry none is a Problem. Comment lines starting with '#' are skipped.
using ModelFile = std::variant<Instance, Problem>;

auto parse_file(std::string_view text) -> ModelFile;

/// Canonical encoding; parse_file(write_file(x)) == x.
auto write_file(const Instance & inst) -> std::string;
auto write_file(const Problem & problem) -> std::string;
auto write_file(const ModelFile & file) -> std::string;

auto read_text_file(const std::string & path) -> std::string;
void write_text_file(const std::string & path, std::string_view content);

/// Splits on single spaces; empty fields (double or edge spaces) are a ParseError.
auto split_fields(std::string_view line, std::size_t line_no) -> std::vector<std::string_view>;

/// Strict decimal integer (optional leading '-'); anything else is a ParseError.
auto parse_integer(std::string_view field, std::size_t line_no) -> std::int64_t;

} // namespace udgl
