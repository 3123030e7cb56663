#include "udgl/model_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <vector>

namespace udgl {

namespace {

    struct Line {
        std::size_t number;
        std::vector<std::string_view> fields;
    };

    /// Yields non-comment lines with their 1-based line numbers.
    class LineReader {
    public:
        explicit LineReader(std::string_view text) : text_(text) {}

        auto next() -> std::optional<Line>
        {
            while (pos_ < text_.size()) {
                auto end = text_.find('\n', pos_);
                if (end == std::string_view::npos)
                    end = text_.size();
                const auto raw = text_.substr(pos_, end - pos_);
                pos_ = end + 1;
                ++line_no_;
                if (! raw.empty() && raw.front() == '#')
                    continue;
                return Line{line_no_, split_fields(raw, line_no_)};
            }
            return std::nullopt;
        }

        auto expect(std::string_view what) -> Line
        {
            auto line = next();
            if (! line)
                throw ParseError(line_no_ + 1, "unexpected end of file, expected " + std::string(what));
            return *line;
        }

        auto line_no() const noexcept -> std::size_t { return line_no_; }

    private:
        std::string_view text_;
        std::size_t pos_ = 0;
        std::size_t line_no_ = 0;
    };

    void expect_shape(const Line & line, std::string_view keyword, std::size_t n_fields)
    {
        if (line.fields.front() != keyword)
            throw ParseError(line.number, "expected '" + std::string(keyword) + "', found '" + std::string(line.fields.front()) + "'");
        if (line.fields.size() != n_fields)
            throw ParseError(line.number, "'" + std::string(keyword) + "' takes " + std::to_string(n_fields - 1) + " value(s)");
    }

    auto positive(std::int64_t v, const Line & line, std::string_view what) -> std::int64_t
    {
        if (v < 1)
            throw ParseError(line.number, std::string(what) + " must be positive");
        return v;
    }

    auto make_point(std::int64_t x, std::int64_t y, const Line & line) -> LatticePoint
    {
        try {
            return LatticePoint(x, y);
        }
        catch (const ModelSizeError & e) {
            throw ParseError(line.number, e.what());
        }
    }

    struct NodeRecord {
        bool anchor = false;
        std::optional<LatticePoint> position;
    };

    void append_node(std::string & out, NodeId id, bool anchor, const LatticePoint * p)
    {
        out += "node ";
        out += std::to_string(id);
        out += anchor ? " anchor" : " unknown";
        if (p) {
            out += ' ';
            out += std::to_string(p->x);
            out += ' ';
            out += std::to_string(p->y);
        }
        out += '\n';
    }

    void append_edges(std::string & out, const std::vector<Edge> & edges)
    {
        out += "edges " + std::to_string(edges.size()) + "\n";
        for (const auto & e : edges)
            out += "edge " + std::to_string(e.i) + " " + std::to_string(e.j) + " " + std::to_string(e.d2.value) + "\n";
    }

} // namespace

auto split_fields(std::string_view line, std::size_t line_no) -> std::vector<std::string_view>
{
    if (line.empty())
        throw ParseError(line_no, "empty line");
    if (line.find('\r') != std::string_view::npos || line.find('\t') != std::string_view::npos)
        throw ParseError(line_no, "only single spaces may separate fields");

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto space = line.find(' ', start);
        const auto field = line.substr(start, space == std::string_view::npos ? std::string_view::npos : space - start);
        if (field.empty())
            throw ParseError(line_no, "empty field (leading, trailing or repeated space)");
        fields.push_back(field);
        if (space == std::string_view::npos)
            break;
        start = space + 1;
    }
    return fields;
}

auto parse_integer(std::string_view field, std::size_t line_no) -> std::int64_t
{
    std::int64_t value = 0;
    const char * first = field.data();
    const char * last = field.data() + field.size();
    if (field.size() > 1 && field[0] == '0')
        throw ParseError(line_no, "leading zero in integer '" + std::string(field) + "'");
    if (field.size() > 2 && field[0] == '-' && field[1] == '0')
        throw ParseError(line_no, "leading zero in integer '" + std::string(field) + "'");
    if (field == "-0")
        throw ParseError(line_no, "negative zero");
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line_no, "invalid integer '" + std::string(field) + "'");
    return value;
}

auto parse_file(std::string_view text) -> ModelFile
{
    LineReader reader(text);

    const auto header = reader.expect("header");
    if (header.fields.size() != 2 || header.fields[0] != "udgl" || header.fields[1] != "1")
        throw ParseError(header.number, "expected header 'udgl 1'");

    auto line = reader.expect("grid or radius_sq");
    std::optional<std::int64_t> grid_side;
    if (line.fields.front() == "grid") {
        expect_shape(line, "grid", 2);
        grid_side = positive(parse_integer(line.fields[1], line.number), line, "grid");
        if (*grid_side > kMaxCoordinate)
            throw ParseError(line.number, "grid side out of range");
        line = reader.expect("radius_sq");
    }

    expect_shape(line, "radius_sq", 2);
    const SquaredDistance radius_sq(positive(parse_integer(line.fields[1], line.number), line, "radius_sq"));

    line = reader.expect("nodes");
    expect_shape(line, "nodes", 2);
    const auto n_nodes = positive(parse_integer(line.fields[1], line.number), line, "nodes");
    if (n_nodes > 10'000'000)
        throw ParseError(line.number, "node count too large");

    std::vector<NodeRecord> nodes(static_cast<std::size_t>(n_nodes));
    std::optional<bool> unknowns_have_positions;
    for (std::int64_t id = 0; id < n_nodes; ++id) {
        line = reader.expect("node");
        const auto & f = line.fields;
        if (f.front() != "node")
            throw ParseError(line.number, "expected 'node'");
        if (f.size() < 3)
            throw ParseError(line.number, "node line too short");
        if (parse_integer(f[1], line.number) != id)
            throw ParseError(line.number, "node ids must be listed densely from 0, expected " + std::to_string(id));

        auto & rec = nodes[static_cast<std::size_t>(id)];
        if (f[2] == "anchor") {
            if (f.size() != 5)
                throw ParseError(line.number, "anchor node needs coordinates");
            rec.anchor = true;
            rec.position = make_point(parse_integer(f[3], line.number), parse_integer(f[4], line.number), line);
        }
        else if (f[2] == "unknown") {
            if (f.size() != 3 && f.size() != 5)
                throw ParseError(line.number, "unknown node takes zero or two coordinates");
            const bool has_position = f.size() == 5;
            if (unknowns_have_positions && *unknowns_have_positions != has_position)
                throw ParseError(line.number, "either every unknown node carries coordinates or none does");
            unknowns_have_positions = has_position;
            if (has_position)
                rec.position = make_point(parse_integer(f[3], line.number), parse_integer(f[4], line.number), line);
        }
        else
            throw ParseError(line.number, "node kind must be 'anchor' or 'unknown'");

        if (rec.position) {
            for (std::int64_t other = 0; other < id; ++other)
                if (nodes[static_cast<std::size_t>(other)].position == rec.position)
                    throw ParseError(line.number, "node " + std::to_string(id) + " shares its position with node " + std::to_string(other));
            if (grid_side && (rec.position->x < 0 || rec.position->y < 0 || rec.position->x >= *grid_side || rec.position->y >= *grid_side))
                throw ParseError(line.number, "node lies outside the grid");
        }
    }

    line = reader.expect("edges");
    expect_shape(line, "edges", 2);
    const auto n_edges = parse_integer(line.fields[1], line.number);
    if (n_edges < 0)
        throw ParseError(line.number, "edge count must be non-negative");

    std::vector<Edge> edges;
    for (std::int64_t k = 0; k < n_edges; ++k) {
        line = reader.expect("edge");
        expect_shape(line, "edge", 4);
        const auto i = parse_integer(line.fields[1], line.number);
        const auto j = parse_integer(line.fields[2], line.number);
        const auto d2 = parse_integer(line.fields[3], line.number);
        if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes)
            throw ParseError(line.number, "edge endpoint out of range");
        if (i >= j)
            throw ParseError(line.number, "edge endpoints must satisfy i < j");
        if (! edges.empty() && std::pair<std::int64_t, std::int64_t>{edges.back().i, edges.back().j} >= std::pair{i, j})
            throw ParseError(line.number, "edges must be strictly ascending by (i, j)");
        if (d2 < 1)
            throw ParseError(line.number, "edge squared distance must be at least 1");
        if (d2 > radius_sq.value)
            throw ParseError(line.number, "edge squared distance " + std::to_string(d2) + " exceeds radius_sq " + std::to_string(radius_sq.value));
        const auto & a = nodes[static_cast<std::size_t>(i)].position;
        const auto & b = nodes[static_cast<std::size_t>(j)].position;
        if (a && b && dist2(*a, *b).value != d2)
            throw ParseError(line.number, "edge squared distance disagrees with node positions");
        edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(j), SquaredDistance(d2)});
    }

    if (auto extra = reader.next())
        throw ParseError(extra->number, "trailing content after edge list");

    const bool is_instance = unknowns_have_positions.value_or(false);
    try {
        if (is_instance) {
            if (! grid_side)
                throw ParseError(1, "ground-truth file requires a grid line");
            Instance inst;
            inst.grid_side = *grid_side;
            inst.radius_sq = radius_sq;
            for (const auto & rec : nodes) {
                inst.positions.push_back(*rec.position);
                inst.anchor_flags.push_back(rec.anchor);
            }
            inst.edges = std::move(edges);
            validate(inst);
            return inst;
        }

        Problem problem;
        problem.n_nodes = static_cast<std::size_t>(n_nodes);
        problem.radius_sq = radius_sq;
        problem.grid_side = grid_side;
        for (std::size_t id = 0; id < nodes.size(); ++id)
            if (nodes[id].anchor)
                problem.anchors.emplace(static_cast<NodeId>(id), *nodes[id].position);
        problem.edges = std::move(edges);
        validate(problem);
        return problem;
    }
    catch (const ValidationError & e) {
        throw ParseError(reader.line_no(), e.what());
    }
}

auto write_file(const Instance & inst) -> std::string
{
    std::string out = "udgl 1\n";
    out += "grid " + std::to_string(inst.grid_side) + "\n";
    out += "radius_sq " + std::to_string(inst.radius_sq.value) + "\n";
    out += "nodes " + std::to_string(inst.n_nodes()) + "\n";
    for (std::size_t i = 0; i < inst.n_nodes(); ++i)
        append_node(out, static_cast<NodeId>(i), inst.anchor_flags[i], &inst.positions[i]);
    append_edges(out, inst.edges);
    return out;
}

auto write_file(const Problem & problem) -> std::string
{
    std::string out = "udgl 1\n";
    if (problem.grid_side)
        out += "grid " + std::to_string(*problem.grid_side) + "\n";
    out += "radius_sq " + std::to_string(problem.radius_sq.value) + "\n";
    out += "nodes " + std::to_string(problem.n_nodes) + "\n";
    for (std::size_t i = 0; i < problem.n_nodes; ++i) {
        const auto it = problem.anchors.find(static_cast<NodeId>(i));
        if (it != problem.anchors.end())
            append_node(out, static_cast<NodeId>(i), true, &it->second);
        else
            append_node(out, static_cast<NodeId>(i), false, nullptr);
    }
    append_edges(out, problem.edges);
    return out;
}

auto write_file(const ModelFile & file) -> std::string
{
    return std::visit([](const auto & value) { return write_file(value); }, file);
}

auto read_text_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error("cannot open '" + path + "' for reading");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text_file(const std::string & path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (! out)
        throw Error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (! out)
        throw Error("failed writing '" + path + "'");
}

} // namespace udgl
