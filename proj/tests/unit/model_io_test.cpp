#include <gtest/gtest.h>

#include "udgl/model.hpp"
#include "udgl/model_io.hpp"

using namespace udgl;

namespace {

const std::string kSmall =
    "udgl 1\n"
    "grid 10\n"
    "radius_sq 25\n"
    "nodes 4\n"
    "node 0 anchor 0 0\n"
    "node 1 anchor 5 0\n"
    "node 2 anchor 0 5\n"
    "node 3 unknown 3 4\n"
    "edges 5\n"
    "edge 0 1 25\n"
    "edge 0 2 25\n"
    "edge 0 3 25\n"
    "edge 1 3 20\n"
    "edge 2 3 10\n";

auto parse_error_line(const std::string & text) -> std::size_t
{
    try {
        parse_file(text);
    }
    catch (const ParseError & e) {
        return e.line();
    }
    ADD_FAILURE() << "expected a parse error";
    return 0;
}

} // namespace

TEST(ModelIo, ParsesGroundTruth)
{
    const auto file = parse_file(kSmall);
    ASSERT_TRUE(std::holds_alternative<Instance>(file));
    const auto & inst = std::get<Instance>(file);
    EXPECT_EQ(inst.n_nodes(), 4u);
    EXPECT_EQ(inst.n_anchors(), 3u);
    EXPECT_EQ(inst.positions[3], LatticePoint(3, 4));
    EXPECT_EQ(write_file(inst), kSmall);
}

TEST(ModelIo, ProblemFilesOmitUnknownCoordinatesAndOptionalGrid)
{
    const auto inst = std::get<Instance>(parse_file(kSmall));
    const auto text = write_file(strip_instance(inst, false));
    EXPECT_EQ(text.find("grid"), std::string::npos);
    EXPECT_NE(text.find("node 3 unknown\n"), std::string::npos);
    const auto file = parse_file(text);
    ASSERT_TRUE(std::holds_alternative<Problem>(file));
    EXPECT_EQ(std::get<Problem>(file), strip_instance(inst, false));

    const auto bounded = parse_file(write_file(strip_instance(inst, true)));
    ASSERT_TRUE(std::holds_alternative<Problem>(bounded));
    EXPECT_EQ(std::get<Problem>(bounded).grid_side, 10);
}

TEST(ModelIo, CommentsAreIgnoredAndNeverWritten)
{
    std::string commented = "# generated by hand\n" + kSmall;
    commented.insert(commented.find("edges"), "# edge list follows\n");
    const auto file = parse_file(commented);
    EXPECT_EQ(write_file(file), kSmall);
}

TEST(ModelIo, RoundTripOnRandomInstances)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = generate_instance(20 + static_cast<std::int64_t>(seed % 30), (20 + static_cast<std::int64_t>(seed % 30)) * (20 + static_cast<std::int64_t>(seed % 30)) / 5 + static_cast<std::int64_t>(seed % 37), 10 + seed % 20, 3 + seed % 4, seed);
        const auto text = write_file(inst);
        const auto back = parse_file(text);
        ASSERT_EQ(std::get<Instance>(back), inst);
        ASSERT_EQ(write_file(back), text);

        const auto problem = strip_instance(inst, seed % 2 == 0);
        ASSERT_EQ(std::get<Problem>(parse_file(write_file(problem))), problem);
    }
}

TEST(ModelIo, RejectsEdgeLongerThanRadius)
{
    const std::string text =
        "udgl 1\nradius_sq 625\nnodes 4\n"
        "node 0 anchor 0 0\nnode 1 anchor 20 0\nnode 2 anchor 0 20\nnode 3 unknown\n"
        "edges 1\nedge 0 1 700\n";
    EXPECT_EQ(parse_error_line(text), 9u);
}

TEST(ModelIo, RejectsDuplicatePositions)
{
    std::string text = kSmall;
    text.replace(text.find("node 2 anchor 0 5"), 17, "node 2 anchor 5 0");
    EXPECT_EQ(parse_error_line(text), 7u);
}

TEST(ModelIo, RejectsEdgeInconsistentWithPositions)
{
    std::string text = kSmall;
    text.replace(text.find("edge 2 3 10"), 11, "edge 2 3 11");
    EXPECT_EQ(parse_error_line(text), 14u);
}

TEST(ModelIo, RejectsMalformedLines)
{
    EXPECT_EQ(parse_error_line("udgl 2\n"), 1u);
    EXPECT_EQ(parse_error_line(""), 1u);

    std::string spaced = kSmall;
    spaced.replace(spaced.find("nodes 4"), 7, "nodes  4");
    EXPECT_EQ(parse_error_line(spaced), 4u);

    std::string trailing = kSmall;
    trailing.replace(trailing.find("grid 10"), 7, "grid 10 ");
    EXPECT_EQ(parse_error_line(trailing), 2u);

    std::string unordered = kSmall;
    unordered.replace(unordered.find("edge 0 1 25\nedge 0 2 25"), 23, "edge 0 2 25\nedge 0 1 25");
    EXPECT_EQ(parse_error_line(unordered), 11u);

    std::string short_edges = kSmall;
    short_edges.replace(short_edges.find("edges 5"), 7, "edges 6");
    EXPECT_EQ(parse_error_line(short_edges), 15u);

    std::string missing_edge = kSmall;
    missing_edge.replace(missing_edge.find("edges 5"), 7, "edges 4");
    EXPECT_GT(parse_error_line(missing_edge), 0u);
}

TEST(ModelIo, RejectsMixedUnknownCoordinates)
{
    const std::string text =
        "udgl 1\ngrid 10\nradius_sq 25\nnodes 5\n"
        "node 0 anchor 0 0\nnode 1 anchor 5 0\nnode 2 anchor 0 5\nnode 3 unknown 3 4\nnode 4 unknown\n"
        "edges 0\n";
    EXPECT_EQ(parse_error_line(text), 9u);
}

TEST(ModelIo, GroundTruthMustListEveryEdgeWithinRadius)
{
    std::string text = kSmall;
    text.replace(text.find("edges 5\nedge 0 1 25\n"), 20, "edges 4\n");
    EXPECT_THROW(parse_file(text), ParseError);
}
