#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lbx/covers.hpp"
#include "lbx/graph.hpp"
#include "lbx/graph_io.hpp"
#include "test_support.hpp"

using namespace lbx;
using namespace lbx::testing;

TEST_CASE("build_graph: smallest proper colouring") {
    GraphSpec s;
    s.model = Model::EC;
    s.k = 1;
    s.nodes = {{0, std::nullopt}, {1, std::nullopt}};
    s.edges = {{0, 1, 1, false}};
    BuildResult r = build_graph(s);
    REQUIRE(r.ok());
    CHECK(r.graph->max_degree() == 1);
}

TEST_CASE("build_graph: two same-coloured loops at a node") {
    GraphSpec s;
    s.model = Model::EC;
    s.k = 1;
    s.nodes = {{0, std::nullopt}};
    s.edges = {{0, 0, 1, false}, {0, 0, 1, false}};
    BuildResult r = build_graph(s);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().kind == "ImproperColoring");
}

TEST_CASE("build_graph: PO same-coloured outgoing edges") {
    GraphSpec s;
    s.model = Model::PO;
    s.k = 2;
    s.nodes = {{0, std::nullopt}, {1, std::nullopt}, {2, std::nullopt}};
    s.edges = {{0, 1, 2, true}, {0, 2, 2, true}};
    BuildResult r = build_graph(s);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().kind == "ImproperColoring");
}

TEST_CASE("build_graph: duplicate identifiers / missing order") {
    GraphSpec s;
    s.model = Model::ID;
    s.k = 1;
    s.nodes = {{0, 7}, {1, 7}};
    BuildResult r = build_graph(s);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().kind == "DuplicateIdentifier");

    GraphSpec o;
    o.model = Model::OI;
    o.k = 1;
    o.nodes = {{0, std::nullopt}, {1, std::nullopt}};
    BuildResult r2 = build_graph(o);
    REQUIRE_FALSE(r2.ok());
    CHECK(r2.violations.front().kind == "MissingOrder");
}

TEST_CASE("degree: loop conventions") {
    // EC loop counts once.
    ColoredMultigraph ec = ec_graph(2, 1, {{0, 0, 1}, {0, 0, 2}});
    CHECK(ec.degree(0) == 2);

    // PO loop counts twice (head and tail).
    ColoredMultigraph po = po_graph(2, 2, {{0, 0, 1}, {1, 0, 2}});
    CHECK(po.degree(0) == 3);

    // Isolated node.
    GraphSpec s;
    s.model = Model::EC;
    s.k = 1;
    s.nodes = {{0, std::nullopt}};
    CHECK(must_build(s).degree(0) == 0);

    CHECK_THROWS_WITH_AS(ec.degree(9), doctest::Contains("UnknownNode"), Error);
}

TEST_CASE("loops_at") {
    ColoredMultigraph g = base_loops(3);
    CHECK(g.loops_at(0) == std::vector<Color>{1, 2, 3});

    ColoredMultigraph k2 = ec_graph(1, 2, {{0, 1, 1}});
    CHECK(k2.loops_at(0).empty());
    CHECK(k2.loops_at(1).empty());

    // Unfolding loop colour 2 gives two nodes with loops {1,3} each.
    EdgeId loop2 = -1;
    for (const EdgeRec& e : g.edges())
        if (e.color == 2) loop2 = e.eid;
    Unfolded u = unfold_loop(g, loop2);
    for (NodeId v : u.graph.nodes()) CHECK(u.graph.loops_at(v) == std::vector<Color>{1, 3});
}

TEST_CASE("is_tree_ignoring_loops") {
    CHECK(base_loops(4).is_tree_ignoring_loops());

    ColoredMultigraph cyc =
        ec_graph(2, 4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {0, 3, 2}});
    CHECK_FALSE(cyc.is_tree_ignoring_loops());

    ColoredMultigraph path = ec_graph(4, 3, {{0, 1, 1}, {1, 2, 2}, {0, 0, 3}, {2, 2, 3}});
    CHECK(path.is_tree_ignoring_loops());
}

TEST_CASE("encode/decode: round trip and determinism") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 25; ++i) {
        ColoredMultigraph g = random_ec_multigraph(rng, 2 + static_cast<int>(rng() % 7), 4,
                                                   static_cast<int>(rng() % 3), 40);
        std::string doc = encode_graph(g);
        ColoredMultigraph g2 = decode_graph(doc);
        CHECK(encode_graph(g2) == doc);       // stable under re-encode
        CHECK(validate(g2).empty());          // idempotent re-validation
        CHECK(g2.nodes() == g.nodes());
        CHECK(g2.edges().size() == g.edges().size());
    }
}

TEST_CASE("decode: edge referencing an absent node") {
    std::string doc = R"({"model":"EC","k":1,"nodes":[{"id":0}],
                          "edges":[{"u":0,"v":7,"color":1,"directed":false}]})";
    CHECK_THROWS_WITH_AS(decode_graph(doc), doctest::Contains("UnknownNode"), Error);
}

TEST_CASE("decode: the delta=3 base-case document") {
    std::string doc = encode_graph(base_loops(3));
    ColoredMultigraph g = decode_graph(doc);
    CHECK(g.degree(0) == 3);
}

TEST_CASE("labels survive relabeling and encoding") {
    GraphSpec s;
    s.model = Model::ID;
    s.k = 1;
    s.nodes = {{0, 10}, {1, 20}};
    s.edges = {{0, 1, 1, false}};
    ColoredMultigraph g = must_build(s);
    ColoredMultigraph g2 = g.relabeled(5, 3);
    CHECK(g2.label(5) == 10);
    CHECK(g2.label(6) == 20);
    ColoredMultigraph g3 = decode_graph(encode_graph(g));
    CHECK(g3.label(0) == 10);
}
