#include "doctest.h"
#include "fuzzybisim/graph.hpp"
#include "helpers.hpp"

using namespace fuzzybisim;
using testing_helpers::sample_graph;
using testing_helpers::vertex_indices;

TEST_CASE("sample graph parses with inferred alphabets") {
  FuzzyGraph g = sample_graph();
  CHECK(g.vertex_count() == 7);
  CHECK(g.edge_count() == 9);
  CHECK(g.label_count() == 1);
  CHECK(g.label_name(0) == "r");
  CHECK(g.symbol_count() == 0);
  CHECK(g.distinct_degree_count() == 3);  // 0.6, 0.7, 1
  CHECK(g.vertex_id(0) == "a");
  CHECK(g.find_vertex("g") == 6);
  CHECK(g.find_vertex("z") == std::nullopt);
  CHECK(g.vertex_label(*g.find_vertex("a")).empty());
}

TEST_CASE("comments, blank lines and stray whitespace are ignored") {
  FuzzyGraph g = FuzzyGraph::parse(
      "# leading comment\n"
      "\n"
      "  v   x  \n"
      "v y # trailing comment\n"
      "  e x  s  y  0.25  \n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.edges()[0].degree == Degree::parse("0.25"));
  CHECK(g.label_name(0) == "s");
}

TEST_CASE("vertex labels normalize to sorted positive entries") {
  FuzzyGraph g = FuzzyGraph::parse("v a q:1 p:0.5\nv b p:0 q:1\n");
  CHECK(g.symbol_count() == 2);
  CHECK(g.symbol_name(0) == "p");
  const VertexLabel& la = g.vertex_label(0);
  REQUIRE(la.size() == 2);
  CHECK(g.symbol_name(la[0].first) == "p");
  CHECK(la[0].second == Degree::parse("0.5"));
  CHECK(g.symbol_name(la[1].first) == "q");
  // b's explicit zero entry means "absent".
  REQUIRE(g.vertex_label(1).size() == 1);
  CHECK(g.symbol_name(g.vertex_label(1)[0].first) == "q");
}

TEST_CASE("symbols used only at degree zero stay out of the alphabet") {
  FuzzyGraph g = FuzzyGraph::parse("v a p:0\n");
  CHECK(g.symbol_count() == 0);
  CHECK(g.vertex_label(0).empty());
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      FuzzyGraph::parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{9999};
  };
  CHECK(line_of("v a\ne a r b 1\n") == 2);          // unknown vertex b
  CHECK(line_of("v a\nv a\n") == 2);                // duplicate vertex
  CHECK(line_of("v a\nv b\ne a r b 1\ne a r b 0.5\n") == 4);  // duplicate edge
  CHECK(line_of("v a\ne a r a 0\n") == 2);          // zero-degree edge
  CHECK(line_of("v a\ne a r a 1.5\n") == 2);        // degree out of range
  CHECK(line_of("v a\ne a r a x\n") == 2);          // malformed degree
  CHECK(line_of("v a\ne a r a\n") == 2);            // missing degree
  CHECK(line_of("v a\nw a\n") == 2);                // unknown directive
  CHECK(line_of("v a p\n") == 1);                   // malformed label entry
  CHECK(line_of("v a p:1 p:0.5\n") == 1);           // duplicate symbol
  CHECK(line_of("e a r a 1\nv a\n") == 1);          // use before declaration
  CHECK(line_of("# nothing\n") == 0);               // no vertices at all
  CHECK_THROWS_WITH_AS(FuzzyGraph::parse(""), "graph has no vertices",
                       ParseError);
  CHECK_THROWS_WITH_AS(FuzzyGraph::parse("v a\nv a\n"),
                       "line 2: duplicate vertex 'a'", ParseError);
}

TEST_CASE("serialize round-trips byte for byte") {
  FuzzyGraph g = sample_graph();
  std::string text = g.serialize();
  CHECK(FuzzyGraph::parse(text).serialize() == text);

  // Normalization: label entries re-ordered, zero entries dropped.
  FuzzyGraph h = FuzzyGraph::parse("v a q:1 p:0.5 z:0\nv b\ne b t a 0.30\n");
  CHECK(h.serialize() == "v a p:0.5 q:1\nv b\ne b t a 0.3\n");
  CHECK(FuzzyGraph::parse(h.serialize()).serialize() == h.serialize());
}

TEST_CASE("utf-8 identifiers pass through unharmed") {
  FuzzyGraph g = FuzzyGraph::parse("v α\nv β\ne α ρ β 0.5\n");
  CHECK(g.find_vertex("α") == 0);
  CHECK(g.label_name(0) == "ρ");
  CHECK(g.serialize() == "v α\nv β\ne α ρ β 0.5\n");
}

TEST_CASE("incidence indexes answer incoming, outgoing and lookups") {
  FuzzyGraph g = sample_graph();
  std::uint32_t a = *g.find_vertex("a"), b = *g.find_vertex("b"),
                d = *g.find_vertex("d"), e = *g.find_vertex("e"),
                c = *g.find_vertex("c");
  CHECK(g.outgoing(a, 0).size() == 3);
  CHECK(g.outgoing(d, 0).size() == 0);
  CHECK(g.incoming(e, 0).size() == 2);  // from a and b
  CHECK(g.incoming(a, 0).size() == 2);  // from c and f
  CHECK(g.degree_between(a, 0, d) == Degree::parse("0.7"));
  CHECK(g.degree_between(a, 0, b) == Degree::zero());
  CHECK(g.degree_between(c, 0, a) == Degree::one());
  // outgoing spans are destination sorted
  auto out = g.outgoing(a, 0);
  for (std::size_t i = 1; i < out.size(); ++i)
    CHECK(g.edges()[out[i - 1]].dest < g.edges()[out[i]].dest);
}

TEST_CASE("sup_degree and count_at_degree act on target subsets") {
  FuzzyGraph g = sample_graph();
  std::uint32_t a = *g.find_vertex("a"), bv = *g.find_vertex("b"),
                gv = *g.find_vertex("g");
  CHECK(sup_degree(g, a, 0, vertex_indices(g, {"d", "e"})) == Degree::one());
  CHECK(sup_degree(g, a, 0, vertex_indices(g, {"d"})) == Degree::parse("0.7"));
  CHECK(sup_degree(g, a, 0, vertex_indices(g, {"f", "g"})) == Degree::zero());
  CHECK(sup_degree(g, gv, 0, vertex_indices(g, {"b"})) == Degree::one());
  CHECK(count_at_degree(g, a, 0, Degree::one(),
                        vertex_indices(g, {"c", "e"})) == 2);
  CHECK(count_at_degree(g, a, 0, Degree::one(),
                        vertex_indices(g, {"c", "d", "e"})) == 2);
  CHECK(count_at_degree(g, a, 0, Degree::parse("0.7"),
                        vertex_indices(g, {"c", "d", "e"})) == 1);
  CHECK(count_at_degree(g, bv, 0, Degree::parse("0.6"),
                        vertex_indices(g, {"g"})) == 1);
  CHECK_THROWS_AS(count_at_degree(g, a, 0, Degree::zero(),
                                  vertex_indices(g, {"c"})),
                  std::invalid_argument);
}

TEST_CASE("make_graph validates its parts") {
  std::vector<std::string> ids{"x"};
  std::vector<VertexLabel> labels{{}};
  CHECK_THROWS_AS(make_graph({}, {}, {}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      make_graph(ids, labels, {}, {"r"},
                 {Edge{0, 0, 0, Degree::zero()}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      make_graph(ids, labels, {}, {"r"},
                 {Edge{0, 0, 1, Degree::one()}}),
      std::invalid_argument);
  FuzzyGraph g = make_graph(ids, labels, {}, {"r"},
                            {Edge{0, 0, 0, Degree::one()}});
  CHECK(g.serialize() == "v x\ne x r x 1\n");
}
