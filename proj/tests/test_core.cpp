#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hat/core.hpp"
#include "hat/factor_spec.hpp"
#include "hat/zoo.hpp"

using namespace hat;

namespace {

int paper_value(const std::string& s) {
  if (s == "-") return -1;
  if (s == "o") return 0;
  return 1;
}

// Independent edge-count oracle for windows of L: enumerate label pairs per
// layer straight from the paper's rules (K_{3,3}: everything; odd layer:
// x + y != 0).
int count_L_window_edges(int lo, int hi) {
  const std::vector<std::string> fiber{"-", "o", "+"};
  int count = 0;
  for (int n = lo; n < hi; ++n)
    for (const auto& x : fiber)
      for (const auto& y : fiber)
        if (n % 2 == 0 || paper_value(x) + paper_value(y) != 0) ++count;
  return count;
}

}  // namespace

TEST_CASE("build_periodic expands the L spec") {
  FactorSpec spec;
  spec.period = 2;
  spec.layers = {CompleteBipartite{3, 3}, AlternatingCycle{6}};
  PeriodicLayeredDigraph d = build_periodic(spec);
  CHECK(d.same_structure(factor_L()));
  CHECK(d.layer(0).edge_count() == 9);
  CHECK(d.layer(1).edge_count() == 6);
  CHECK(d.fiber(0) == std::vector<std::string>{"-", "o", "+"});
}

TEST_CASE("build_periodic accepts the integer line") {
  FactorSpec spec;
  spec.period = 1;
  spec.layers = {Matching{1}};
  PeriodicLayeredDigraph z = build_periodic(spec);
  CHECK(z.same_structure(factor_Z()));
  CHECK(z.fiber_size(7) == 1);
  CHECK(z.layer(-3).edge_count() == 1);
}

TEST_CASE("build_periodic rejects fiber mismatches") {
  FactorSpec spec;
  spec.period = 2;
  spec.layers = {CompleteBipartite{2, 3}, CompleteBipartite{2, 2}};
  try {
    build_periodic(spec);
    FAIL("expected IncompatibleFibers");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::incompatible_fibers);
  }
}

TEST_CASE("build_periodic rejects empty layers") {
  FactorSpec spec;
  spec.period = 1;
  spec.layers = {CustomLayer{FiniteBipartiteDigraph({"a"}, {"a"}, {})}};
  try {
    build_periodic(spec);
    FAIL("expected EmptyLayer");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_layer);
  }
}

TEST_CASE("has_edge follows the joined condition on builtin D") {
  PeriodicLayeredDigraph d = digraph_D();
  CHECK(d.has_edge({0, {"-", "-"}}, {1, {"-", "-"}}));
  CHECK_FALSE(d.has_edge({0, {"o", "o"}}, {1, {"o", "o"}}));
  // Level gap other than one is never an edge.
  CHECK_FALSE(d.has_edge({0, {"-", "-"}}, {2, {"-", "-"}}));
}

TEST_CASE("has_edge on L rejects the zero-sum pair in odd layers") {
  PeriodicLayeredDigraph l = factor_L();
  CHECK_FALSE(l.has_edge({1, {"o"}}, {2, {"o"}}));
  CHECK(l.has_edge({1, {"o"}}, {2, {"+"}}));
  CHECK(l.has_edge({0, {"o"}}, {1, {"o"}}));
}

TEST_CASE("has_edge rejects foreign vertices") {
  PeriodicLayeredDigraph l = factor_L();
  try {
    l.has_edge({0, {"x"}}, {1, {"o"}});
    FAIL("expected ForeignVertex");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::foreign_vertex);
  }
}

TEST_CASE("window counts match the enumeration oracle") {
  PeriodicLayeredDigraph l = factor_L();
  FiniteDigraph w = l.window(0, 2);
  CHECK(w.vertex_count() == 9);
  CHECK(static_cast<int>(w.edge_count()) == count_L_window_edges(0, 2));
  CHECK(w.edge_count() == 15);

  FiniteDigraph single = l.window(0, 0);
  CHECK(single.vertex_count() == 3);
  CHECK(single.edge_count() == 0);

  // D's first layer: 9 x 6 factor-edge pairs.
  PeriodicLayeredDigraph d = digraph_D();
  FiniteDigraph dw = d.window(0, 1);
  CHECK(dw.vertex_count() == 18);
  int pairs = 0;
  for (std::size_t e1 = 0; e1 < l.layer(0).edge_count(); ++e1)
    for (std::size_t e2 = 0; e2 < l.layer(-1).edge_count(); ++e2) ++pairs;
  CHECK(pairs == 54);
  CHECK(static_cast<int>(dw.edge_count()) == pairs);
}

TEST_CASE("layers repeat with the period exactly") {
  PeriodicLayeredDigraph l = factor_L();
  for (int i = -4; i <= 4; ++i) CHECK(l.layer(i) == l.layer(i + 2));
  CHECK_FALSE(l.layer(0) == l.layer(1));
}

TEST_CASE("every window edge raises the level by one") {
  for (const auto& d : {factor_L(), digraph_D(), factor_Z()}) {
    FiniteDigraph w = d.window(-2, 2);
    for (const auto& [a, b] : w.edges)
      CHECK(w.vertices[b].level == w.vertices[a].level + 1);
  }
}

TEST_CASE("window restriction is coherent") {
  PeriodicLayeredDigraph d = digraph_D();
  FiniteDigraph big = d.window(-3, 3);
  FiniteDigraph small = d.window(-1, 2);
  std::set<std::pair<Vertex, Vertex>> restricted;
  for (const auto& [a, b] : big.edges) {
    const Vertex& u = big.vertices[a];
    const Vertex& v = big.vertices[b];
    if (u.level >= -1 && v.level <= 2) restricted.insert({u, v});
  }
  std::set<std::pair<Vertex, Vertex>> direct;
  for (const auto& [a, b] : small.edges)
    direct.insert({small.vertices[a], small.vertices[b]});
  CHECK(restricted == direct);
  std::vector<Vertex> big_restricted;
  for (const auto& v : big.vertices)
    if (v.level >= -1 && v.level <= 2) big_restricted.push_back(v);
  CHECK(big_restricted == small.vertices);
}

TEST_CASE("alternating 6-cycle expansion follows the paper rule") {
  FiniteBipartiteDigraph ac = expand_pattern(AlternatingCycle{6});
  CHECK(ac.edge_count() == 6);
  for (const auto& x : ac.bottom())
    for (const auto& y : ac.top())
      CHECK(ac.has_edge(x, y) == (paper_value(x) + paper_value(y) != 0));
  // Undirected it is a single 6-cycle: every vertex degree two, connected.
  std::vector<std::vector<int>> adj(6);  // bottom i, top 3 + j
  for (int b = 0; b < 3; ++b)
    for (int t = 0; t < 3; ++t)
      if (ac.has_edge(ac.bottom()[b], ac.top()[t])) {
        adj[b].push_back(3 + t);
        adj[3 + t].push_back(b);
      }
  std::set<int> seen{0};
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    CHECK(adj[v].size() == 2);
    for (int w : adj[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("other alternating cycle sizes use the index rule") {
  FiniteBipartiteDigraph ac8 = expand_pattern(AlternatingCycle{8});
  CHECK(ac8.bottom().size() == 4);
  CHECK(ac8.edge_count() == 8);
  CHECK(ac8.has_edge("0", "0"));
  CHECK(ac8.has_edge("3", "0"));
  CHECK_FALSE(ac8.has_edge("0", "2"));
  CHECK_THROWS_AS(expand_pattern(AlternatingCycle{5}), Error);
  CHECK_THROWS_AS(expand_pattern(AlternatingCycle{2}), Error);
}

TEST_CASE("level accessor and vertex literals") {
  Vertex v{3, {"-", "-"}};
  CHECK(level_of(v) == 3);
  CHECK(v.str() == "(3,-,-)");
  CHECK(parse_vertex(" ( 3 , - , - ) ") == v);
  CHECK((parse_vertex("(-2,o)") == Vertex{-2, {"o"}}));
  CHECK_THROWS_AS(parse_vertex("3,-,-"), Error);
  CHECK_THROWS_AS(parse_vertex("(x,-)"), Error);
}

TEST_CASE("arc literals parse and validate") {
  PeriodicLayeredDigraph d = digraph_D();
  Arc a = parse_arc("(0,-,-) > (1,o,-)");
  CHECK(a.length() == 1);
  CHECK(a.str() == "(0,-,-)>(1,o,-)");
  CHECK_NOTHROW(Arc::from_vertices(d, a.vertices));
  // (0,o,o) -> (1,o,o) violates the even-layer condition.
  try {
    Arc::from_vertices(d, {{0, {"o", "o"}}, {1, {"o", "o"}}});
    FAIL("expected NotAnArc");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_an_arc);
  }
  CHECK_NOTHROW(Arc::from_vertices(d, {{5, {"o", "+"}}}));  // 0-arc
  CHECK_THROWS_AS(Arc::from_vertices(d, {{0, {"q", "q"}}}), Error);
}

TEST_CASE("random periodic factors keep the core invariants") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    int period = 1 + static_cast<int>(rng() % 4);
    int width = 1 + static_cast<int>(rng() % 4);
    std::vector<LayerPattern> layers;
    for (int i = 0; i < period; ++i) {
      switch (rng() % 3) {
        case 0: layers.emplace_back(CompleteBipartite{width, width}); break;
        case 1: layers.emplace_back(Matching{width}); break;
        default:
          if (width == 3) layers.emplace_back(AlternatingCycle{6});
          else layers.emplace_back(CompleteBipartite{width, width});
      }
    }
    PeriodicLayeredDigraph d(layers, static_cast<int>(rng() % 5) - 2, 1, "rnd");
    for (int n = -3; n <= 3; ++n) {
      CHECK(d.layer(n) == d.layer(n + period));
      CHECK(d.layer(n).edge_count() >= 1);
      CHECK(d.fiber(n) == d.layer(n).bottom());
      CHECK(d.layer(n - 1).top() == d.layer(n).bottom());
    }
    FiniteDigraph w = d.window(-2, 2);
    std::size_t expect = 0;
    for (int n = -2; n <= 2; ++n) expect += d.fiber_size(n);
    CHECK(w.vertex_count() == expect);
    for (const auto& [a, b] : w.edges) {
      CHECK(w.vertices[b].level == w.vertices[a].level + 1);
      CHECK(d.has_edge(w.vertices[a], w.vertices[b]));
    }
  }
}
