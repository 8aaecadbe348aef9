#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hat/product.hpp"
#include "hat/zoo.hpp"

using namespace hat;

namespace {

int paper_value(const std::string& s) {
  if (s == "-") return -1;
  if (s == "o") return 0;
  return 1;
}

// The paper's joined edge condition for D, used as an oracle against the
// materialized product: (1) i even and y1+y2 != 0, (2) i odd and x1+x2 != 0.
bool d_joined_condition(const Vertex& u, const Vertex& v) {
  if (v.level != u.level + 1) return false;
  int x1 = paper_value(u.coords[0]), y1 = paper_value(u.coords[1]);
  int x2 = paper_value(v.coords[0]), y2 = paper_value(v.coords[1]);
  if (u.level % 2 == 0) return y1 + y2 != 0;
  return x1 + x2 != 0;
}

std::set<std::pair<Vertex, Vertex>> edge_set(const FiniteDigraph& w) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (const auto& [a, b] : w.edges) out.insert({w.vertices[a], w.vertices[b]});
  return out;
}

}  // namespace

TEST_CASE("layer product of K33 and AC6 has 18 vertices and 54 edges") {
  FiniteBipartiteDigraph p = layer_product(expand_pattern(CompleteBipartite{3, 3}),
                                           expand_pattern(AlternatingCycle{6}));
  CHECK(p.bottom().size() == 9);
  CHECK(p.top().size() == 9);
  CHECK(p.edge_count() == 9 * 6);
}

TEST_CASE("single-layer factors multiply to an 18/54 window") {
  PeriodicLayeredDigraph k({CompleteBipartite{3, 3}}, 0, 1, "K");
  PeriodicLayeredDigraph a({AlternatingCycle{6}}, 0, 1, "A");
  PeriodicLayeredDigraph p = layerwise_product(k, a);
  FiniteDigraph w = p.window(0, 1);
  CHECK(w.vertex_count() == 18);
  CHECK(w.edge_count() == 54);
}

TEST_CASE("L x L with offsets (0,1) reproduces the joined condition") {
  PeriodicLayeredDigraph product = layerwise_product(factor_L(), factor_L(), 0, 1);
  FiniteDigraph w = product.window(-6, 6);
  std::set<std::pair<Vertex, Vertex>> expected;
  for (const auto& u : w.vertices)
    for (const auto& v : w.vertices)
      if (d_joined_condition(u, v)) expected.insert({u, v});
  CHECK(edge_set(w) == expected);
  CHECK(product.same_structure(digraph_D()));
}

TEST_CASE("D has fiber size 9 at every level") {
  PeriodicLayeredDigraph d = layerwise_product(factor_L(), factor_L(), 0, 1);
  for (int n = -5; n <= 5; ++n) CHECK(d.fiber_size(n) == 9);
}

TEST_CASE("n-ary product collapses to the binary one for two factors") {
  ProductDescriptor desc{{factor_L(), factor_L()}, {0, 1}};
  CHECK(layerwise_product_many(desc).same_structure(
      layerwise_product(factor_L(), factor_L(), 0, 1)));
}

TEST_CASE("triple product of L has fiber size 27") {
  ProductDescriptor desc{{factor_L(), factor_L(), factor_L()}, {0, 1, 0}};
  PeriodicLayeredDigraph p = layerwise_product_many(desc);
  CHECK(p.arity() == 3);
  for (int n = 0; n < p.period(); ++n) CHECK(p.fiber_size(n) == 27);
}

TEST_CASE("multiplying by the integer line only relabels") {
  ProductDescriptor desc{{factor_Z(), factor_L()}, {0, 0}};
  PeriodicLayeredDigraph p = layerwise_product_many(desc);
  FiniteDigraph pw = p.window(-3, 3);
  FiniteDigraph lw = factor_L().window(-3, 3);
  auto project = [](const Vertex& v) { return Vertex{v.level, {v.coords[1]}}; };
  std::set<std::pair<Vertex, Vertex>> projected;
  for (const auto& [a, b] : pw.edges)
    projected.insert({project(pw.vertices[a]), project(pw.vertices[b])});
  CHECK(projected == edge_set(lw));
  CHECK(pw.vertex_count() == lw.vertex_count());
}

TEST_CASE("shift moves the pattern assignment") {
  PeriodicLayeredDigraph l = factor_L();
  CHECK(shift(l, 2).same_structure(l));
  CHECK(shift(l, -2).same_structure(l));
  CHECK(shift(l, 1).layer(0) == l.layer(1));  // AC6 now sits at even levels
  CHECK_FALSE(shift(l, 1).same_structure(l));
}

TEST_CASE("extra offsets agree with pre-shifted factors") {
  PeriodicLayeredDigraph via_offset = layerwise_product(factor_L(), factor_L(), 0, 1);
  PeriodicLayeredDigraph via_shift =
      layerwise_product(factor_L(), shift(factor_L(), 1), 0, 0);
  CHECK(via_shift.same_structure(via_offset));
  CHECK(edge_set(via_shift.window(-4, 4)) == edge_set(via_offset.window(-4, 4)));
}

TEST_CASE("shift product of L is D") {
  PeriodicLayeredDigraph sp = shift_product(factor_L());
  CHECK(sp.same_structure(digraph_D()));
  CHECK(edge_set(sp.window(-4, 4)) == edge_set(digraph_D().window(-4, 4)));
}

TEST_CASE("shift product of a period-1 factor is the factor") {
  PeriodicLayeredDigraph z = factor_Z();
  CHECK(shift_product(z).same_structure(z));
}

TEST_CASE("shift product of the McKay-Praeger factor multiplies fibers") {
  PeriodicLayeredDigraph f = factor_mckay_praeger(2, 1);
  PeriodicLayeredDigraph sp = shift_product(f);
  for (int n = 0; n < sp.period(); ++n) {
    std::size_t expect = 1;
    for (int j = 0; j < f.period(); ++j) expect *= f.fiber_size(n - j);
    CHECK(sp.fiber_size(n) == expect);
    CHECK(sp.fiber_size(n) == 4);
  }
}

TEST_CASE("fiber sizes multiply level by level") {
  struct Case {
    PeriodicLayeredDigraph g1, g2;
    int off1, off2;
  };
  std::vector<Case> cases{{factor_L(), factor_L(), 0, 1},
                          {factor_L(), factor_mckay_praeger(2, 2), 0, 0},
                          {factor_mckay_praeger(3, 1), factor_L(), 1, -1}};
  for (const auto& c : cases) {
    PeriodicLayeredDigraph p = layerwise_product(c.g1, c.g2, c.off1, c.off2);
    for (int n = 0; n < p.period(); ++n)
      CHECK(p.fiber_size(n) ==
            c.g1.fiber_size(n - c.off1) * c.g2.fiber_size(n - c.off2));
  }
}

TEST_CASE("the product is commutative up to a coordinate flip") {
  PeriodicLayeredDigraph ab =
      layerwise_product(factor_L(), factor_mckay_praeger(2, 1), 0, 0);
  PeriodicLayeredDigraph ba =
      layerwise_product(factor_mckay_praeger(2, 1), factor_L(), 0, 0);
  auto flip = [](const Vertex& v) {
    return Vertex{v.level, {v.coords[1], v.coords[0]}};
  };
  FiniteDigraph wab = ab.window(-3, 3);
  std::set<std::pair<Vertex, Vertex>> flipped;
  for (const auto& [a, b] : wab.edges)
    flipped.insert({flip(wab.vertices[a]), flip(wab.vertices[b])});
  CHECK(flipped == edge_set(ba.window(-3, 3)));
}

TEST_CASE("product layers are the products of the factor layers") {
  PeriodicLayeredDigraph g1 = factor_L();
  PeriodicLayeredDigraph g2 = factor_mckay_praeger(2, 2);
  int off1 = 0, off2 = 2;
  PeriodicLayeredDigraph p = layerwise_product(g1, g2, off1, off2);
  for (int n = -2; n <= 4; ++n)
    CHECK(p.layer(n) == layer_product(g1.layer(n - off1), g2.layer(n - off2)));
}

TEST_CASE("products preserve Property Z on windows") {
  PeriodicLayeredDigraph p = layerwise_product(factor_L(), factor_L(), 0, 1);
  FiniteDigraph w = p.window(-3, 3);
  for (const auto& [a, b] : w.edges)
    CHECK(w.vertices[b].level == w.vertices[a].level + 1);
}

TEST_CASE("n-ary products need at least two factors and matching offsets") {
  ProductDescriptor too_few{{factor_L()}, {0}};
  CHECK_THROWS_AS(layerwise_product_many(too_few), Error);
  ProductDescriptor mismatch{{factor_L(), factor_L()}, {0}};
  CHECK_THROWS_AS(layerwise_product_many(mismatch), Error);
}
