#include "hat/zoo.hpp"

#include <algorithm>

#include "hat/product.hpp"
#include "hat/reach.hpp"

namespace hat {

PeriodicLayeredDigraph factor_L() {
  return PeriodicLayeredDigraph({CompleteBipartite{3, 3}, AlternatingCycle{6}},
                                0, 1, "L");
}

PeriodicLayeredDigraph digraph_D() {
  PeriodicLayeredDigraph p = layerwise_product(factor_L(), factor_L(), 0, 1);
  return PeriodicLayeredDigraph(p.patterns(), p.offset(), p.arity(), "D");
}

PeriodicLayeredDigraph factor_Z() {
  return PeriodicLayeredDigraph({Matching{1}}, 0, 1, "Z");
}

PeriodicLayeredDigraph factor_mckay_praeger(int n, int m) {
  if (n < 2)
    fail(Errc::bad_params, "McKay-Praeger factor needs n >= 2 (K_{1,1} has out-valency 1)");
  if (m < 1) fail(Errc::bad_params, "McKay-Praeger factor needs m >= 1 matchings");
  std::vector<LayerPattern> layers;
  layers.emplace_back(CompleteBipartite{n, n});
  for (int i = 0; i < m; ++i) layers.emplace_back(Matching{n});
  return PeriodicLayeredDigraph(std::move(layers), 0, 1,
                                "mckay(" + std::to_string(n) + "," + std::to_string(m) + ")");
}

PeriodicLayeredDigraph factor_with_involvers(std::vector<LayerPattern> patterns,
                                             bool allow_adjacent_involvers) {
  PeriodicLayeredDigraph d(patterns, 0, 1, "");
  if (!allow_adjacent_involvers) {
    int p = d.period();
    std::vector<char> complete(p, 0);
    std::vector<int> involvers;
    for (int i = 0; i < p; ++i) {
      const auto& g = d.base_layer(i);
      complete[i] = is_complete_bipartite(g);
      if (!complete[i] && g.max_out_degree() >= 2) involvers.push_back(i);
    }
    int s = static_cast<int>(involvers.size());
    for (int t = 0; t < s; ++t) {
      int a = involvers[t];
      int b = involvers[(t + 1) % s];
      // Cyclic gap between consecutive involvers; for a single involver the
      // gap wraps all the way around, so the cycle must contain a complete
      // bipartite layer somewhere.
      bool separated = false;
      for (int j = floor_mod(a + 1, p); j != b; j = floor_mod(j + 1, p))
        if (complete[j]) separated = true;
      if (!separated)
        fail(Errc::involver_adjacency,
             "involver layers " + std::to_string(a) + " and " + std::to_string(b) +
                 " are not separated by a complete bipartite layer");
    }
  }
  return d;
}

namespace {

// Canonical path label of a tree vertex: k leading 'u's for the ancestor
// chain above the root, then '.'-separated descent digits. Child 0 of a
// chain vertex is the next chain vertex, so a canonical descent from a
// proper ancestor never starts with digit 0.
struct TreeEnum {
  int dout;
  int lo, hi;
  std::size_t budget;
  std::vector<Vertex> out;

  void add(int level, const std::string& label) {
    if (out.size() >= budget)
      fail(Errc::window_too_large, "tree window exceeds the vertex budget");
    out.push_back({level, {label}});
  }

  void descend(int level, const std::string& label, bool first_nonzero) {
    if (level >= lo) add(level, label);
    if (level >= hi) return;
    for (int d = first_nonzero ? 1 : 0; d < dout; ++d)
      descend(level + 1, label + "." + std::to_string(d), false);
  }

  void run() {
    int kmax = std::max(0, -lo);
    for (int k = 0; k <= kmax; ++k) {
      std::string anc(k, 'u');
      anc += 'r';
      descend(-k, anc, k > 0);
    }
  }
};

std::string tree_parent(const std::string& label) {
  auto dot = label.rfind('.');
  if (dot != std::string::npos) return label.substr(0, dot);
  return "u" + label;
}

FiniteDigraph tree_window_down(int dout, int lo, int hi, std::size_t budget) {
  TreeEnum gen{dout, lo, hi, budget, {}};
  gen.run();
  std::sort(gen.out.begin(), gen.out.end());
  FiniteDigraph f = FiniteDigraph::build(lo, hi, gen.out, {});
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    const Vertex& v = f.vertices[i];
    Vertex parent{v.level - 1, {tree_parent(v.coords[0])}};
    int pi = f.index_of(parent);
    if (pi >= 0) edges.emplace_back(pi, static_cast<int>(i));
  }
  return FiniteDigraph::build(lo, hi, std::move(gen.out), std::move(edges));
}

FiniteDigraph reverse_window(const FiniteDigraph& f) {
  std::vector<Vertex> vs;
  vs.reserve(f.vertices.size());
  for (const auto& v : f.vertices) vs.push_back({-v.level, v.coords});
  std::sort(vs.begin(), vs.end());
  FiniteDigraph shell = FiniteDigraph::build(-f.hi, -f.lo, vs, {});
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : f.edges) {
    Vertex na{-f.vertices[b].level, f.vertices[b].coords};
    Vertex nb{-f.vertices[a].level, f.vertices[a].coords};
    edges.emplace_back(shell.index_of(na), shell.index_of(nb));
  }
  return FiniteDigraph::build(-f.hi, -f.lo, std::move(vs), std::move(edges));
}

}  // namespace

FiniteDigraph TreeLeveledDigraph::window(int lo, int hi,
                                         std::size_t vertex_budget) const {
  if (lo > hi) fail(Errc::bad_params, "window bounds must satisfy lo <= hi");
  if (in_degree == 1) return tree_window_down(out_degree, lo, hi, vertex_budget);
  if (out_degree == 1)
    return reverse_window(tree_window_down(in_degree, -hi, -lo, vertex_budget));
  // With branching in both directions the ball around the root inside any
  // band of positive height is infinite.
  if (lo == 0 && hi == 0)
    return FiniteDigraph::build(0, 0, {{0, {"r"}}}, {});
  fail(Errc::window_too_large,
       "a tree with in- and out-degree both >= 2 has an infinite window");
}

TreeLeveledDigraph tree_factor(int din, int dout) {
  if (din < 1 || dout < 1) fail(Errc::bad_params, "tree degrees must be >= 1");
  return TreeLeveledDigraph{din, dout};
}

FiniteDigraph diestel_leader(int dout, int din, int lo, int hi,
                             std::size_t vertex_budget) {
  if (dout < 1 || din < 1) fail(Errc::bad_params, "tree degrees must be >= 1");
  FiniteDigraph t1 = tree_factor(1, dout).window(lo, hi, vertex_budget);
  FiniteDigraph t2 = tree_factor(din, 1).window(lo, hi, vertex_budget);
  std::vector<Vertex> vs;
  for (int n = lo; n <= hi; ++n) {
    for (const auto& a : t1.vertices) {
      if (a.level != n) continue;
      for (const auto& b : t2.vertices) {
        if (b.level != n) continue;
        if (vs.size() >= vertex_budget)
          fail(Errc::window_too_large, "product window exceeds the vertex budget");
        vs.push_back({n, {a.coords[0], b.coords[0]}});
      }
    }
  }
  std::sort(vs.begin(), vs.end());
  FiniteDigraph shell = FiniteDigraph::build(lo, hi, vs, {});
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a1, b1] : t1.edges)
    for (const auto& [a2, b2] : t2.edges) {
      if (t1.vertices[a1].level != t2.vertices[a2].level) continue;
      Vertex u{t1.vertices[a1].level,
               {t1.vertices[a1].coords[0], t2.vertices[a2].coords[0]}};
      Vertex v{u.level + 1, {t1.vertices[b1].coords[0], t2.vertices[b2].coords[0]}};
      edges.emplace_back(shell.index_of(u), shell.index_of(v));
    }
  return FiniteDigraph::build(lo, hi, std::move(vs), std::move(edges));
}

}  // namespace hat
