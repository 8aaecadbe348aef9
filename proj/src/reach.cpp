#include "hat/reach.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace hat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<int>> reachability_classes(const FiniteDigraph& f) {
  if (f.edges.empty()) fail(Errc::empty_edge_set, "digraph has no edges");
  // Tail-sharing and head-sharing are each transitive, so the equivalence
  // generated by alternating walks is exactly the transitive closure of
  // "share tail or share head" (an edge may be repeated inside a walk to
  // switch between the two sharing modes). Union-find computes it.
  UnionFind uf(static_cast<int>(f.edges.size()));
  std::map<int, int> first_at_tail, first_at_head;
  for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
    auto [t, h] = f.edges[e];
    if (auto [it, fresh] = first_at_tail.emplace(t, e); !fresh) uf.unite(e, it->second);
    if (auto [it, fresh] = first_at_head.emplace(h, e); !fresh) uf.unite(e, it->second);
  }
  std::map<int, int> root_to_class;
  std::vector<std::vector<int>> classes;
  for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
    int r = uf.find(e);
    auto [it, fresh] = root_to_class.emplace(r, static_cast<int>(classes.size()));
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(e);
  }
  return classes;
}

FiniteBipartiteDigraph class_subgraph(const FiniteDigraph& f,
                                      const std::vector<int>& edge_ids) {
  assert(!edge_ids.empty());
  int layer = f.vertices[f.edges[edge_ids[0]].first].level;
  std::vector<int> tails, heads;
  for (int e : edge_ids) {
    auto [t, h] = f.edges[e];
    if (f.vertices[t].level != layer)
      fail(Errc::bad_params, "reachability class spans more than one layer");
    tails.push_back(t);
    heads.push_back(h);
  }
  auto dedup = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(tails);
  dedup(heads);
  std::vector<std::string> bottom, top;
  for (int t : tails) bottom.push_back(join_coords(f.vertices[t].coords));
  for (int h : heads) top.push_back(join_coords(f.vertices[h].coords));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int e : edge_ids)
    edges.emplace_back(join_coords(f.vertices[f.edges[e].first].coords),
                       join_coords(f.vertices[f.edges[e].second].coords));
  return {bottom, top, edges};
}

bool is_complete_bipartite(const FiniteBipartiteDigraph& g) {
  return g.edge_count() == g.bottom().size() * g.top().size();
}

namespace {

// Bipartite graph as adjacency bit rows plus a vertex weight per side. The
// weights carry twin-class multiplicities through the quotient search.
struct SideGraph {
  std::vector<std::vector<int>> badj, tadj;       // neighbor lists
  std::vector<std::vector<char>> brow;            // bottom x top incidence
  std::vector<int> bweight, tweight;

  static SideGraph of(const FiniteBipartiteDigraph& g) {
    SideGraph s;
    s.badj.assign(g.bottom().size(), {});
    s.tadj.assign(g.top().size(), {});
    s.brow.assign(g.bottom().size(), std::vector<char>(g.top().size(), 0));
    for (const auto& [b, t] : g.edges()) {
      s.badj[b].push_back(t);
      s.tadj[t].push_back(b);
      s.brow[b][t] = 1;
    }
    s.bweight.assign(g.bottom().size(), 1);
    s.tweight.assign(g.top().size(), 1);
    return s;
  }
};

// Vertices with identical adjacency rows (twins) collapse to one quotient
// vertex weighted by the class size. Any isomorphism maps twin classes onto
// twin classes, and any weight-preserving quotient isomorphism expands to a
// full one, so this is lossless. The blow-up shaped layers that layerwise
// products produce shrink drastically here.
struct TwinQuotient {
  SideGraph q;
  std::vector<std::vector<int>> bmembers, tmembers;  // class -> original ids
};

TwinQuotient contract_twins(const FiniteBipartiteDigraph& g) {
  SideGraph full = SideGraph::of(g);
  std::map<std::vector<int>, int> bclass, tclass;
  std::vector<int> bof(g.bottom().size()), tof(g.top().size());
  TwinQuotient out;
  for (std::size_t i = 0; i < g.bottom().size(); ++i) {
    auto key = full.badj[i];
    auto [it, fresh] = bclass.emplace(std::move(key), static_cast<int>(out.bmembers.size()));
    if (fresh) out.bmembers.emplace_back();
    bof[i] = it->second;
    out.bmembers[it->second].push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < g.top().size(); ++i) {
    auto key = full.tadj[i];
    auto [it, fresh] = tclass.emplace(std::move(key), static_cast<int>(out.tmembers.size()));
    if (fresh) out.tmembers.emplace_back();
    tof[i] = it->second;
    out.tmembers[it->second].push_back(static_cast<int>(i));
  }
  std::size_t nb = out.bmembers.size(), nt = out.tmembers.size();
  out.q.badj.assign(nb, {});
  out.q.tadj.assign(nt, {});
  out.q.brow.assign(nb, std::vector<char>(nt, 0));
  for (std::size_t c = 0; c < nb; ++c) {
    int rep = out.bmembers[c][0];
    for (int t : full.badj[rep]) {
      int tc = tof[t];
      if (!out.q.brow[c][tc]) {
        out.q.brow[c][tc] = 1;
        out.q.badj[c].push_back(tc);
        out.q.tadj[tc].push_back(static_cast<int>(c));
      }
    }
  }
  for (std::size_t c = 0; c < nb; ++c)
    out.q.bweight.push_back(static_cast<int>(out.bmembers[c].size()));
  for (std::size_t c = 0; c < nt; ++c)
    out.q.tweight.push_back(static_cast<int>(out.tmembers[c].size()));
  return out;
}

// Joint color refinement over both quotients so ids are comparable. Seed
// colors: (side, weight, degree); refined by sorted neighbor color lists.
struct QuotientIso {
  const SideGraph& g1;
  const SideGraph& g2;
  std::vector<int> col1_b, col1_t, col2_b, col2_t;
  std::vector<int> bmap, tmap;
  std::vector<char> bused, tused;

  QuotientIso(const SideGraph& a, const SideGraph& b) : g1(a), g2(b) {}

  bool refine() {
    using Seed = std::tuple<int, int, int>;
    std::map<Seed, int> seeds;
    auto seed_of = [](int side, const SideGraph& g, int i) {
      return side == 0 ? Seed{0, g.bweight[i], static_cast<int>(g.badj[i].size())}
                       : Seed{1, g.tweight[i], static_cast<int>(g.tadj[i].size())};
    };
    for (std::size_t i = 0; i < g1.bweight.size(); ++i) seeds.emplace(seed_of(0, g1, i), 0);
    for (std::size_t i = 0; i < g1.tweight.size(); ++i) seeds.emplace(seed_of(1, g1, i), 0);
    for (std::size_t i = 0; i < g2.bweight.size(); ++i) seeds.emplace(seed_of(0, g2, i), 0);
    for (std::size_t i = 0; i < g2.tweight.size(); ++i) seeds.emplace(seed_of(1, g2, i), 0);
    int next = 0;
    for (auto& [k, v] : seeds) v = next++;
    auto seed_all = [&](const SideGraph& g, std::vector<int>& cb, std::vector<int>& ct) {
      cb.resize(g.bweight.size());
      ct.resize(g.tweight.size());
      for (std::size_t i = 0; i < cb.size(); ++i) cb[i] = seeds[seed_of(0, g, i)];
      for (std::size_t i = 0; i < ct.size(); ++i) ct[i] = seeds[seed_of(1, g, i)];
    };
    seed_all(g1, col1_b, col1_t);
    seed_all(g2, col2_b, col2_t);
    for (int round = 0; round < 32; ++round) {
      using Sig = std::pair<int, std::vector<int>>;
      std::map<Sig, int> ids;
      auto signature = [](int own, const std::vector<int>& nbrs,
                          const std::vector<int>& nbr_colors) {
        Sig s{own, {}};
        for (int v : nbrs) s.second.push_back(nbr_colors[v]);
        std::sort(s.second.begin(), s.second.end());
        return s;
      };
      std::vector<Sig> s1b, s1t, s2b, s2t;
      for (std::size_t i = 0; i < col1_b.size(); ++i)
        s1b.push_back(signature(col1_b[i], g1.badj[i], col1_t));
      for (std::size_t i = 0; i < col1_t.size(); ++i)
        s1t.push_back(signature(col1_t[i], g1.tadj[i], col1_b));
      for (std::size_t i = 0; i < col2_b.size(); ++i)
        s2b.push_back(signature(col2_b[i], g2.badj[i], col2_t));
      for (std::size_t i = 0; i < col2_t.size(); ++i)
        s2t.push_back(signature(col2_t[i], g2.tadj[i], col2_b));
      for (const auto* v : {&s1b, &s1t, &s2b, &s2t})
        for (const auto& s : *v) ids.emplace(s, 0);
      int id = 0;
      for (auto& [k, v] : ids) v = id++;
      bool any = false;
      auto assign = [&](const std::vector<Sig>& sigs, std::vector<int>& cols) {
        for (std::size_t i = 0; i < sigs.size(); ++i) {
          int c = ids[sigs[i]];
          if (cols[i] != c) any = true;
          cols[i] = c;
        }
      };
      assign(s1b, col1_b);
      assign(s1t, col1_t);
      assign(s2b, col2_b);
      assign(s2t, col2_t);
      if (!any) break;
    }
    auto sorted = [](std::vector<int> v) { std::sort(v.begin(), v.end()); return v; };
    return sorted(col1_b) == sorted(col2_b) && sorted(col1_t) == sorted(col2_t);
  }

  // Connected search order: prefer the least unmapped vertex adjacent to the
  // mapped region so constraints bite immediately.
  std::pair<int, int> next_vertex() const {
    for (std::size_t i = 0; i < bmap.size(); ++i)
      if (bmap[i] < 0)
        for (int t : g1.badj[i])
          if (tmap[t] >= 0) return {0, static_cast<int>(i)};
    for (std::size_t i = 0; i < tmap.size(); ++i)
      if (tmap[i] < 0)
        for (int b : g1.tadj[i])
          if (bmap[b] >= 0) return {1, static_cast<int>(i)};
    for (std::size_t i = 0; i < bmap.size(); ++i)
      if (bmap[i] < 0) return {0, static_cast<int>(i)};
    for (std::size_t i = 0; i < tmap.size(); ++i)
      if (tmap[i] < 0) return {1, static_cast<int>(i)};
    return {-1, -1};
  }

  bool consistent_bottom(int v, int w) const {
    if (col1_b[v] != col2_b[w]) return false;
    for (std::size_t t = 0; t < tmap.size(); ++t)
      if (tmap[t] >= 0 && g1.brow[v][t] != g2.brow[w][tmap[t]]) return false;
    return true;
  }

  bool consistent_top(int v, int w) const {
    if (col1_t[v] != col2_t[w]) return false;
    for (std::size_t b = 0; b < bmap.size(); ++b)
      if (bmap[b] >= 0 && g1.brow[b][v] != g2.brow[bmap[b]][w]) return false;
    return true;
  }

  bool search() {
    auto [side, v] = next_vertex();
    if (side < 0) return true;
    int limit = side == 0 ? static_cast<int>(bused.size()) : static_cast<int>(tused.size());
    for (int w = 0; w < limit; ++w) {
      if (side == 0) {
        if (bused[w] || !consistent_bottom(v, w)) continue;
        bmap[v] = w;
        bused[w] = 1;
        if (search()) return true;
        bmap[v] = -1;
        bused[w] = 0;
      } else {
        if (tused[w] || !consistent_top(v, w)) continue;
        tmap[v] = w;
        tused[w] = 1;
        if (search()) return true;
        tmap[v] = -1;
        tused[w] = 0;
      }
    }
    return false;
  }

  bool run() {
    if (g1.bweight.size() != g2.bweight.size() ||
        g1.tweight.size() != g2.tweight.size())
      return false;
    if (!refine()) return false;
    bmap.assign(g1.bweight.size(), -1);
    tmap.assign(g1.tweight.size(), -1);
    bused.assign(g2.bweight.size(), 0);
    tused.assign(g2.tweight.size(), 0);
    return search();
  }
};

}  // namespace

std::optional<BipartiteIso> bipartite_iso(const FiniteBipartiteDigraph& f1,
                                          const FiniteBipartiteDigraph& f2) {
  if (f1.bottom().size() != f2.bottom().size() ||
      f1.top().size() != f2.top().size() || f1.edge_count() != f2.edge_count())
    return std::nullopt;
  TwinQuotient q1 = contract_twins(f1);
  TwinQuotient q2 = contract_twins(f2);
  QuotientIso iso(q1.q, q2.q);
  if (!iso.run()) return std::nullopt;
  BipartiteIso out;
  out.bottom_map.assign(f1.bottom().size(), -1);
  out.top_map.assign(f1.top().size(), -1);
  for (std::size_t c = 0; c < q1.bmembers.size(); ++c) {
    const auto& src = q1.bmembers[c];
    const auto& dst = q2.bmembers[iso.bmap[c]];
    for (std::size_t i = 0; i < src.size(); ++i) out.bottom_map[src[i]] = dst[i];
  }
  for (std::size_t c = 0; c < q1.tmembers.size(); ++c) {
    const auto& src = q1.tmembers[c];
    const auto& dst = q2.tmembers[iso.tmap[c]];
    for (std::size_t i = 0; i < src.size(); ++i) out.top_map[src[i]] = dst[i];
  }
  return out;
}

namespace {

bool subgraph_connected(const FiniteBipartiteDigraph& g) {
  std::size_t n = g.bottom().size() + g.top().size();
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  std::size_t nb = g.bottom().size();
  for (const auto& [b, t] : g.edges()) {
    adj[b].push_back(static_cast<int>(nb) + t);
    adj[nb + t].push_back(b);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
  }
  return visited == n;
}

DeltaReport delta_over_layers(const FiniteDigraph& window, int layers_lo, int layers_hi) {
  DeltaReport report;
  report.layers_lo = layers_lo;
  report.layers_hi = layers_hi;
  std::vector<FiniteBipartiteDigraph> subs;
  bool single_layer_classes = true;
  for (int n = layers_lo; n <= layers_hi; ++n) {
    std::vector<Vertex> vs;
    for (const auto& v : window.vertices)
      if (v.level == n || v.level == n + 1) vs.push_back(v);
    std::vector<std::pair<int, int>> es;
    FiniteDigraph lf = FiniteDigraph::build(n, n + 1, vs, {});
    for (const auto& [a, b] : window.edges) {
      if (window.vertices[a].level != n) continue;
      es.emplace_back(lf.index_of(window.vertices[a]), lf.index_of(window.vertices[b]));
    }
    lf = FiniteDigraph::build(n, n + 1, std::move(vs), std::move(es));
    auto classes = reachability_classes(lf);
    report.classes_per_layer[n] = static_cast<int>(classes.size());
    for (const auto& c : classes) {
      for (int e : c)
        if (lf.vertices[lf.edges[e].first].level != n) single_layer_classes = false;
      subs.push_back(class_subgraph(lf, c));
    }
  }
  report.representative = subs.front();
  report.bipartite = single_layer_classes;
  report.well_defined = true;
  for (std::size_t i = 1; i < subs.size(); ++i)
    if (!bipartite_iso(report.representative, subs[i])) {
      report.well_defined = false;
      break;
    }
  report.connected = subgraph_connected(report.representative);
  report.complete_bipartite = is_complete_bipartite(report.representative);
  return report;
}

}  // namespace

DeltaReport delta(const PeriodicLayeredDigraph& d) {
  // One full period of layers covers every layer of the infinite digraph.
  return delta_over_layers(d.window(0, d.period()), 0, d.period() - 1);
}

DeltaReport delta_window(const FiniteDigraph& f) {
  if (f.hi <= f.lo) fail(Errc::bad_params, "window has no layer");
  return delta_over_layers(f, f.lo, f.hi - 1);
}

}  // namespace hat
