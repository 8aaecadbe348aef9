#include "hat/transit.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hat/zoo.hpp"

namespace hat {

std::vector<Arc> enumerate_arcs(const FiniteDigraph& f, int n,
                                const std::optional<Vertex>& from) {
  if (n < 0) fail(Errc::bad_params, "arc length must be >= 0");
  std::vector<int> starts;
  if (from) {
    int i = f.index_of(*from);
    if (i < 0) fail(Errc::foreign_vertex, from->str() + " is not in the window");
    starts.push_back(i);
  } else {
    starts.resize(f.vertices.size());
    std::iota(starts.begin(), starts.end(), 0);
  }
  std::vector<Arc> arcs;
  std::vector<int> chain;
  auto extend = [&](auto&& self, int v) -> void {
    chain.push_back(v);
    if (static_cast<int>(chain.size()) == n + 1) {
      Arc a;
      a.vertices.reserve(chain.size());
      for (int i : chain) a.vertices.push_back(f.vertices[i]);
      arcs.push_back(std::move(a));
    } else {
      for (int w : f.out[v]) self(self, w);
    }
    chain.pop_back();
  };
  for (int s : starts) extend(extend, s);
  return arcs;
}

namespace {

struct AutSearch {
  const FiniteDigraph& f;
  int n;
  std::vector<int> color;
  std::vector<int> mapping;
  std::vector<char> used;
  std::vector<std::vector<int>>* found;

  bool consistent(int v, int w) const {
    if (color[v] != color[w]) return false;
    for (int j = 0; j < v; ++j) {
      bool e1 = std::binary_search(f.edges.begin(), f.edges.end(), std::make_pair(j, v));
      bool e2 = std::binary_search(f.edges.begin(), f.edges.end(),
                                   std::make_pair(mapping[j], w));
      if (e1 != e2) return false;
      e1 = std::binary_search(f.edges.begin(), f.edges.end(), std::make_pair(v, j));
      e2 = std::binary_search(f.edges.begin(), f.edges.end(),
                              std::make_pair(w, mapping[j]));
      if (e1 != e2) return false;
    }
    return true;
  }

  void run(int v) {
    if (v == n) {
      found->push_back(mapping);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || !consistent(v, w)) continue;
      mapping[v] = w;
      used[w] = 1;
      run(v + 1);
      used[w] = 0;
    }
  }
};

std::vector<int> refine_colors(const FiniteDigraph& f) {
  int n = static_cast<int>(f.vertices.size());
  std::vector<int> color(n);
  {
    std::map<std::tuple<int, int, int>, int> ids;
    for (int i = 0; i < n; ++i)
      ids.emplace(std::tuple{f.vertices[i].level, static_cast<int>(f.out[i].size()),
                             static_cast<int>(f.in[i].size())},
                  0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (int i = 0; i < n; ++i)
      color[i] = ids[{f.vertices[i].level, static_cast<int>(f.out[i].size()),
                      static_cast<int>(f.in[i].size())}];
  }
  for (int round = 0; round < 16; ++round) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::map<Sig, int> ids;
    std::vector<Sig> sigs(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> oc, ic;
      for (int w : f.out[i]) oc.push_back(color[w]);
      for (int w : f.in[i]) ic.push_back(color[w]);
      std::sort(oc.begin(), oc.end());
      std::sort(ic.begin(), ic.end());
      sigs[i] = {color[i], std::move(oc), std::move(ic)};
      ids.emplace(sigs[i], 0);
    }
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int c = ids[sigs[i]];
      if (c != color[i]) changed = true;
      color[i] = c;
    }
    if (!changed) break;
  }
  return color;
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

// Greedy generating subset: keep an element only if it is not already in the
// closure of the kept ones. Skipped for big groups, where the element list
// itself serves as the generator list.
std::vector<std::vector<int>> greedy_generators(
    const std::vector<std::vector<int>>& elements) {
  if (elements.size() > 2000) return elements;
  std::size_t n = elements.empty() ? 0 : elements[0].size();
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> closure{id};
  std::vector<std::vector<int>> gens;
  for (const auto& e : elements) {
    if (closure.count(e)) continue;
    gens.push_back(e);
    std::vector<std::vector<int>> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& x : frontier)
        for (const auto& g : gens) {
          auto y = compose_perm(g, x);
          if (closure.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

}  // namespace

AutGroup brute_force_aut_group(const FiniteDigraph& f, std::size_t max_vertices) {
  if (f.vertices.size() > max_vertices)
    fail(Errc::too_large, "graph exceeds the brute-force bound of " +
                              std::to_string(max_vertices) + " vertices");
  AutGroup g;
  AutSearch search{f, static_cast<int>(f.vertices.size()), refine_colors(f),
                   std::vector<int>(f.vertices.size()),
                   std::vector<char>(f.vertices.size(), 0), &g.elements};
  search.run(0);
  g.generators = greedy_generators(g.elements);
  return g;
}

AutGroup brute_force_aut_group(const FiniteBipartiteDigraph& g,
                               std::size_t max_vertices) {
  return brute_force_aut_group(to_window(g), max_vertices);
}

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

OrbitReport arc_orbits(const FiniteDigraph& f, int n,
                       const std::vector<std::vector<int>>& perms) {
  std::vector<Arc> arcs = enumerate_arcs(f, n);
  OrbitReport report;
  report.n = n;
  report.method = "brute-force-group";
  report.window_lo = f.lo;
  report.window_hi = f.hi;
  report.arc_count = static_cast<long long>(arcs.size());
  if (arcs.empty()) {
    report.orbit_count = 0;
    return report;
  }
  std::map<std::vector<int>, int> id_of;
  std::vector<std::vector<int>> idx_arcs;
  for (const auto& a : arcs) {
    std::vector<int> idx;
    for (const auto& v : a.vertices) idx.push_back(f.index_of(v));
    id_of.emplace(idx, static_cast<int>(idx_arcs.size()));
    idx_arcs.push_back(std::move(idx));
  }
  UnionFind uf(static_cast<int>(idx_arcs.size()));
  for (std::size_t i = 0; i < idx_arcs.size(); ++i)
    for (const auto& p : perms) {
      std::vector<int> img;
      img.reserve(idx_arcs[i].size());
      for (int v : idx_arcs[i]) img.push_back(p[v]);
      auto it = id_of.find(img);
      // A vertex permutation of the whole graph maps arcs to arcs.
      if (it != id_of.end()) uf.unite(static_cast<int>(i), it->second);
    }
  std::map<int, long long> sizes;
  for (std::size_t i = 0; i < idx_arcs.size(); ++i) ++sizes[uf.find(static_cast<int>(i))];
  for (const auto& [root, sz] : sizes) report.orbit_sizes.push_back(sz);
  std::sort(report.orbit_sizes.rbegin(), report.orbit_sizes.rend());
  report.orbit_count = static_cast<int>(sizes.size());
  return report;
}

OrbitReport arc_orbits_layered(const PeriodicLayeredDigraph& d,
                               const FiniteDigraph& window, int n,
                               const std::vector<LayeredAutomorphism>& gens) {
  for (const auto& g : gens) {
    AutVerifyReport v = verify_automorphism(d, g);
    if (!v.ok)
      fail(Errc::unverified_generator,
           "generator failed verification: " + v.reason);
  }
  std::vector<Arc> arcs = enumerate_arcs(window, n);
  OrbitReport report;
  report.n = n;
  report.method = "generator-closure";
  report.window_lo = window.lo;
  report.window_hi = window.hi;
  report.arc_count = static_cast<long long>(arcs.size());
  if (arcs.empty()) {
    report.orbit_count = 0;
    return report;
  }
  std::map<Arc, int> id_of;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    id_of.emplace(arcs[i], static_cast<int>(i));
  std::vector<LayeredAutomorphism> maps = gens;
  for (const auto& g : gens) maps.push_back(inverse(g));
  UnionFind uf(static_cast<int>(arcs.size()));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (const auto& g : maps) {
      Arc img;
      img.vertices.reserve(arcs[i].vertices.size());
      bool inside = true;
      for (const auto& v : arcs[i].vertices) {
        Vertex w = g.apply_raw(v);
        if (window.index_of(w) < 0) {
          inside = false;
          break;
        }
        img.vertices.push_back(std::move(w));
      }
      if (!inside) {
        report.complete = false;
        continue;
      }
      auto it = id_of.find(img);
      if (it != id_of.end()) uf.unite(static_cast<int>(i), it->second);
    }
  }
  std::map<int, long long> sizes;
  for (std::size_t i = 0; i < arcs.size(); ++i) ++sizes[uf.find(static_cast<int>(i))];
  for (const auto& [root, sz] : sizes) report.orbit_sizes.push_back(sz);
  std::sort(report.orbit_sizes.rbegin(), report.orbit_sizes.rend());
  report.orbit_count = static_cast<int>(sizes.size());
  return report;
}

namespace {

Arc baseline_arc(int n) {
  std::vector<Vertex> vs;
  for (int i = -n; i <= 0; ++i) vs.push_back({i, {"-", "-"}});
  return Arc{std::move(vs)};
}

}  // namespace

std::vector<HatCertificate> certify_window_hat_constructive(
    const PeriodicLayeredDigraph& d, int n_max, int lo, int hi) {
  if (!d.same_structure(digraph_D()))
    fail(Errc::domain_mismatch, "the constructive path is defined over builtin D");
  GeneratorCatalog cat = generators_D();
  FiniteDigraph w = d.window(lo, hi);
  std::vector<HatCertificate> out;
  for (int n = 0; n <= n_max; ++n) {
    HatCertificate cert;
    cert.n = n;
    cert.method = "constructive";
    Arc z = baseline_arc(n);
    bool all = true;
    std::vector<Arc> arcs = enumerate_arcs(w, n);
    cert.arcs = static_cast<long long>(arcs.size());
    for (const auto& a : arcs) {
      CanonicalizationResult r = canonicalize_arc(cat, a);
      if (r.image != z) {
        all = false;
        break;
      }
    }
    cert.certified = all;
    out.push_back(std::move(cert));
  }
  return out;
}

std::vector<HatCertificate> certify_window_hat_evidence(
    const PeriodicLayeredDigraph& d, int n_max, int lo, int hi,
    const std::vector<LayeredAutomorphism>& gens) {
  FiniteDigraph w = d.window(lo, hi);
  std::vector<HatCertificate> out;
  for (int n = 0; n <= n_max; ++n) {
    HatCertificate cert;
    cert.n = n;
    cert.method = "orbit-evidence";
    OrbitReport r = arc_orbits_layered(d, w, n, gens);
    cert.arcs = r.arc_count;
    // Discarding out-of-window images can only split true orbits, so a
    // single orbit is a sound transitivity claim for the window.
    cert.certified = r.orbit_count == 1;
    cert.orbits = std::move(r);
    out.push_back(std::move(cert));
  }
  return out;
}

std::vector<HatCertificate> certify_window_hat(
    const PeriodicLayeredDigraph& d, int n_max, int lo, int hi,
    const std::optional<std::vector<LayeredAutomorphism>>& gens) {
  if (!gens && d.same_structure(digraph_D()))
    return certify_window_hat_constructive(d, n_max, lo, hi);
  std::vector<LayeredAutomorphism> use;
  if (gens) {
    use = *gens;
  } else {
    auto dom = std::make_shared<const PeriodicLayeredDigraph>(d);
    use.push_back(LayeredAutomorphism(dom, d.period(), {}, {}));
  }
  return certify_window_hat_evidence(d, n_max, lo, hi, use);
}

}  // namespace hat
