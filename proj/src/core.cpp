#include "hat/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hat {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::incompatible_fibers: return "IncompatibleFibers";
    case Errc::empty_layer: return "EmptyLayer";
    case Errc::bad_params: return "BadParams";
    case Errc::foreign_vertex: return "ForeignVertex";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::not_an_arc: return "NotAnArc";
    case Errc::impossible_coordinate: return "ImpossibleCoordinate";
    case Errc::empty_edge_set: return "EmptyEdgeSet";
    case Errc::involver_adjacency: return "InvolverAdjacency";
    case Errc::window_too_large: return "WindowTooLarge";
    case Errc::too_large: return "TooLarge";
    case Errc::unverified_generator: return "UnverifiedGenerator";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::schema_error: return "SchemaError";
    case Errc::usage_error: return "UsageError";
  }
  return "Error";
}

int floor_mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

std::string join_coords(const Coords& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += c[i];
  }
  return out;
}

Coords split_coords(const std::string& flat) {
  Coords out;
  std::string cur;
  for (char ch : flat) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string Vertex::str() const {
  std::string out = "(" + std::to_string(level);
  for (const auto& c : coords) out += "," + c;
  return out + ")";
}

namespace {

std::string strip_space(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Label components take part in the "(level,a,b)" and "a,b" flat encodings:
// commas join the components of product labels, the other delimiters belong
// to the arc syntax.
void check_label(const std::string& label) {
  for (const std::string& part : split_coords(label)) {
    if (part.empty()) fail(Errc::bad_params, "empty component in fiber label '" + label + "'");
    for (char c : part)
      if (c == '(' || c == ')' || c == '>' ||
          std::isspace(static_cast<unsigned char>(c)))
        fail(Errc::bad_params, "fiber label '" + label + "' contains a delimiter character");
  }
}

}  // namespace

Vertex parse_vertex(const std::string& text) {
  std::string s = strip_space(text);
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    fail(Errc::syntax_error, "vertex literal must look like \"(level,label,...)\": " + text);
  Coords parts = split_coords(s.substr(1, s.size() - 2));
  if (parts.size() < 2)
    fail(Errc::syntax_error, "vertex literal needs a level and at least one label: " + text);
  Vertex v;
  try {
    std::size_t used = 0;
    v.level = std::stoi(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(Errc::syntax_error, "bad level '" + parts[0] + "' in vertex literal: " + text);
  }
  v.coords.assign(parts.begin() + 1, parts.end());
  for (const auto& c : v.coords)
    if (c.empty()) fail(Errc::syntax_error, "empty label in vertex literal: " + text);
  return v;
}

FiniteBipartiteDigraph::FiniteBipartiteDigraph(
    std::vector<std::string> bottom, std::vector<std::string> top,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : bottom_(std::move(bottom)), top_(std::move(top)) {
  for (std::size_t i = 0; i < bottom_.size(); ++i) {
    if (!bidx_.emplace(bottom_[i], static_cast<int>(i)).second)
      fail(Errc::bad_params, "duplicate bottom label '" + bottom_[i] + "'");
  }
  for (std::size_t i = 0; i < top_.size(); ++i) {
    if (!tidx_.emplace(top_[i], static_cast<int>(i)).second)
      fail(Errc::bad_params, "duplicate top label '" + top_[i] + "'");
  }
  edges_.reserve(edges.size());
  for (const auto& [b, t] : edges) {
    auto bi = bidx_.find(b);
    auto ti = tidx_.find(t);
    if (bi == bidx_.end())
      fail(Errc::bad_params, "edge references unknown bottom label '" + b + "'");
    if (ti == tidx_.end())
      fail(Errc::bad_params, "edge references unknown top label '" + t + "'");
    edges_.emplace_back(bi->second, ti->second);
  }
  std::sort(edges_.begin(), edges_.end());
  auto last = std::unique(edges_.begin(), edges_.end());
  if (last != edges_.end()) fail(Errc::bad_params, "duplicate edge");
}

int FiniteBipartiteDigraph::bottom_index(const std::string& label) const {
  auto it = bidx_.find(label);
  return it == bidx_.end() ? -1 : it->second;
}

int FiniteBipartiteDigraph::top_index(const std::string& label) const {
  auto it = tidx_.find(label);
  return it == tidx_.end() ? -1 : it->second;
}

bool FiniteBipartiteDigraph::has_edge(const std::string& b, const std::string& t) const {
  int bi = bottom_index(b), ti = top_index(t);
  if (bi < 0 || ti < 0) return false;
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(bi, ti));
}

std::pair<std::string, std::string> FiniteBipartiteDigraph::edge_labels(std::size_t i) const {
  return {bottom_[edges_[i].first], top_[edges_[i].second]};
}

int FiniteBipartiteDigraph::out_degree(int bottom_idx) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.first == bottom_idx);
  return d;
}

int FiniteBipartiteDigraph::in_degree(int top_idx) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.second == top_idx);
  return d;
}

int FiniteBipartiteDigraph::max_out_degree() const {
  int best = 0;
  for (std::size_t i = 0; i < bottom_.size(); ++i)
    best = std::max(best, out_degree(static_cast<int>(i)));
  return best;
}

std::vector<std::string> default_alphabet(int n) {
  if (n == 3) return {"-", "o", "+"};
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

namespace {

int paper_value(const std::string& label) {
  if (label == "-") return -1;
  if (label == "o") return 0;
  return 1;
}

FiniteBipartiteDigraph expand_complete(const CompleteBipartite& p) {
  if (p.n < 1 || p.m < 1) fail(Errc::bad_params, "complete bipartite sides must be >= 1");
  auto bottom = default_alphabet(p.n);
  auto top = default_alphabet(p.m);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& b : bottom)
    for (const auto& t : top) edges.emplace_back(b, t);
  return {bottom, top, edges};
}

FiniteBipartiteDigraph expand_alternating(const AlternatingCycle& p) {
  if (p.size < 4 || p.size % 2 != 0)
    fail(Errc::bad_params, "alternating cycle size must be even and >= 4");
  int k = p.size / 2;
  auto labels = default_alphabet(k);
  std::vector<std::pair<std::string, std::string>> edges;
  if (p.size == 6) {
    // The paper's encoding of the alternating 6-cycle: (x,y) is an edge
    // iff x + y != 0 over {-1, 0, 1}.
    for (const auto& b : labels)
      for (const auto& t : labels)
        if (paper_value(b) + paper_value(t) != 0) edges.emplace_back(b, t);
  } else {
    for (int i = 0; i < k; ++i) {
      edges.emplace_back(labels[i], labels[i]);
      edges.emplace_back(labels[i], labels[(i + 1) % k]);
    }
  }
  return {labels, labels, edges};
}

FiniteBipartiteDigraph expand_matching(const Matching& p) {
  if (p.n < 1) fail(Errc::bad_params, "matching size must be >= 1");
  auto labels = default_alphabet(p.n);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& l : labels) edges.emplace_back(l, l);
  return {labels, labels, edges};
}

}  // namespace

FiniteBipartiteDigraph expand_pattern(const LayerPattern& p) {
  return std::visit(
      [](const auto& v) -> FiniteBipartiteDigraph {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CompleteBipartite>) return expand_complete(v);
        else if constexpr (std::is_same_v<T, AlternatingCycle>) return expand_alternating(v);
        else if constexpr (std::is_same_v<T, Matching>) return expand_matching(v);
        else return v.graph;
      },
      p);
}

FiniteDigraph FiniteDigraph::build(int lo, int hi, std::vector<Vertex> vertices,
                                   std::vector<std::pair<int, int>> edges) {
  FiniteDigraph f;
  f.lo = lo;
  f.hi = hi;
  f.vertices = std::move(vertices);
  std::sort(edges.begin(), edges.end());
  f.edges = std::move(edges);
  f.out.assign(f.vertices.size(), {});
  f.in.assign(f.vertices.size(), {});
  for (const auto& [a, b] : f.edges) {
    f.out[a].push_back(b);
    f.in[b].push_back(a);
  }
  for (std::size_t i = 0; i < f.vertices.size(); ++i)
    f.index_.emplace(f.vertices[i], static_cast<int>(i));
  return f;
}

int FiniteDigraph::index_of(const Vertex& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

FiniteDigraph to_window(const FiniteBipartiteDigraph& g, int level) {
  std::vector<Vertex> vs;
  vs.reserve(g.bottom().size() + g.top().size());
  for (const auto& b : g.bottom()) vs.push_back({level, split_coords(b)});
  for (const auto& t : g.top()) vs.push_back({level + 1, split_coords(t)});
  std::vector<std::pair<int, int>> es;
  int base = static_cast<int>(g.bottom().size());
  es.reserve(g.edge_count());
  for (const auto& [b, t] : g.edges()) es.emplace_back(b, base + t);
  return FiniteDigraph::build(level, level + 1, std::move(vs), std::move(es));
}

PeriodicLayeredDigraph::PeriodicLayeredDigraph(std::vector<LayerPattern> patterns,
                                               int offset, int arity,
                                               std::string name)
    : patterns_(std::move(patterns)), offset_(offset), arity_(arity),
      name_(std::move(name)) {
  if (patterns_.empty()) fail(Errc::bad_params, "period must be >= 1");
  if (arity_ < 1) fail(Errc::bad_params, "arity must be >= 1");
  expanded_.reserve(patterns_.size());
  for (const auto& p : patterns_) expanded_.push_back(expand_pattern(p));
  for (std::size_t i = 0; i < expanded_.size(); ++i) {
    const auto& g = expanded_[i];
    if (g.edge_count() == 0)
      fail(Errc::empty_layer, "layer pattern " + std::to_string(i) +
                                  " has no edges, so the leveling is not an epimorphism");
    for (const auto& l : g.bottom()) {
      check_label(l);
      if (split_coords(l).size() != static_cast<std::size_t>(arity_))
        fail(Errc::bad_params, "label '" + l + "' does not split into arity " +
                                   std::to_string(arity_));
    }
    for (const auto& l : g.top()) check_label(l);
    const auto& next = expanded_[(i + 1) % expanded_.size()];
    if (g.top() != next.bottom())
      fail(Errc::incompatible_fibers,
           "top fiber of pattern " + std::to_string(i) +
               " does not match bottom fiber of pattern " +
               std::to_string((i + 1) % expanded_.size()));
  }
}

const FiniteBipartiteDigraph& PeriodicLayeredDigraph::base_layer(int index) const {
  return expanded_[index];
}

const FiniteBipartiteDigraph& PeriodicLayeredDigraph::layer(int level) const {
  return expanded_[floor_mod(level - offset_, period())];
}

const std::vector<std::string>& PeriodicLayeredDigraph::fiber(int level) const {
  return layer(level).bottom();
}

bool PeriodicLayeredDigraph::has_vertex(const Vertex& v) const {
  if (v.coords.size() != static_cast<std::size_t>(arity_)) return false;
  return layer(v.level).bottom_index(join_coords(v.coords)) >= 0;
}

bool PeriodicLayeredDigraph::has_edge(const Vertex& u, const Vertex& v) const {
  if (!has_vertex(u))
    fail(Errc::foreign_vertex, u.str() + " is not a vertex of " +
                                   (name_.empty() ? "this digraph" : name_));
  if (!has_vertex(v))
    fail(Errc::foreign_vertex, v.str() + " is not a vertex of " +
                                   (name_.empty() ? "this digraph" : name_));
  if (v.level != u.level + 1) return false;
  return layer(u.level).has_edge(join_coords(u.coords), join_coords(v.coords));
}

FiniteDigraph PeriodicLayeredDigraph::window(int lo, int hi) const {
  if (lo > hi) fail(Errc::bad_params, "window bounds must satisfy lo <= hi");
  std::vector<Vertex> vs;
  std::vector<int> level_base;  // first vertex index of each level
  for (int n = lo; n <= hi; ++n) {
    level_base.push_back(static_cast<int>(vs.size()));
    for (const auto& label : fiber(n)) vs.push_back({n, split_coords(label)});
  }
  std::vector<std::pair<int, int>> es;
  for (int n = lo; n < hi; ++n) {
    int b0 = level_base[n - lo];
    int t0 = level_base[n + 1 - lo];
    for (const auto& [b, t] : layer(n).edges()) es.emplace_back(b0 + b, t0 + t);
  }
  return FiniteDigraph::build(lo, hi, std::move(vs), std::move(es));
}

bool PeriodicLayeredDigraph::same_structure(const PeriodicLayeredDigraph& o) const {
  if (period() != o.period() || arity_ != o.arity_) return false;
  for (int n = 0; n < period(); ++n)
    if (!(layer(n) == o.layer(n))) return false;
  return true;
}

int level_of(const Vertex& v) { return v.level; }

std::string Arc::str() const {
  std::string out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ">";
    out += vertices[i].str();
  }
  return out;
}

Arc Arc::from_vertices(const PeriodicLayeredDigraph& d, std::vector<Vertex> vs) {
  if (vs.empty()) fail(Errc::not_an_arc, "an arc needs at least one vertex");
  if (vs.size() == 1 && !d.has_vertex(vs[0]))
    fail(Errc::foreign_vertex, vs[0].str() + " is not a vertex");
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (!d.has_edge(vs[i], vs[i + 1]))
      fail(Errc::not_an_arc,
           "broken chain: " + vs[i].str() + ">" + vs[i + 1].str() + " is not an edge");
  }
  return Arc{std::move(vs)};
}

Arc parse_arc(const std::string& text) {
  std::string s = strip_space(text);
  std::vector<Vertex> vs;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '>' && depth == 0) {
      vs.push_back(parse_vertex(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) vs.push_back(parse_vertex(cur));
  if (vs.empty()) fail(Errc::syntax_error, "empty arc literal");
  return Arc{std::move(vs)};
}

}  // namespace hat
