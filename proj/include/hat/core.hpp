#ifndef HAT_CORE_HPP
#define HAT_CORE_HPP

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hat/error.hpp"

namespace hat {

// A fiber element. Arity-1 digraphs have one label per vertex, k-fold
// products a flattened k-tuple.
using Coords = std::vector<std::string>;

std::string join_coords(const Coords& c);
Coords split_coords(const std::string& flat);

int floor_mod(int a, int m);

struct Vertex {
  int level = 0;
  Coords coords;

  auto operator<=>(const Vertex&) const = default;
  std::string str() const;  // "(level,c1,c2,...)"
};

Vertex parse_vertex(const std::string& text);

// Finite bipartite digraph with all edges directed bottom -> top.
// Label order is part of the value (it fixes vertex enumeration order).
class FiniteBipartiteDigraph {
 public:
  FiniteBipartiteDigraph() = default;
  FiniteBipartiteDigraph(std::vector<std::string> bottom,
                         std::vector<std::string> top,
                         const std::vector<std::pair<std::string, std::string>>& edges);

  const std::vector<std::string>& bottom() const { return bottom_; }
  const std::vector<std::string>& top() const { return top_; }
  // Index pairs (bottom index, top index), sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  int bottom_index(const std::string& label) const;  // -1 if absent
  int top_index(const std::string& label) const;
  bool has_edge(const std::string& b, const std::string& t) const;
  std::pair<std::string, std::string> edge_labels(std::size_t i) const;

  int out_degree(int bottom_idx) const;
  int in_degree(int top_idx) const;
  int max_out_degree() const;

  bool operator==(const FiniteBipartiteDigraph& o) const {
    return bottom_ == o.bottom_ && top_ == o.top_ && edges_ == o.edges_;
  }

 private:
  std::vector<std::string> bottom_, top_;
  std::map<std::string, int> bidx_, tidx_;
  std::vector<std::pair<int, int>> edges_;
};

struct CompleteBipartite {
  int n = 1, m = 1;
  bool operator==(const CompleteBipartite&) const = default;
};
struct AlternatingCycle {
  int size = 4;  // 2k, even, >= 4
  bool operator==(const AlternatingCycle&) const = default;
};
struct Matching {
  int n = 1;
  bool operator==(const Matching&) const = default;
};
struct CustomLayer {
  FiniteBipartiteDigraph graph;
  bool operator==(const CustomLayer&) const = default;
};

using LayerPattern =
    std::variant<CompleteBipartite, AlternatingCycle, Matching, CustomLayer>;

// Canonical fiber alphabet: {-,o,+} for size 3 (the paper's -1/0/+1),
// decimal digits otherwise.
std::vector<std::string> default_alphabet(int n);

FiniteBipartiteDigraph expand_pattern(const LayerPattern& p);

// Finite window of a leveled digraph. Vertices are sorted by (level, fiber
// position); edges are index pairs into `vertices`, sorted.
struct FiniteDigraph {
  int lo = 0, hi = 0;
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> out, in;

  static FiniteDigraph build(int lo, int hi, std::vector<Vertex> vertices,
                             std::vector<std::pair<int, int>> edges);

  int index_of(const Vertex& v) const;  // -1 if absent
  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }

 private:
  std::map<Vertex, int> index_;
};

// One layer as a two-level window (bottom at `level`, top at `level`+1).
FiniteDigraph to_window(const FiniteBipartiteDigraph& g, int level = 0);

// Finite description of an infinite leveled digraph with Property Z.
// Level n uses the base pattern at index (n - offset) mod period, so a
// factor whose epimorphism is i -> i + offset pulls its pattern sequence
// shifted accordingly.
class PeriodicLayeredDigraph {
 public:
  explicit PeriodicLayeredDigraph(std::vector<LayerPattern> patterns,
                                  int offset = 0, int arity = 1,
                                  std::string name = "");

  int period() const { return static_cast<int>(patterns_.size()); }
  int offset() const { return offset_; }
  int arity() const { return arity_; }
  const std::string& name() const { return name_; }
  const std::vector<LayerPattern>& patterns() const { return patterns_; }

  const FiniteBipartiteDigraph& base_layer(int index) const;   // 0..p-1
  const FiniteBipartiteDigraph& layer(int level) const;
  const std::vector<std::string>& fiber(int level) const;      // flat labels
  std::size_t fiber_size(int level) const { return fiber(level).size(); }

  bool has_vertex(const Vertex& v) const;
  bool has_edge(const Vertex& u, const Vertex& v) const;  // throws foreign_vertex
  FiniteDigraph window(int lo, int hi) const;

  // Semantic equality: same period, arity and identical layers at every
  // level (offsets folded in).
  bool same_structure(const PeriodicLayeredDigraph& o) const;

 private:
  std::vector<LayerPattern> patterns_;
  int offset_ = 0;
  int arity_ = 1;
  std::string name_;
  std::vector<FiniteBipartiteDigraph> expanded_;  // per base index
};

int level_of(const Vertex& v);

// An n-arc as its vertex chain (n+1 vertices; a single vertex is a 0-arc).
struct Arc {
  std::vector<Vertex> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  auto operator<=>(const Arc&) const = default;
  std::string str() const;  // "(..)>(..)>..."

  // Validates the chain against d: consecutive levels +1 and every
  // consecutive pair an edge. Throws not_an_arc / foreign_vertex.
  static Arc from_vertices(const PeriodicLayeredDigraph& d,
                           std::vector<Vertex> vs);
};

Arc parse_arc(const std::string& text);  // syntax only, no digraph check

}  // namespace hat

#endif
