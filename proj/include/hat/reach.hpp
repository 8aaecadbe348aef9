#ifndef HAT_REACH_HPP
#define HAT_REACH_HPP

#include <optional>

#include "hat/core.hpp"

namespace hat {

// Partition of the edge set under alternating-walk reachability. Classes are
// ordered by their least edge index; members ascend.
std::vector<std::vector<int>> reachability_classes(const FiniteDigraph& f);

// The bipartite digraph spanned by one reachability class. All edges of a
// class lie in a single layer (alternating walks cannot change layer under
// Property Z), which this asserts.
FiniteBipartiteDigraph class_subgraph(const FiniteDigraph& f,
                                      const std::vector<int>& edge_ids);

bool is_complete_bipartite(const FiniteBipartiteDigraph& g);

struct BipartiteIso {
  std::vector<int> bottom_map;  // index in f1 -> index in f2
  std::vector<int> top_map;
};

// Side- and direction-preserving isomorphism, or nullopt. Deterministic:
// the first solution of a fixed search order.
std::optional<BipartiteIso> bipartite_iso(const FiniteBipartiteDigraph& f1,
                                          const FiniteBipartiteDigraph& f2);

struct DeltaReport {
  FiniteBipartiteDigraph representative;
  bool well_defined = false;
  bool connected = false;
  bool bipartite = false;
  bool complete_bipartite = false;
  std::map<int, int> classes_per_layer;
  int layers_lo = 0, layers_hi = 0;  // inclusive range of layer indices checked
};

// Checks one full period of layers (enough by periodicity).
DeltaReport delta(const PeriodicLayeredDigraph& d);

// Same verdicts computed from the layers of a finite window (used for
// digraphs that only exist window-wise, like tree products).
DeltaReport delta_window(const FiniteDigraph& f);

}  // namespace hat

#endif
