#ifndef HAT_ZOO_HPP
#define HAT_ZOO_HPP

#include "hat/core.hpp"

namespace hat {

// Period-2 factor: a K_{3,3} layer followed by the alternating 6-cycle,
// fibers {-,o,+}.
PeriodicLayeredDigraph factor_L();

// The counterexample D = L x_{phi1,phi2} L (second factor offset by one).
PeriodicLayeredDigraph digraph_D();

// The integer line: period 1, single-vertex fibers.
PeriodicLayeredDigraph factor_Z();

// One K_{n,n} layer followed by m matchings.
PeriodicLayeredDigraph factor_mckay_praeger(int n, int m);

// Periodic factor from an explicit pattern list. Involvers (non-complete
// layers with out-valency >= 2) must be separated cyclically by at least
// one complete bipartite layer unless the guard is disabled.
PeriodicLayeredDigraph factor_with_involvers(std::vector<LayerPattern> patterns,
                                             bool allow_adjacent_involvers = false);

inline constexpr std::size_t kDefaultTreeBudget = 200000;

// Leveled regular tree: every vertex has in_degree predecessors one level
// down and out_degree successors one level up. Windows are generated from a
// root anchored at level 0.
struct TreeLeveledDigraph {
  int in_degree = 1;
  int out_degree = 1;

  FiniteDigraph window(int lo, int hi,
                       std::size_t vertex_budget = kDefaultTreeBudget) const;
};

TreeLeveledDigraph tree_factor(int din, int dout);

// Windowed layerwise product of the (1,dout)-tree with the (din,1)-tree.
FiniteDigraph diestel_leader(int dout, int din, int lo, int hi,
                             std::size_t vertex_budget = kDefaultTreeBudget);

}  // namespace hat

#endif
