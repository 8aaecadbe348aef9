#ifndef HAT_PRODUCT_HPP
#define HAT_PRODUCT_HPP

#include "hat/core.hpp"

namespace hat {

// Layerwise product of two layers: bottoms/tops are flattened label pairs,
// edges are the pairs of factor edges.
FiniteBipartiteDigraph layer_product(const FiniteBipartiteDigraph& a,
                                     const FiniteBipartiteDigraph& b);

// Layerwise direct product. A factor with epimorphism offset t contributes,
// at product level n, its layer at level n - t; extra offsets stack on top
// of the factors' own offsets. The result is materialized over one lcm
// period with Custom layers and offset 0.
PeriodicLayeredDigraph layerwise_product(const PeriodicLayeredDigraph& g1,
                                         const PeriodicLayeredDigraph& g2,
                                         int off1 = 0, int off2 = 0);

struct ProductDescriptor {
  std::vector<PeriodicLayeredDigraph> factors;
  std::vector<int> offsets;  // one per factor
};

PeriodicLayeredDigraph layerwise_product_many(const ProductDescriptor& d);

// Same digraph with its epimorphism offset increased by t.
PeriodicLayeredDigraph shift(const PeriodicLayeredDigraph& g, int t);

// Product of the period-many shifts of g (the paper's "product of the l
// different shifts").
PeriodicLayeredDigraph shift_product(const PeriodicLayeredDigraph& g);

}  // namespace hat

#endif
