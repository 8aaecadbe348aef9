#include "hat/product.hpp"

#include <numeric>

namespace hat {

FiniteBipartiteDigraph layer_product(const FiniteBipartiteDigraph& a,
                                     const FiniteBipartiteDigraph& b) {
  std::vector<std::string> bottom, top;
  bottom.reserve(a.bottom().size() * b.bottom().size());
  for (const auto& x : a.bottom())
    for (const auto& y : b.bottom()) bottom.push_back(x + "," + y);
  top.reserve(a.top().size() * b.top().size());
  for (const auto& x : a.top())
    for (const auto& y : b.top()) top.push_back(x + "," + y);
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(a.edge_count() * b.edge_count());
  for (const auto& [ab, at] : a.edges())
    for (const auto& [bb, bt] : b.edges())
      edges.emplace_back(a.bottom()[ab] + "," + b.bottom()[bb],
                         a.top()[at] + "," + b.top()[bt]);
  return {bottom, top, edges};
}

PeriodicLayeredDigraph layerwise_product(const PeriodicLayeredDigraph& g1,
                                         const PeriodicLayeredDigraph& g2,
                                         int off1, int off2) {
  int p = std::lcm(g1.period(), g2.period());
  std::vector<LayerPattern> layers;
  layers.reserve(p);
  for (int n = 0; n < p; ++n)
    layers.emplace_back(CustomLayer{layer_product(g1.layer(n - off1), g2.layer(n - off2))});
  std::string name;
  if (!g1.name().empty() && !g2.name().empty())
    name = g1.name() + "*" + g2.name();
  return PeriodicLayeredDigraph(std::move(layers), 0, g1.arity() + g2.arity(),
                                std::move(name));
}

PeriodicLayeredDigraph layerwise_product_many(const ProductDescriptor& d) {
  if (d.factors.size() < 2)
    fail(Errc::bad_params, "n-ary product needs at least two factors");
  if (d.offsets.size() != d.factors.size())
    fail(Errc::bad_params, "need one offset per factor");
  PeriodicLayeredDigraph acc =
      layerwise_product(d.factors[0], d.factors[1], d.offsets[0], d.offsets[1]);
  for (std::size_t i = 2; i < d.factors.size(); ++i)
    acc = layerwise_product(acc, d.factors[i], 0, d.offsets[i]);
  return acc;
}

PeriodicLayeredDigraph shift(const PeriodicLayeredDigraph& g, int t) {
  return PeriodicLayeredDigraph(g.patterns(), g.offset() + t, g.arity(), g.name());
}

PeriodicLayeredDigraph shift_product(const PeriodicLayeredDigraph& g) {
  int l = g.period();
  if (l == 1) return g;
  ProductDescriptor d;
  d.factors.assign(l, g);
  d.offsets.resize(l);
  std::iota(d.offsets.begin(), d.offsets.end(), 0);
  PeriodicLayeredDigraph out = layerwise_product_many(d);
  return PeriodicLayeredDigraph(out.patterns(), out.offset(), out.arity(),
                                g.name().empty() ? "" : "shifts(" + g.name() + ")");
}

}  // namespace hat
