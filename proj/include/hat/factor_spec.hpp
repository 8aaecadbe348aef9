#ifndef HAT_FACTOR_SPEC_HPP
#define HAT_FACTOR_SPEC_HPP

#include "hat/core.hpp"

namespace hat {

struct FactorSpec {
  int period = 1;
  std::vector<LayerPattern> layers;
  int offset = 0;
  std::string name;

  bool operator==(const FactorSpec&) const = default;
};

// JSON schema:
//   {"period":2,
//    "layers":[{"type":"complete_bipartite","n":3,"m":3},
//              {"type":"alternating_cycle","size":6},
//              {"type":"matching","n":3},
//              {"type":"custom","bottom":[...],"top":[...],"edges":[[b,t],...]}],
//    "offset":0, "name":"L"}
// Unknown fields are rejected.
FactorSpec parse_factor_spec(const std::string& text);
std::string serialize_factor_spec(const FactorSpec& spec);

PeriodicLayeredDigraph build_periodic(const FactorSpec& spec);

}  // namespace hat

#endif
