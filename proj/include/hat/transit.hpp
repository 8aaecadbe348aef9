#ifndef HAT_TRANSIT_HPP
#define HAT_TRANSIT_HPP

#include "hat/autos.hpp"
#include "hat/core.hpp"

namespace hat {

// All n-arcs fully inside f, in lexicographic vertex-index order. n = 0
// yields one 0-arc per vertex.
std::vector<Arc> enumerate_arcs(const FiniteDigraph& f, int n,
                                const std::optional<Vertex>& from = std::nullopt);

struct AutGroup {
  std::vector<std::vector<int>> elements;    // all automorphisms, incl. identity
  std::vector<std::vector<int>> generators;  // small generating subset
  std::size_t order() const { return elements.size(); }
};

// Exhaustive backtracking over level-, direction-preserving vertex
// permutations, with degree-partition refinement. Independent of the
// layered-automorphism machinery by design: it is the oracle.
AutGroup brute_force_aut_group(const FiniteDigraph& f, std::size_t max_vertices = 40);
AutGroup brute_force_aut_group(const FiniteBipartiteDigraph& g,
                               std::size_t max_vertices = 40);

struct OrbitReport {
  int n = 0;
  long long arc_count = 0;
  int orbit_count = 0;
  std::vector<long long> orbit_sizes;  // descending
  std::string method;                  // "brute-force-group" | "generator-closure"
  int window_lo = 0, window_hi = 0;
  bool complete = true;  // false when closure images left the window
};

// Orbits of the n-arcs of f under explicit vertex permutations.
OrbitReport arc_orbits(const FiniteDigraph& f, int n,
                       const std::vector<std::vector<int>>& perms);

// Orbits of the n-arcs of a window under layered automorphisms of the
// ambient digraph. Generators are verified first (UnverifiedGenerator).
// Images leaving the window are discarded and `complete` is cleared; an
// orbit count of 1 is still sound since discarding can only split orbits.
OrbitReport arc_orbits_layered(const PeriodicLayeredDigraph& d,
                               const FiniteDigraph& window, int n,
                               const std::vector<LayeredAutomorphism>& gens);

struct HatCertificate {
  int n = 0;
  long long arcs = 0;
  bool certified = false;
  std::string method;  // "constructive" | "orbit-evidence"
  std::optional<OrbitReport> orbits;
};

// Constructive path (builtin D only): every n-arc in the window must
// canonicalize exactly onto the baseline arc z.
std::vector<HatCertificate> certify_window_hat_constructive(
    const PeriodicLayeredDigraph& d, int n_max, int lo, int hi);

// Evidence path: orbit closure under supplied verified generators.
std::vector<HatCertificate> certify_window_hat_evidence(
    const PeriodicLayeredDigraph& d, int n_max, int lo, int hi,
    const std::vector<LayeredAutomorphism>& gens);

// Dispatcher: the builtin D gets the constructive path, anything else the
// evidence path (with {sigma^period} as the fallback generator set).
std::vector<HatCertificate> certify_window_hat(
    const PeriodicLayeredDigraph& d, int n_max, int lo, int hi,
    const std::optional<std::vector<LayeredAutomorphism>>& gens = std::nullopt);

}  // namespace hat

#endif
