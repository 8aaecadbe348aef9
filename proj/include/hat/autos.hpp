#ifndef HAT_AUTOS_HPP
#define HAT_AUTOS_HPP

#include <memory>
#include <optional>
#include <string_view>

#include "hat/core.hpp"

namespace hat {

// Fiber bijection as a lookup table over flat labels ("x,y" for products);
// labels absent from the table are fixed.
using CoordMap = std::map<std::string, std::string>;

// An automorphism of a periodic layered digraph: a global level shift plus
// one fiber bijection per level. The per-level bijections are a periodic
// background family (period q) with finitely many per-level overrides.
class LayeredAutomorphism {
 public:
  LayeredAutomorphism(std::shared_ptr<const PeriodicLayeredDigraph> domain,
                      int shift, std::vector<CoordMap> background,
                      std::map<int, CoordMap> overrides);

  static LayeredAutomorphism identity(
      std::shared_ptr<const PeriodicLayeredDigraph> domain);

  const PeriodicLayeredDigraph& domain() const { return *domain_; }
  const std::shared_ptr<const PeriodicLayeredDigraph>& domain_ptr() const {
    return domain_;
  }
  int shift() const { return shift_; }
  int background_period() const { return static_cast<int>(background_.size()); }
  const std::vector<CoordMap>& background() const { return background_; }
  const std::map<int, CoordMap>& overrides() const { return overrides_; }

  // The effective fiber map at a level (override wins over background).
  const CoordMap& map_at(int level) const;

  Vertex apply(const Vertex& v) const;      // validates input and image
  Vertex apply_raw(const Vertex& v) const;  // no image validation

  Arc apply(const Arc& a) const;

 private:
  std::shared_ptr<const PeriodicLayeredDigraph> domain_;
  int shift_ = 0;
  std::vector<CoordMap> background_;  // size q >= 1
  std::map<int, CoordMap> overrides_;
};

// a after b. Throws domain_mismatch when the domains differ.
LayeredAutomorphism compose(const LayeredAutomorphism& a,
                            const LayeredAutomorphism& b);
LayeredAutomorphism inverse(const LayeredAutomorphism& a);

bool pointwise_equal(const LayeredAutomorphism& a, const LayeredAutomorphism& b,
                     int lo, int hi);
// Pointwise equality on a window two periods wider than the union of both
// supports (sound by periodicity).
bool equal_automorphisms(const LayeredAutomorphism& a,
                         const LayeredAutomorphism& b);

struct AutVerifyReport {
  bool ok = false;
  long long support_vertices = 0;  // -1 when infinite
  long long incident_edges = 0;    // -1 when infinite
  std::optional<std::pair<Vertex, Vertex>> witness;  // failing preimage edge
  int checked_lo = 0, checked_hi = 0;
  std::string reason;
};

// Exhaustive check over one joint period beyond the override region
// (sound by periodicity): per-level bijectivity and edge preservation in
// both directions.
AutVerifyReport verify_automorphism(const PeriodicLayeredDigraph& d,
                                    const LayeredAutomorphism& a);

// The eight named generators over the builtin counterexample D.
// Lower/upper in the field names transcribe the paper's sub-/superscripts;
// the "-" indexed generators are the identity by convention.
struct GeneratorCatalog {
  std::shared_ptr<const PeriodicLayeredDigraph> d;
  LayeredAutomorphism sigma, theta_lo, theta_lp, theta_uo, theta_up,
      alpha_lo, alpha_lp, alpha_uo, identity;

  const LayeredAutomorphism& theta_lm() const { return identity; }
  const LayeredAutomorphism& theta_um() const { return identity; }
  const LayeredAutomorphism& alpha_lm() const { return identity; }
  const LayeredAutomorphism& alpha_um() const { return identity; }
  const LayeredAutomorphism& alpha_up() const { return identity; }

  // Word tokens: sigma, theta_o, theta_p, theta^o, theta^p, alpha_o,
  // alpha_p, alpha^o, id. Returns nullptr for unknown tokens.
  const LayeredAutomorphism* by_token(std::string_view token) const;
};

GeneratorCatalog generators_D();

// Generator words, e.g. "sigma^-1 alpha_o theta^o sigma^2" (leftmost factor
// applied last).
std::vector<std::string> parse_word(const std::string& text);
std::string format_word(const std::vector<std::string>& tokens);
LayeredAutomorphism word_to_automorphism(const GeneratorCatalog& cat,
                                         const std::vector<std::string>& tokens);
LayeredAutomorphism sigma_power(const GeneratorCatalog& cat, int k);

struct CanonicalizationResult {
  LayeredAutomorphism psi;
  Arc image;
  std::vector<std::string> word;  // normalized: identities dropped, shifts merged
};

// The constructive recipe for builtin D: sigma^m to bring the initial
// vertex to level 0, the theta stage to move it onto the baseline, then one
// (sigma^-1 . alpha_x . alpha^y) round per arc edge. The image equals the
// baseline arc z ending at (0,-,-).
CanonicalizationResult canonicalize_arc(const GeneratorCatalog& cat, const Arc& a);
CanonicalizationResult canonicalize_arc(const PeriodicLayeredDigraph& d, const Arc& a);

}  // namespace hat

#endif
