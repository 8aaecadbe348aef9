#include "hat/autos.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "hat/zoo.hpp"

namespace hat {

namespace {

CoordMap normalized(CoordMap m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->first == it->second) it = m.erase(it);
    else ++it;
  }
  return m;
}

const std::string& lookup(const CoordMap& m, const std::string& label) {
  auto it = m.find(label);
  return it == m.end() ? label : it->second;
}

CoordMap combine(const CoordMap& outer, const CoordMap& inner) {
  CoordMap out;
  for (const auto& [k, v] : inner) {
    const std::string& w = lookup(outer, v);
    if (w != k) out.emplace(k, w);
  }
  for (const auto& [k, v] : outer)
    if (!inner.count(k) && v != k) out.emplace(k, v);
  return out;
}

CoordMap inverted(const CoordMap& m) {
  CoordMap out;
  for (const auto& [k, v] : m)
    if (!out.emplace(v, k).second)
      fail(Errc::bad_params, "fiber map is not injective, cannot invert");
  return normalized(std::move(out));
}

}  // namespace

LayeredAutomorphism::LayeredAutomorphism(
    std::shared_ptr<const PeriodicLayeredDigraph> domain, int shift,
    std::vector<CoordMap> background, std::map<int, CoordMap> overrides)
    : domain_(std::move(domain)), shift_(shift),
      background_(std::move(background)), overrides_(std::move(overrides)) {
  if (!domain_) fail(Errc::bad_params, "automorphism needs a domain digraph");
  if (background_.empty()) background_.emplace_back();
  for (auto& m : background_) m = normalized(std::move(m));
  for (auto& [l, m] : overrides_) m = normalized(std::move(m));
}

LayeredAutomorphism LayeredAutomorphism::identity(
    std::shared_ptr<const PeriodicLayeredDigraph> domain) {
  return LayeredAutomorphism(std::move(domain), 0, {}, {});
}

const CoordMap& LayeredAutomorphism::map_at(int level) const {
  auto it = overrides_.find(level);
  if (it != overrides_.end()) return it->second;
  return background_[floor_mod(level, background_period())];
}

Vertex LayeredAutomorphism::apply_raw(const Vertex& v) const {
  const CoordMap& m = map_at(v.level);
  if (m.empty()) return Vertex{v.level + shift_, v.coords};
  auto it = m.find(join_coords(v.coords));
  if (it == m.end()) return Vertex{v.level + shift_, v.coords};
  return Vertex{v.level + shift_, split_coords(it->second)};
}

Vertex LayeredAutomorphism::apply(const Vertex& v) const {
  if (!domain_->has_vertex(v))
    fail(Errc::foreign_vertex, v.str() + " is not a vertex of the domain digraph");
  Vertex image = apply_raw(v);
  if (!domain_->has_vertex(image))
    fail(Errc::foreign_vertex,
         "image " + image.str() + " of " + v.str() + " is not a vertex (malformed map)");
  return image;
}

Arc LayeredAutomorphism::apply(const Arc& a) const {
  std::vector<Vertex> vs;
  vs.reserve(a.vertices.size());
  for (const auto& v : a.vertices) vs.push_back(apply(v));
  return Arc{std::move(vs)};
}

namespace {

void require_same_domain(const LayeredAutomorphism& a, const LayeredAutomorphism& b) {
  if (a.domain_ptr() == b.domain_ptr()) return;
  if (!a.domain().same_structure(b.domain()))
    fail(Errc::domain_mismatch, "automorphisms live on different digraphs");
}

}  // namespace

LayeredAutomorphism compose(const LayeredAutomorphism& a,
                            const LayeredAutomorphism& b) {
  require_same_domain(a, b);
  int q = std::lcm(a.background_period(), b.background_period());
  std::vector<CoordMap> bg(q);
  for (int r = 0; r < q; ++r)
    bg[r] = combine(a.background()[floor_mod(r + b.shift(), a.background_period())],
                    b.background()[floor_mod(r, b.background_period())]);
  std::map<int, CoordMap> ov;
  std::vector<int> special;
  for (const auto& [l, m] : b.overrides()) special.push_back(l);
  for (const auto& [l, m] : a.overrides()) special.push_back(l - b.shift());
  for (int l : special)
    ov[l] = combine(a.map_at(l + b.shift()), b.map_at(l));
  return LayeredAutomorphism(a.domain_ptr(), a.shift() + b.shift(),
                             std::move(bg), std::move(ov));
}

LayeredAutomorphism inverse(const LayeredAutomorphism& a) {
  int q = a.background_period();
  std::vector<CoordMap> bg(q);
  for (int r = 0; r < q; ++r)
    bg[r] = inverted(a.background()[floor_mod(r - a.shift(), q)]);
  std::map<int, CoordMap> ov;
  for (const auto& [l, m] : a.overrides()) ov[l + a.shift()] = inverted(m);
  return LayeredAutomorphism(a.domain_ptr(), -a.shift(), std::move(bg),
                             std::move(ov));
}

bool pointwise_equal(const LayeredAutomorphism& a, const LayeredAutomorphism& b,
                     int lo, int hi) {
  require_same_domain(a, b);
  for (int n = lo; n <= hi; ++n)
    for (const auto& label : a.domain().fiber(n)) {
      Vertex v{n, split_coords(label)};
      if (a.apply_raw(v) != b.apply_raw(v)) return false;
    }
  return true;
}

bool equal_automorphisms(const LayeredAutomorphism& a,
                         const LayeredAutomorphism& b) {
  require_same_domain(a, b);
  int p = std::lcm(a.domain().period(),
                   std::lcm(a.background_period(), b.background_period()));
  int lo = 0, hi = 0;
  for (const auto* aut : {&a, &b})
    for (const auto& [l, m] : aut->overrides()) {
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  return pointwise_equal(a, b, lo - 2 * p, hi + 2 * p);
}

AutVerifyReport verify_automorphism(const PeriodicLayeredDigraph& d,
                                    const LayeredAutomorphism& a) {
  if (!a.domain().same_structure(d))
    fail(Errc::domain_mismatch, "automorphism is not declared over this digraph");
  AutVerifyReport report;
  int period = std::lcm(d.period(), a.background_period());
  int omin = 0, omax = 0;
  for (const auto& [l, m] : a.overrides()) {
    omin = std::min(omin, l);
    omax = std::max(omax, l);
  }
  // Outside the overrides the action is periodic with this joint period, so
  // one extra period on each side makes the scan exhaustive.
  int lo = omin - period - 1;
  int hi = omax + period + 1;
  report.checked_lo = lo;
  report.checked_hi = hi;
  int s = a.shift();

  // Per-level bijectivity onto the target fiber.
  for (int n = lo; n <= hi; ++n) {
    const auto& src = d.fiber(n);
    const auto& dst = d.fiber(n + s);
    const CoordMap& m = a.map_at(n);
    std::vector<std::string> images;
    for (const auto& label : src) images.push_back(lookup(m, label));
    std::vector<std::string> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    bool inside = std::all_of(images.begin(), images.end(), [&](const std::string& c) {
      return d.layer(n + s).bottom_index(c) >= 0;
    });
    if (!distinct || !inside || src.size() != dst.size()) {
      report.ok = false;
      report.reason = "level " + std::to_string(n) +
                      ": fiber map is not a bijection onto the target fiber";
      return report;
    }
  }

  // Edge preservation, both directions.
  LayeredAutomorphism ainv = inverse(a);
  auto scan_edges = [&](const LayeredAutomorphism& f, int elo, int ehi,
                        std::optional<std::pair<Vertex, Vertex>>& witness) {
    for (int n = elo; n < ehi; ++n) {
      const auto& lay = d.layer(n);
      for (std::size_t e = 0; e < lay.edge_count(); ++e) {
        auto [bl, tl] = lay.edge_labels(e);
        Vertex u{n, split_coords(bl)}, v{n + 1, split_coords(tl)};
        Vertex iu = f.apply_raw(u), iv = f.apply_raw(v);
        if (!d.has_edge(iu, iv)) {
          witness = {u, v};
          return false;
        }
      }
    }
    return true;
  };
  if (!scan_edges(a, lo, hi, report.witness)) {
    report.ok = false;
    report.reason = "image of an edge is not an edge";
    return report;
  }
  std::optional<std::pair<Vertex, Vertex>> inv_witness;
  if (!scan_edges(ainv, lo + s, hi + s, inv_witness)) {
    report.ok = false;
    report.witness = inv_witness;
    report.reason = "inverse image of an edge is not an edge";
    return report;
  }
  report.ok = true;

  // Support bookkeeping. Any level shift, or a background that moves fiber
  // elements, touches infinitely many vertices.
  if (s != 0) {
    report.support_vertices = report.incident_edges = -1;
    return report;
  }
  for (int r = 0; r < period; ++r) {
    const CoordMap& bg = a.background()[floor_mod(r, a.background_period())];
    for (const auto& label : d.fiber(r))
      if (bg.count(label)) {
        report.support_vertices = report.incident_edges = -1;
        return report;
      }
  }
  std::map<int, std::vector<std::string>> moved;
  for (const auto& [l, m] : a.overrides()) {
    std::vector<std::string> mv;
    for (const auto& label : d.fiber(l))
      if (lookup(m, label) != label) mv.push_back(label);
    if (!mv.empty()) moved[l] = std::move(mv);
  }
  long long support = 0, incident = 0;
  for (const auto& [l, mv] : moved) {
    support += static_cast<long long>(mv.size());
    const auto& above = d.layer(l);
    const auto& below = d.layer(l - 1);
    for (const auto& c : mv) {
      incident += above.out_degree(above.bottom_index(c));
      incident += below.in_degree(below.top_index(c));
    }
  }
  // Edges between moved vertices at consecutive levels were counted twice.
  for (const auto& [l, mv] : moved) {
    auto up = moved.find(l + 1);
    if (up == moved.end()) continue;
    const auto& lay = d.layer(l);
    for (const auto& b : mv)
      for (const auto& t : up->second)
        if (lay.has_edge(b, t)) --incident;
  }
  report.support_vertices = support;
  report.incident_edges = incident;
  return report;
}

namespace {

// Exchange table on one fiber: swap the value of a single coordinate
// position between two labels, for all values of the other coordinates.
CoordMap swap_coord(const PeriodicLayeredDigraph& d, int level, int pos,
                    const std::string& x, const std::string& y) {
  CoordMap m;
  for (const auto& label : d.fiber(level)) {
    Coords c = split_coords(label);
    if (c[pos] == x) c[pos] = y;
    else if (c[pos] == y) c[pos] = x;
    else continue;
    m.emplace(label, join_coords(c));
  }
  return m;
}

}  // namespace

GeneratorCatalog generators_D() {
  auto d = std::make_shared<const PeriodicLayeredDigraph>(digraph_D());
  const PeriodicLayeredDigraph& g = *d;

  CoordMap flip;
  for (const auto& label : g.fiber(0)) {
    Coords c = split_coords(label);
    flip.emplace(label, c[1] + "," + c[0]);
  }
  LayeredAutomorphism sigma(d, 1, {flip}, {});

  auto two_level = [&](int l1, int p1, const std::string& a1, const std::string& b1,
                       int l2, int p2, const std::string& a2, const std::string& b2) {
    return LayeredAutomorphism(
        d, 0, {},
        {{l1, swap_coord(g, l1, p1, a1, b1)}, {l2, swap_coord(g, l2, p2, a2, b2)}});
  };

  // The exchange lists from the proof of the Proposition, verbatim.
  GeneratorCatalog cat{
      d,
      sigma,
      /*theta_lo*/ two_level(0, 0, "o", "-", -1, 0, "o", "+"),
      /*theta_lp*/ two_level(0, 0, "+", "-", -1, 0, "+", "-"),
      /*theta_uo*/ two_level(0, 1, "o", "-", 1, 1, "o", "+"),
      /*theta_up*/ two_level(0, 1, "+", "-", 1, 1, "+", "-"),
      /*alpha_lo*/ two_level(1, 0, "o", "-", 2, 0, "+", "o"),
      /*alpha_lp*/ two_level(1, 0, "+", "-", 2, 0, "+", "-"),
      /*alpha_uo*/ two_level(0, 1, "o", "+", 1, 1, "-", "o"),
      LayeredAutomorphism::identity(d)};
  return cat;
}

const LayeredAutomorphism* GeneratorCatalog::by_token(std::string_view token) const {
  if (token == "sigma") return &sigma;
  if (token == "theta_o" || token == "theta_lo") return &theta_lo;
  if (token == "theta_p" || token == "theta_lp") return &theta_lp;
  if (token == "theta^o" || token == "theta_uo") return &theta_uo;
  if (token == "theta^p" || token == "theta_up") return &theta_up;
  if (token == "alpha_o" || token == "alpha_lo") return &alpha_lo;
  if (token == "alpha_p" || token == "alpha_lp") return &alpha_lp;
  if (token == "alpha^o" || token == "alpha_uo") return &alpha_uo;
  if (token == "id") return &identity;
  return nullptr;
}

std::vector<std::string> parse_word(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n') flush();
    else cur += c;
  }
  flush();
  if (tokens.empty()) fail(Errc::syntax_error, "empty generator word");
  for (const auto& t : tokens) {
    if (t.rfind("sigma^", 0) == 0) {
      try {
        std::size_t used = 0;
        (void)std::stoi(t.substr(6), &used);
        if (used == t.size() - 6) continue;
      } catch (const std::exception&) {
      }
      fail(Errc::syntax_error, "bad shift power in token '" + t + "'");
    }
    static const char* known[] = {"sigma",   "theta_o", "theta_p", "theta^o",
                                  "theta^p", "alpha_o", "alpha_p", "alpha^o",
                                  "id"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return t == k; }) == std::end(known))
      fail(Errc::syntax_error, "unknown generator token '" + t + "'");
  }
  return tokens;
}

std::string format_word(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

LayeredAutomorphism sigma_power(const GeneratorCatalog& cat, int k) {
  // The coordinate flip is a level-independent involution, so sigma^k is a
  // shift by k with the flip exactly when k is odd.
  if (k == 0) return cat.identity;
  std::vector<CoordMap> bg;
  if (k % 2 != 0) bg.push_back(cat.sigma.background()[0]);
  return LayeredAutomorphism(cat.d, k, std::move(bg), {});
}

LayeredAutomorphism word_to_automorphism(const GeneratorCatalog& cat,
                                         const std::vector<std::string>& tokens) {
  LayeredAutomorphism acc = cat.identity;
  // Leftmost factor is applied last: fold with acc on the left.
  for (const auto& t : tokens) {
    if (t.rfind("sigma^", 0) == 0)
      acc = compose(acc, sigma_power(cat, std::stoi(t.substr(6))));
    else
      acc = compose(acc, *cat.by_token(t));
  }
  return acc;
}

namespace {

std::vector<std::string> normalize_word(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& t : raw) {
    if (t == "id" || t == "sigma^0") continue;
    if (t.rfind("sigma^", 0) == 0 && !out.empty() &&
        out.back().rfind("sigma^", 0) == 0) {
      int sum = std::stoi(out.back().substr(6)) + std::stoi(t.substr(6));
      out.pop_back();
      if (sum != 0) out.push_back("sigma^" + std::to_string(sum));
      continue;
    }
    out.push_back(t);
  }
  if (out.empty()) out.push_back("id");
  return out;
}

}  // namespace

CanonicalizationResult canonicalize_arc(const GeneratorCatalog& cat, const Arc& a) {
  const PeriodicLayeredDigraph& d = *cat.d;
  Arc original = Arc::from_vertices(d, a.vertices);  // validates the chain
  int n = original.length();

  Arc current = original;
  LayeredAutomorphism psi = cat.identity;
  std::vector<std::string> applied;  // in application order

  // Each stage is composed from its generators first (small tables) and
  // folded into psi once; tokens are still recorded one generator at a time.
  auto stage = [&](const LayeredAutomorphism& g) {
    for (auto& v : current.vertices) v = g.apply_raw(v);
    psi = compose(g, psi);
  };

  int m = -current.vertices.front().level;
  if (m != 0) {
    stage(sigma_power(cat, m));
    applied.push_back("sigma^" + std::to_string(m));
  }

  // Transitivity stage: move the initial vertex onto the baseline, upper
  // coordinate first.
  {
    const Coords& start = current.vertices.front().coords;
    const LayeredAutomorphism* upper = nullptr;
    const LayeredAutomorphism* lower = nullptr;
    if (start[1] == "o") upper = &cat.theta_uo;
    else if (start[1] == "+") upper = &cat.theta_up;
    if (start[0] == "o") lower = &cat.theta_lo;
    else if (start[0] == "+") lower = &cat.theta_lp;
    if (upper) applied.push_back(start[1] == "o" ? "theta^o" : "theta^p");
    if (lower) applied.push_back(start[0] == "o" ? "theta_o" : "theta_p");
    if (upper && lower) stage(compose(*lower, *upper));
    else if (upper) stage(*upper);
    else if (lower) stage(*lower);
  }

  // Arranging rounds: each maps the working edge ((0,-,-),(1,x,y)) onto the
  // baseline and shifts everything one layer down.
  LayeredAutomorphism down = sigma_power(cat, -1);
  for (int j = 1; j <= n; ++j) {
    const Coords& head = current.vertices[j].coords;
    if (head[1] == "+")
      fail(Errc::impossible_coordinate,
           "working-edge head " + current.vertices[j].str() +
               " has third coordinate '+', which the edge condition forbids");
    const LayeredAutomorphism* upper = head[1] == "o" ? &cat.alpha_uo : nullptr;
    const LayeredAutomorphism* lower = nullptr;
    if (head[0] == "o") lower = &cat.alpha_lo;
    else if (head[0] == "+") lower = &cat.alpha_lp;
    if (upper) applied.push_back("alpha^o");
    if (lower) applied.push_back(head[0] == "o" ? "alpha_o" : "alpha_p");
    LayeredAutomorphism round = down;
    if (lower) round = compose(round, *lower);
    if (upper) round = compose(round, *upper);
    stage(round);
    applied.push_back("sigma^-1");
  }

  Arc image = psi.apply(original);
  assert(image == current);
  std::vector<std::string> word(applied.rbegin(), applied.rend());
  return CanonicalizationResult{std::move(psi), std::move(image),
                                normalize_word(word)};
}

CanonicalizationResult canonicalize_arc(const PeriodicLayeredDigraph& d, const Arc& a) {
  if (!d.same_structure(digraph_D()))
    fail(Errc::domain_mismatch,
         "the constructive canonicalization is defined over the builtin D");
  return canonicalize_arc(generators_D(), a);
}

}  // namespace hat
