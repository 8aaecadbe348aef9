#include "hat/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hat/autos.hpp"
#include "hat/factor_spec.hpp"
#include "hat/product.hpp"
#include "hat/reach.hpp"
#include "hat/transit.hpp"
#include "hat/zoo.hpp"

namespace hat {

namespace {

using nlohmann::json;

json to_json(const FiniteBipartiteDigraph& g) {
  json edges = json::array();
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [b, t] = g.edge_labels(i);
    edges.push_back({b, t});
  }
  return {{"bottom", g.bottom()},
          {"top", g.top()},
          {"edges", edges},
          {"vertices", g.bottom().size() + g.top().size()},
          {"edge_count", g.edge_count()}};
}

json to_json(const DeltaReport& r) {
  json classes = json::object();
  for (const auto& [layer, count] : r.classes_per_layer)
    classes[std::to_string(layer)] = count;
  return {{"well_defined", r.well_defined},
          {"connected", r.connected},
          {"bipartite", r.bipartite},
          {"complete_bipartite", r.complete_bipartite},
          {"classes_per_layer", classes},
          {"layers_checked", {r.layers_lo, r.layers_hi}},
          {"representative", to_json(r.representative)}};
}

json to_json(const OrbitReport& r) {
  return {{"n", r.n},
          {"arc_count", r.arc_count},
          {"orbit_count", r.orbit_count},
          {"orbit_sizes", r.orbit_sizes},
          {"method", r.method},
          {"window", {r.window_lo, r.window_hi}},
          {"complete", r.complete}};
}

struct CommandResult {
  json report;
  int exit_code = 0;
  std::string artifact;  // non-report output (DOT / graph JSON), wins if set
};

bool parse_builtin_pair(const std::string& ref, const std::string& prefix,
                        int& a, int& b) {
  std::string full = "builtin:" + prefix + "(";
  if (ref.rfind(full, 0) != 0 || ref.back() != ')') return false;
  std::string inner = ref.substr(full.size(), ref.size() - full.size() - 1);
  auto comma = inner.find(',');
  if (comma == std::string::npos) fail(Errc::usage_error, "expected " + prefix + "(a,b)");
  try {
    a = std::stoi(inner.substr(0, comma));
    b = std::stoi(inner.substr(comma + 1));
  } catch (const std::exception&) {
    fail(Errc::usage_error, "bad integers in '" + ref + "'");
  }
  return true;
}

}  // namespace

ResolvedFactor resolve_factor(const std::string& ref, bool allow_adjacent_involvers) {
  ResolvedFactor out;
  out.ref = ref;
  if (ref == "builtin:L") {
    out.periodic = factor_L();
    return out;
  }
  if (ref == "builtin:D") {
    out.periodic = digraph_D();
    return out;
  }
  if (ref == "builtin:Z") {
    out.periodic = factor_Z();
    return out;
  }
  int a = 0, b = 0;
  if (parse_builtin_pair(ref, "mckay", a, b)) {
    out.periodic = factor_mckay_praeger(a, b);
    return out;
  }
  if (parse_builtin_pair(ref, "dl", a, b)) {
    out.dl = ResolvedFactor::DLParams{a, b};
    return out;
  }
  if (ref.rfind("builtin:", 0) == 0)
    fail(Errc::usage_error, "unknown builtin '" + ref + "'");
  std::ifstream in(ref);
  if (!in) fail(Errc::usage_error, "cannot open factor spec file '" + ref + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  FactorSpec spec = parse_factor_spec(buf.str());
  factor_with_involvers(spec.layers, allow_adjacent_involvers);  // guard only
  out.periodic = build_periodic(spec);
  return out;
}

namespace {

struct CommonOpts {
  std::string factor;
  std::vector<int> window;
  std::string out_path;
  bool allow_adjacent_involvers = false;
  bool pretty = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_window = true) {
  cmd->add_option("--factor", o.factor, "builtin:NAME or path to a factor spec JSON")
      ->required();
  if (with_window)
    cmd->add_option("--window", o.window, "level window LO HI")->expected(2);
  cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
  cmd->add_flag("--allow-adjacent-involvers", o.allow_adjacent_involvers,
                "skip the involver separation guard");
  cmd->add_flag("--pretty", o.pretty, "render the report as a table");
}

const PeriodicLayeredDigraph& need_periodic(const ResolvedFactor& f) {
  if (!f.periodic)
    fail(Errc::usage_error,
         "'" + f.ref + "' is a windowed tree product; this command needs a periodic factor");
  return *f.periodic;
}

FiniteDigraph dl_window(const ResolvedFactor& f, const std::vector<int>& window) {
  if (window.size() != 2)
    fail(Errc::usage_error, "tree products need an explicit --window LO HI");
  return diestel_leader(f.dl->dout, f.dl->din, window[0], window[1]);
}

std::pair<int, int> window_or(const std::vector<int>& w, int lo, int hi) {
  if (w.size() == 2) return {w[0], w[1]};
  return {lo, hi};
}

json factor_summary(const PeriodicLayeredDigraph& d) {
  json fibers = json::array(), edges = json::array();
  for (int n = 0; n < d.period(); ++n) {
    fibers.push_back(d.fiber_size(n));
    edges.push_back(d.layer(n).edge_count());
  }
  return {{"name", d.name()},
          {"period", d.period()},
          {"arity", d.arity()},
          {"offset", d.offset()},
          {"fiber_sizes", fibers},
          {"layer_edge_counts", edges}};
}

CommandResult cmd_build(const CommonOpts& o) {
  ResolvedFactor f = resolve_factor(o.factor, o.allow_adjacent_involvers);
  json report;
  report["command"] = "build";
  report["inputs"] = {{"factor", o.factor}};
  if (f.periodic) {
    report["data"] = factor_summary(*f.periodic);
    if (o.window.size() == 2) {
      FiniteDigraph w = f.periodic->window(o.window[0], o.window[1]);
      report["counters"] = {{"window_vertices", w.vertex_count()},
                            {"window_edges", w.edge_count()}};
    }
  } else {
    FiniteDigraph w = dl_window(f, o.window);
    report["counters"] = {{"window_vertices", w.vertex_count()},
                          {"window_edges", w.edge_count()}};
  }
  report["verdicts"] = {{"ok", true}};
  return {report, 0, ""};
}

CommandResult cmd_product(const CommonOpts& o, const std::vector<std::string>& factors,
                          const std::vector<int>& offsets, bool shifts,
                          const std::string& save_spec) {
  json report;
  report["command"] = "product";
  PeriodicLayeredDigraph result = [&] {
    if (shifts) {
      if (factors.size() != 1)
        fail(Errc::usage_error, "--shifts takes exactly one --factor");
      return shift_product(need_periodic(resolve_factor(factors[0], o.allow_adjacent_involvers)));
    }
    if (factors.size() < 2)
      fail(Errc::usage_error, "product needs at least two --factor arguments (or --shifts)");
    ProductDescriptor d;
    for (const auto& ref : factors)
      d.factors.push_back(need_periodic(resolve_factor(ref, o.allow_adjacent_involvers)));
    d.offsets = offsets;
    d.offsets.resize(d.factors.size(), 0);
    return layerwise_product_many(d);
  }();
  report["inputs"] = {{"factors", factors}, {"offsets", offsets}, {"shifts", shifts}};
  report["data"] = factor_summary(result);
  if (o.window.size() == 2) {
    FiniteDigraph w = result.window(o.window[0], o.window[1]);
    report["counters"] = {{"window_vertices", w.vertex_count()},
                          {"window_edges", w.edge_count()}};
  }
  if (!save_spec.empty()) {
    FactorSpec spec{result.period(), result.patterns(), result.offset(), result.name()};
    std::ofstream out(save_spec);
    if (!out) fail(Errc::usage_error, "cannot write '" + save_spec + "'");
    out << serialize_factor_spec(spec) << "\n";
  }
  report["verdicts"] = {{"ok", true}};
  return {report, 0, ""};
}

CommandResult cmd_delta(const CommonOpts& o) {
  ResolvedFactor f = resolve_factor(o.factor, o.allow_adjacent_involvers);
  DeltaReport r = f.periodic ? delta(*f.periodic) : delta_window(dl_window(f, o.window));
  json report;
  report["command"] = "delta";
  report["inputs"] = {{"factor", o.factor}};
  report["verdicts"] = {{"well_defined", r.well_defined},
                        {"connected", r.connected},
                        {"bipartite", r.bipartite},
                        {"complete_bipartite", r.complete_bipartite}};
  report["data"] = to_json(r);
  return {report, r.well_defined ? 0 : 1, ""};
}

CommandResult cmd_verify_aut(const CommonOpts& o, const std::string& word_text) {
  const PeriodicLayeredDigraph& d =
      need_periodic(resolve_factor(o.factor, o.allow_adjacent_involvers));
  if (!d.same_structure(digraph_D()))
    fail(Errc::usage_error, "the generator catalog is defined over builtin:D");
  GeneratorCatalog cat = generators_D();
  std::vector<std::string> tokens = parse_word(word_text);
  LayeredAutomorphism a = word_to_automorphism(cat, tokens);
  AutVerifyReport r = verify_automorphism(*cat.d, a);
  json report;
  report["command"] = "verify-aut";
  report["inputs"] = {{"factor", o.factor}, {"aut", word_text}};
  report["verdicts"] = {{"ok", r.ok}};
  report["counters"] = {{"support_vertices", r.support_vertices},
                        {"incident_edges", r.incident_edges}};
  report["data"] = {{"checked", {r.checked_lo, r.checked_hi}}};
  if (!r.reason.empty()) report["data"]["reason"] = r.reason;
  if (r.witness)
    report["data"]["witness"] = r.witness->first.str() + ">" + r.witness->second.str();
  report["words"] = tokens;
  return {report, r.ok ? 0 : 1, ""};
}

CommandResult cmd_canonicalize(const CommonOpts& o, const std::string& arc_text) {
  const PeriodicLayeredDigraph& d =
      need_periodic(resolve_factor(o.factor, o.allow_adjacent_involvers));
  GeneratorCatalog cat = generators_D();
  if (!d.same_structure(*cat.d))
    fail(Errc::usage_error, "canonicalize is defined over builtin:D");
  Arc raw = parse_arc(arc_text);
  Arc arc = Arc::from_vertices(*cat.d, raw.vertices);
  CanonicalizationResult r = canonicalize_arc(cat, arc);
  int n = arc.length();
  std::vector<Vertex> zvs;
  for (int i = -n; i <= 0; ++i) zvs.push_back({i, {"-", "-"}});
  bool ok = r.image.vertices == zvs;
  json report;
  report["command"] = "canonicalize";
  report["inputs"] = {{"factor", o.factor}, {"arc", arc.str()}};
  report["verdicts"] = {{"image_is_baseline", ok}};
  report["counters"] = {{"n", n}};
  report["data"] = {{"image", r.image.str()}, {"word", format_word(r.word)}};
  report["words"] = r.word;
  return {report, ok ? 0 : 1, ""};
}

std::vector<LayeredAutomorphism> default_generators(const PeriodicLayeredDigraph& d) {
  if (d.same_structure(digraph_D())) {
    GeneratorCatalog cat = generators_D();
    return {cat.sigma,    cat.theta_lo, cat.theta_lp, cat.theta_uo,
            cat.theta_up, cat.alpha_lo, cat.alpha_lp, cat.alpha_uo};
  }
  auto dom = std::make_shared<const PeriodicLayeredDigraph>(d);
  return {LayeredAutomorphism(dom, d.period(), {}, {})};
}

std::vector<LayeredAutomorphism> parse_generator_words(
    const PeriodicLayeredDigraph& d, const std::vector<std::string>& words) {
  if (!d.same_structure(digraph_D()))
    fail(Errc::usage_error, "generator words refer to the builtin:D catalog");
  GeneratorCatalog cat = generators_D();
  std::vector<LayeredAutomorphism> out;
  for (const auto& w : words) out.push_back(word_to_automorphism(cat, parse_word(w)));
  return out;
}

CommandResult cmd_orbits(const CommonOpts& o, int n, bool delta_rep,
                         const std::vector<std::string>& gen_words) {
  ResolvedFactor f = resolve_factor(o.factor, o.allow_adjacent_involvers);
  json report;
  report["command"] = "orbits";
  report["inputs"] = {{"factor", o.factor}, {"n", n}, {"delta_rep", delta_rep}};
  OrbitReport r;
  if (delta_rep) {
    DeltaReport dr = f.periodic ? delta(*f.periodic) : delta_window(dl_window(f, o.window));
    AutGroup group = brute_force_aut_group(dr.representative);
    r = arc_orbits(to_window(dr.representative), n, group.elements);
    report["counters"] = {{"aut_group_order", group.order()}};
  } else {
    const PeriodicLayeredDigraph& d = need_periodic(f);
    auto [lo, hi] = window_or(o.window, -4, 4);
    std::vector<LayeredAutomorphism> gens = gen_words.empty()
                                                ? default_generators(d)
                                                : parse_generator_words(d, gen_words);
    r = arc_orbits_layered(d, d.window(lo, hi), n, gens);
  }
  report["verdicts"] = {{"complete", r.complete}};
  report["data"] = to_json(r);
  return {report, 0, ""};
}

CommandResult cmd_certify(const CommonOpts& o, int n_max,
                          const std::vector<std::string>& gen_words) {
  const PeriodicLayeredDigraph& d =
      need_periodic(resolve_factor(o.factor, o.allow_adjacent_involvers));
  auto [lo, hi] = window_or(o.window, -6, 6);
  std::optional<std::vector<LayeredAutomorphism>> gens;
  if (!gen_words.empty()) gens = parse_generator_words(d, gen_words);
  std::vector<HatCertificate> certs = certify_window_hat(d, n_max, lo, hi, gens);
  bool all = true;
  json list = json::array();
  for (const auto& c : certs) {
    all = all && c.certified;
    json entry = {{"n", c.n},
                  {"arcs", c.arcs},
                  {"certified", c.certified},
                  {"method", c.method}};
    if (c.orbits) entry["orbits"] = to_json(*c.orbits);
    list.push_back(entry);
  }
  json report;
  report["command"] = "certify";
  report["inputs"] = {{"factor", o.factor}, {"n_max", n_max}, {"window", {lo, hi}}};
  report["verdicts"] = {{"certified", all}};
  report["data"] = {{"per_n", list}};
  return {report, all ? 0 : 1, ""};
}

CommandResult cmd_export(const CommonOpts& o, const std::string& format, bool delta_rep) {
  ResolvedFactor f = resolve_factor(o.factor, o.allow_adjacent_involvers);
  FiniteDigraph w = [&] {
    if (delta_rep) {
      DeltaReport dr = f.periodic ? delta(*f.periodic) : delta_window(dl_window(f, o.window));
      return to_window(dr.representative);
    }
    if (f.periodic) {
      if (o.window.size() != 2) fail(Errc::usage_error, "export needs --window LO HI");
      return f.periodic->window(o.window[0], o.window[1]);
    }
    return dl_window(f, o.window);
  }();
  std::string text;
  if (format == "dot") text = export_dot(w, f.ref + (delta_rep ? ":delta" : ""));
  else if (format == "json") text = export_window_json(w);
  else fail(Errc::usage_error, "unknown format '" + format + "'");
  return {json{}, 0, text};
}

void render_pretty(const json& report, std::ostream& out) {
  out << report["command"].get<std::string>() << "\n";
  auto table = [&](const char* section) {
    if (!report.contains(section)) return;
    for (const auto& [k, v] : report[section].items())
      out << "  " << k << ": " << v.dump() << "\n";
  };
  table("inputs");
  table("verdicts");
  table("counters");
  if (report.contains("words")) out << "  word: " << format_word(report["words"]) << "\n";
}

void emit(const CommandResult& r, const CommonOpts& o, std::ostream& out) {
  std::string text;
  if (!r.artifact.empty()) text = r.artifact;
  else if (o.pretty) {
    std::ostringstream os;
    render_pretty(r.report, os);
    text = os.str();
  } else {
    text = r.report.dump(2) + "\n";
  }
  if (!o.out_path.empty()) {
    std::ofstream file(o.out_path);
    if (!file) fail(Errc::usage_error, "cannot write '" + o.out_path + "'");
    file << text;
  } else {
    out << text;
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"layered digraphs, layerwise products and arc transitivity checks"};
  app.require_subcommand(1);

  CommonOpts build_o, product_o, delta_o, verify_o, canon_o, orbits_o, certify_o,
      export_o;
  std::vector<std::string> product_factors, orbit_gens, certify_gens;
  std::vector<int> product_offsets;
  bool product_shifts = false, orbits_delta_rep = false, export_delta_rep = false;
  std::string product_save, verify_word, canon_arc, export_format = "dot";
  int orbits_n = 1, certify_n = 4;

  CLI::App* build = app.add_subcommand("build", "build and describe a factor");
  add_common(build, build_o);

  CLI::App* product = app.add_subcommand("product", "layerwise direct products");
  product->add_option("--factor", product_factors, "factor (repeat for each)")->required();
  product->add_option("--offset", product_offsets, "per-factor epimorphism offset");
  product->add_flag("--shifts", product_shifts, "product of all period-many shifts");
  product->add_option("--save-spec", product_save, "write the product as a factor spec");
  product->add_option("--window", product_o.window, "level window LO HI")->expected(2);
  product->add_option("--out", product_o.out_path, "write the report here");
  product->add_flag("--allow-adjacent-involvers", product_o.allow_adjacent_involvers, "");
  product->add_flag("--pretty", product_o.pretty, "");

  CLI::App* delta_cmd = app.add_subcommand("delta", "associated digraph report");
  add_common(delta_cmd, delta_o);

  CLI::App* verify = app.add_subcommand("verify-aut", "verify a generator word");
  add_common(verify, verify_o, false);
  verify->add_option("--aut", verify_word, "generator word, e.g. \"theta_o\"")->required();

  CLI::App* canon = app.add_subcommand("canonicalize", "map an arc onto the baseline");
  add_common(canon, canon_o, false);
  canon->add_option("--arc", canon_arc, "arc literal \"(0,-,-)>(1,o,-)\"")->required();

  CLI::App* orbits = app.add_subcommand("orbits", "arc orbit counts");
  add_common(orbits, orbits_o);
  orbits->add_option("--n", orbits_n, "arc length");
  orbits->add_flag("--delta-rep", orbits_delta_rep,
                   "act on the delta representative with its brute-force group");
  orbits->add_option("--gens", orbit_gens, "generator word (repeat for each)");

  CLI::App* certify = app.add_subcommand("certify", "window HAT certification");
  add_common(certify, certify_o);
  certify->add_option("--n", certify_n, "maximum arc length");
  certify->add_option("--gens", certify_gens, "generator word (repeat for each)");

  CLI::App* exp = app.add_subcommand("export", "DOT / JSON export of a window");
  add_common(exp, export_o);
  exp->add_option("--format", export_format, "dot | json");
  exp->add_flag("--delta-rep", export_delta_rep, "export the delta representative");

  std::vector<const char*> argv;
  argv.push_back("hat");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto started = std::chrono::steady_clock::now();
    CommandResult result;
    const CommonOpts* opts = nullptr;
    if (build->parsed()) {
      result = cmd_build(build_o);
      opts = &build_o;
    } else if (product->parsed()) {
      result = cmd_product(product_o, product_factors, product_offsets,
                           product_shifts, product_save);
      opts = &product_o;
    } else if (delta_cmd->parsed()) {
      result = cmd_delta(delta_o);
      opts = &delta_o;
    } else if (verify->parsed()) {
      result = cmd_verify_aut(verify_o, verify_word);
      opts = &verify_o;
    } else if (canon->parsed()) {
      result = cmd_canonicalize(canon_o, canon_arc);
      opts = &canon_o;
    } else if (orbits->parsed()) {
      result = cmd_orbits(orbits_o, orbits_n, orbits_delta_rep, orbit_gens);
      opts = &orbits_o;
    } else if (certify->parsed()) {
      result = cmd_certify(certify_o, certify_n, certify_gens);
      opts = &certify_o;
    } else {
      result = cmd_export(export_o, export_format, export_delta_rep);
      opts = &export_o;
    }
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    if (!result.report.is_null()) result.report["timing_ms"] = elapsed;
    emit(result, *opts, out);
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hat
