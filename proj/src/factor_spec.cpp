#include "hat/factor_spec.hpp"

#include <json.hpp>

namespace hat {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) fail(Errc::schema_error, "unknown field '" + key + "' in " + where);
  }
}

int get_int(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field))
    fail(Errc::schema_error, "missing field '" + std::string(field) + "' in " + where);
  const json& v = obj.at(field);
  if (!v.is_number_integer())
    fail(Errc::schema_error, "field '" + std::string(field) + "' in " + where +
                                 " must be an integer");
  return v.get<int>();
}

LayerPattern parse_pattern(const json& obj, int index) {
  std::string where = "layers[" + std::to_string(index) + "]";
  if (!obj.is_object()) fail(Errc::schema_error, where + " must be an object");
  if (!obj.contains("type") || !obj.at("type").is_string())
    fail(Errc::schema_error, where + " needs a string 'type'");
  std::string type = obj.at("type").get<std::string>();
  if (type == "complete_bipartite") {
    reject_unknown(obj, {"type", "n", "m"}, where);
    return CompleteBipartite{get_int(obj, "n", where), get_int(obj, "m", where)};
  }
  if (type == "alternating_cycle") {
    reject_unknown(obj, {"type", "size"}, where);
    return AlternatingCycle{get_int(obj, "size", where)};
  }
  if (type == "matching") {
    reject_unknown(obj, {"type", "n"}, where);
    return Matching{get_int(obj, "n", where)};
  }
  if (type == "custom") {
    reject_unknown(obj, {"type", "bottom", "top", "edges"}, where);
    auto strings = [&](const char* field) {
      if (!obj.contains(field) || !obj.at(field).is_array())
        fail(Errc::schema_error, where + " needs an array '" + field + "'");
      std::vector<std::string> out;
      for (const auto& s : obj.at(field)) {
        if (!s.is_string()) fail(Errc::schema_error, where + "." + field + " must hold strings");
        out.push_back(s.get<std::string>());
      }
      return out;
    };
    std::vector<std::pair<std::string, std::string>> edges;
    if (!obj.contains("edges") || !obj.at("edges").is_array())
      fail(Errc::schema_error, where + " needs an array 'edges'");
    for (const auto& e : obj.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        fail(Errc::schema_error, where + ".edges entries must be [bottom, top] string pairs");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    try {
      return CustomLayer{FiniteBipartiteDigraph(strings("bottom"), strings("top"), edges)};
    } catch (const Error& e) {
      fail(Errc::schema_error, where + ": " + e.what());
    }
  }
  fail(Errc::schema_error, where + " has unknown type '" + type + "'");
}

}  // namespace

FactorSpec parse_factor_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::syntax_error, e.what());
  }
  if (!doc.is_object()) fail(Errc::schema_error, "factor spec must be a JSON object");
  reject_unknown(doc, {"period", "layers", "offset", "name"}, "factor spec");
  FactorSpec spec;
  spec.period = get_int(doc, "period", "factor spec");
  if (spec.period < 1) fail(Errc::schema_error, "period must be >= 1");
  if (!doc.contains("layers") || !doc.at("layers").is_array())
    fail(Errc::schema_error, "factor spec needs an array 'layers'");
  int i = 0;
  for (const auto& l : doc.at("layers")) spec.layers.push_back(parse_pattern(l, i++));
  if (static_cast<int>(spec.layers.size()) != spec.period)
    fail(Errc::schema_error, "period is " + std::to_string(spec.period) + " but " +
                                 std::to_string(spec.layers.size()) + " layers given");
  if (doc.contains("offset")) spec.offset = get_int(doc, "offset", "factor spec");
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) fail(Errc::schema_error, "name must be a string");
    spec.name = doc.at("name").get<std::string>();
  }
  return spec;
}

std::string serialize_factor_spec(const FactorSpec& spec) {
  json layers = json::array();
  for (const auto& p : spec.layers) {
    json obj;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, CompleteBipartite>) {
            obj = {{"type", "complete_bipartite"}, {"n", v.n}, {"m", v.m}};
          } else if constexpr (std::is_same_v<T, AlternatingCycle>) {
            obj = {{"type", "alternating_cycle"}, {"size", v.size}};
          } else if constexpr (std::is_same_v<T, Matching>) {
            obj = {{"type", "matching"}, {"n", v.n}};
          } else {
            json edges = json::array();
            for (std::size_t i = 0; i < v.graph.edge_count(); ++i) {
              auto [b, t] = v.graph.edge_labels(i);
              edges.push_back({b, t});
            }
            obj = {{"type", "custom"},
                   {"bottom", v.graph.bottom()},
                   {"top", v.graph.top()},
                   {"edges", edges}};
          }
        },
        p);
    layers.push_back(obj);
  }
  json doc = {{"period", spec.period}, {"layers", layers}, {"offset", spec.offset}};
  if (!spec.name.empty()) doc["name"] = spec.name;
  return doc.dump();
}

PeriodicLayeredDigraph build_periodic(const FactorSpec& spec) {
  return PeriodicLayeredDigraph(spec.layers, spec.offset, 1, spec.name);
}

}  // namespace hat
