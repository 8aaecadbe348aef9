#include <sstream>

#include "hat/cli.hpp"

#include <json.hpp>

namespace hat {

std::string export_dot(const FiniteDigraph& f, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << (name.empty() ? "window" : name) << "\" {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=ellipse, fontsize=10];\n";
  for (int n = f.lo; n <= f.hi; ++n) {
    os << "  { rank=same;";
    for (const auto& v : f.vertices)
      if (v.level == n) os << " \"" << v.str() << "\";";
    os << " }\n";
  }
  for (const auto& [a, b] : f.edges)
    os << "  \"" << f.vertices[a].str() << "\" -> \"" << f.vertices[b].str()
       << "\";\n";
  os << "}\n";
  return os.str();
}

std::string export_window_json(const FiniteDigraph& f) {
  nlohmann::json doc;
  doc["lo"] = f.lo;
  doc["hi"] = f.hi;
  auto vs = nlohmann::json::array();
  for (const auto& v : f.vertices) vs.push_back(v.str());
  doc["vertices"] = vs;
  auto es = nlohmann::json::array();
  for (const auto& [a, b] : f.edges)
    es.push_back({f.vertices[a].str(), f.vertices[b].str()});
  doc["edges"] = es;
  return doc.dump(2);
}

}  // namespace hat
