#include "khoszul/catalog.hpp"

#include <json.hpp>

#include "khoszul/catalog_data.hpp"
#include "khoszul/errors.hpp"

namespace khoszul {

namespace {

LinkDiagram diagram_from(const nlohmann::json& j) {
  if (j.contains("braid")) return parse_braid(j.at("braid").get<std::string>(), j.at("strands").get<int>());
  auto pd = j.at("pd").get<std::vector<std::array<int, 4>>>();
  return LinkDiagram::from_pd(std::move(pd), j.value("free_loops", 0));
}

std::string label_of(const nlohmann::json& j) {
  if (j.contains("braid")) {
    return "braid " + j.at("braid").get<std::string>() + " on " + std::to_string(j.at("strands").get<int>()) +
           " strands";
  }
  return render_pd(diagram_from(j));
}

std::vector<CatalogEntry> load() {
  const auto doc = nlohmann::json::parse(detail::kCatalogJson);
  std::vector<CatalogEntry> out;
  for (const auto& j : doc.at("links")) {
    CatalogEntry e;
    e.id = j.at("id").get<std::string>();
    e.aliases = j.value("aliases", std::vector<std::string>{});
    e.components = j.at("components").get<int>();
    e.diagram = diagram_from(j);
    if (j.contains("khi_dim")) {
      e.khi_dim = j.at("khi_dim").get<long>();
      if (*e.khi_dim < 1) throw InternalError("catalog entry " + e.id + " has khi_dim < 1");
      e.khi_source = j.value("khi_source", "");
    }
    for (const auto& alt : j.value("alternates", nlohmann::json::array())) {
      e.alternate_labels.push_back(label_of(alt));
      e.alternates.push_back(diagram_from(alt));
    }
    if (static_cast<int>(e.diagram.component_count()) != e.components) {
      throw InternalError("catalog entry " + e.id + " has the wrong component count");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = load();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view id) {
  std::string known;
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
    for (const auto& a : e.aliases)
      if (a == id) return e;
    known += (known.empty() ? "" : ", ") + e.id;
  }
  throw InputError("unknown catalog link '" + std::string(id) + "' (known: " + known + ")");
}

std::vector<Marking> one_per_component(const LinkDiagram& d) {
  std::vector<Marking> out;
  for (const auto& comp : d.components()) out.push_back({comp.front(), 0});
  return out;
}

}  // namespace khoszul
