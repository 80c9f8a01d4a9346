#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khoszul/link_diagram.hpp"

namespace khoszul {

struct CatalogEntry {
  std::string id;
  std::vector<std::string> aliases;
  int components = 0;
  LinkDiagram diagram;
  std::optional<long> khi_dim;  // only where a published value ships
  std::string khi_source;
  // Other diagrams of the same link, for invariance spot checks.
  std::vector<std::string> alternate_labels;
  std::vector<LinkDiagram> alternates;
};

// Parsed once from the bundled JSON; entries in file order.
const std::vector<CatalogEntry>& catalog();
// Looks up an id or alias; throws InputError listing the known ids.
const CatalogEntry& catalog_entry(std::string_view id);

// One marking per component, on its smallest arc with offset 0.
std::vector<Marking> one_per_component(const LinkDiagram& d);

}  // namespace khoszul
