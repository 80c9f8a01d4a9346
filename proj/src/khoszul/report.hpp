#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "khoszul/abelian.hpp"
#include "khoszul/link_diagram.hpp"
#include "khoszul/pointed.hpp"

namespace khoszul {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Where the diagram came from, echoed into every report.
struct InputEcho {
  std::string source;  // "pd", "braid", "link", "json"
  std::string text;
  int strands = 0;     // braids only
  std::optional<std::string> catalog_id;
};

struct RunOptions {
  Coefficients coefficients = Coefficients::integers();
  bool reduced = false;
  PointedVariant variant = PointedVariant::Standard;
  std::optional<long> khi_dim;  // overrides the catalog value in verify
  bool timings = true;
};

struct Report {
  nlohmann::ordered_json json;
  std::string text;   // aligned tables for humans
  int exit_code = 0;  // 0 ok, 1 a requested verification failed
};

// Markings and basepoint are read from the diagram. With `reduced` and no
// basepoint, the basepoint defaults to offset 0 on the smallest arc.
Report cmd_kh(const LinkDiagram& d, const InputEcho& in, const RunOptions& o);
Report cmd_pointed(const LinkDiagram& d, const InputEcho& in, const RunOptions& o);
Report cmd_koszul(const LinkDiagram& d, const InputEcho& in, const RunOptions& o);
Report cmd_ss(const LinkDiagram& d, const InputEcho& in, const RunOptions& o);
// Chooses its own markings: one per component (unreduced) and basepoint
// plus one per other component (reduced).
Report cmd_verify(const LinkDiagram& d, const InputEcho& in, const RunOptions& o);

// "arc:off,arc:off" (":off" optional) or "one-per-component".
std::vector<Marking> parse_points(std::string_view spec, const LinkDiagram& d);
// "arc" or "arc:off".
Marking parse_marking(std::string_view spec);

}  // namespace khoszul
