#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace khoszul {

// A point on an arc. Several points may share an arc; offsets tell them apart.
struct Marking {
  int arc = 0;
  int offset = 0;
  friend bool operator==(const Marking&, const Marking&) = default;
};

// One PD crossing X[a,b,c,d]: arcs read counterclockwise starting from the
// incoming under-strand (Knot Atlas convention). The under-strand runs
// arcs[0] -> arcs[2]; the over-strand runs arcs[3] -> arcs[1] when positive
// and arcs[1] -> arcs[3] when negative.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 0;  // +1 or -1
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  // Validates the crossing list and derives orientation and components.
  // Arc labels must be exactly 1..2n, each used twice. Free loops receive
  // labels 2n+1 .. 2n+free_loops. When `signs` is empty the orientation of
  // over-strands is inferred from under-passages, and for components that
  // never pass under, from consecutive arc numbering.
  static LinkDiagram from_pd(std::vector<std::array<int, 4>> pd, int free_loops = 0,
                             std::vector<Marking> markings = {},
                             std::optional<Marking> basepoint = std::nullopt,
                             std::span<const int> signs = {});

  std::size_t crossing_count() const { return crossings_.size(); }
  int arc_count() const { return 2 * static_cast<int>(crossings_.size()) + free_loops_; }
  int free_loops() const { return free_loops_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  std::size_t component_count() const { return components_.size(); }
  // Arcs of each component in orientation order, starting at the smallest label.
  const std::vector<std::vector<int>>& components() const { return components_; }
  int component_of_arc(int arc) const;
  int positive_crossings() const;
  int negative_crossings() const;
  bool is_free_loop(int arc) const { return arc > 2 * static_cast<int>(crossings_.size()); }

  const std::vector<Marking>& markings() const { return markings_; }
  const std::optional<Marking>& basepoint() const { return basepoint_; }
  int component_of_marking(std::size_t index) const;
  int component_of_basepoint() const;

  // Same diagram, new marking data (validated).
  LinkDiagram with_markings(std::vector<Marking> markings,
                            std::optional<Marking> basepoint = std::nullopt) const;

  friend bool operator==(const LinkDiagram&, const LinkDiagram&) = default;

 private:
  void validate_markings() const;

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_arc_;  // indexed by arc label
  std::vector<Marking> markings_;
  std::optional<Marking> basepoint_;
};

// `X[1,3,2,4] X[3,1,4,2]`, optionally wrapped in PD[...].
LinkDiagram parse_pd(std::string_view text);
// {"pd": [[a,b,c,d],...], "free_loops": k, "markings": [{"arc":a,"offset":t}],
//  "basepoint": {...}|null, "signs": [..] (optional)}
LinkDiagram parse_diagram_json(std::string_view text);
// Braid closure; generators s1..s(k-1), inverses as S<i>, s<i>^-1 or
// negative integers. Canonical arc numbering: consecutive along each
// component, components in order of their first strand.
LinkDiagram parse_braid(std::string_view word, int strands);

std::string render_pd(const LinkDiagram& d);
std::string render_json(const LinkDiagram& d);

// Switches every crossing. Involutive on the nose.
LinkDiagram mirror(const LinkDiagram& d);

struct ResolvedState {
  std::vector<std::uint8_t> vertex;       // 0/1 per crossing
  std::vector<std::vector<int>> circles;  // arcs in cyclic order; sorted by smallest arc
  std::vector<int> circle_of_arc;         // indexed by arc label (entry 0 unused)
  std::vector<int> circle_of_marking;
  std::optional<int> circle_of_basepoint;
};

// 0-smoothing joins (a,b),(c,d) of X[a,b,c,d]; 1-smoothing joins (a,d),(b,c).
ResolvedState resolve(const LinkDiagram& d, std::span<const std::uint8_t> vertex);
ResolvedState resolve(const LinkDiagram& d, std::uint32_t vertex_bits);

}  // namespace khoszul
