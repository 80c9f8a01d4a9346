#include "khoszul/link_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "khoszul/errors.hpp"

namespace khoszul {

namespace {

struct Slot {
  int crossing;
  int pos;
};

// Tracks which crossing slots an oriented strand enters.
class OrientationSolver {
 public:
  OrientationSolver(const std::vector<std::array<int, 4>>& pd, int arc_count)
      : pd_(pd), entering_(pd.size(), {0, 0, 0, 0}), slots_(arc_count + 1) {
    for (int c = 0; c < static_cast<int>(pd.size()); ++c) {
      for (int p = 0; p < 4; ++p) slots_[pd[c][p]].push_back({c, p});
      // Under-strand enters at position 0 and leaves at position 2.
      entering_[c][0] = 1;
      entering_[c][2] = -1;
    }
  }

  void seed_sign(int c, int sign) {
    set(c, 3, sign > 0 ? 1 : -1);
    set(c, 1, sign > 0 ? -1 : 1);
  }

  void propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < static_cast<int>(pd_.size()); ++c) {
        for (int p = 0; p < 4; ++p) {
          int s = entering_[c][p];
          if (s == 0) continue;
          // The other end of the same arc has the opposite role.
          const auto& ends = slots_[pd_[c][p]];
          Slot other = (ends[0].crossing == c && ends[0].pos == p) ? ends[1] : ends[0];
          changed |= set(other.crossing, other.pos, -s);
          // The strand continues through the crossing.
          changed |= set(c, (p + 2) % 4, -s);
        }
      }
    }
  }

  // First arc (by label) that still has an undetermined end, or 0.
  int first_unoriented_arc() const {
    for (int a = 1; a < static_cast<int>(slots_.size()); ++a) {
      for (const auto& s : slots_[a]) {
        if (entering_[s.crossing][s.pos] == 0) return a;
      }
    }
    return 0;
  }

  // Orients an over-only component from its numbering: the strand leaves
  // the smallest arc toward the arc labelled one higher.
  void orient_by_labels(int arc) {
    const auto& ends = slots_[arc];
    std::vector<int> candidates;
    for (int k = 0; k < 2; ++k) {
      const Slot& head = ends[k];
      int next = pd_[head.crossing][(head.pos + 2) % 4];
      if (next == arc + 1) candidates.push_back(k);
    }
    if (candidates.empty()) {
      throw InputError("cannot orient the component through arc " + std::to_string(arc) +
                       ": it never passes under and its arcs are not numbered "
                       "consecutively (supply \"signs\" in the JSON form)");
    }
    const Slot& head = ends[candidates.front()];
    set(head.crossing, head.pos, 1);
  }

  int sign(int c) const { return entering_[c][3] > 0 ? 1 : -1; }
  int entering(int c, int p) const { return entering_[c][p]; }
  const std::vector<std::vector<Slot>>& slots() const { return slots_; }

 private:
  bool set(int c, int p, int value) {
    int& cur = entering_[c][p];
    if (cur == value) return false;
    if (cur != 0) {
      throw InputError("inconsistent orientation at crossing " + std::to_string(c + 1) +
                       " (arc " + std::to_string(pd_[c][p]) + ")");
    }
    cur = value;
    return true;
  }

  const std::vector<std::array<int, 4>>& pd_;
  std::vector<std::array<int, 4>> entering_;
  std::vector<std::vector<Slot>> slots_;
};

void validate_labels(const std::vector<std::array<int, 4>>& pd) {
  const int n = static_cast<int>(pd.size());
  std::vector<int> uses(2 * n + 1, 0);
  for (int c = 0; c < n; ++c) {
    for (int a : pd[c]) {
      if (a < 1 || a > 2 * n) {
        throw InputError("arc label " + std::to_string(a) + " in crossing " +
                         std::to_string(c + 1) + " is outside 1.." + std::to_string(2 * n));
      }
      ++uses[a];
    }
  }
  for (int a = 1; a <= 2 * n; ++a) {
    if (uses[a] != 2) {
      throw InputError("arc " + std::to_string(a) + " appears " + std::to_string(uses[a]) +
                       (uses[a] == 1 ? " time" : " times") + " (expected 2)");
    }
  }
}

}  // namespace

LinkDiagram LinkDiagram::from_pd(std::vector<std::array<int, 4>> pd, int free_loops,
                                 std::vector<Marking> markings,
                                 std::optional<Marking> basepoint,
                                 std::span<const int> signs) {
  if (free_loops < 0) throw InputError("free_loops must be nonnegative");
  validate_labels(pd);
  const int n = static_cast<int>(pd.size());
  if (!signs.empty() && static_cast<int>(signs.size()) != n) {
    throw InputError("signs: expected " + std::to_string(n) + " entries, got " +
                     std::to_string(signs.size()));
  }

  OrientationSolver solver(pd, 2 * n);
  for (int c = 0; c < static_cast<int>(signs.size()); ++c) {
    if (signs[c] != 1 && signs[c] != -1) throw InputError("signs must be +1 or -1");
    solver.seed_sign(c, signs[c]);
  }
  solver.propagate();
  while (int arc = solver.first_unoriented_arc()) {
    solver.orient_by_labels(arc);
    solver.propagate();
  }

  LinkDiagram d;
  d.free_loops_ = free_loops;
  for (int c = 0; c < n; ++c) d.crossings_.push_back({pd[c], solver.sign(c)});

  // Components by following the orientation through each crossing.
  const int arcs = 2 * n + free_loops;
  d.component_of_arc_.assign(arcs + 1, -1);
  for (int start = 1; start <= arcs; ++start) {
    if (d.component_of_arc_[start] >= 0) continue;
    const int comp = static_cast<int>(d.components_.size());
    std::vector<int> cycle;
    if (start > 2 * n) {
      cycle.push_back(start);
      d.component_of_arc_[start] = comp;
    } else {
      int a = start;
      do {
        cycle.push_back(a);
        d.component_of_arc_[a] = comp;
        const auto& ends = solver.slots()[a];
        const Slot& head = solver.entering(ends[0].crossing, ends[0].pos) > 0 ? ends[0] : ends[1];
        a = pd[head.crossing][(head.pos + 2) % 4];
        if (a != start && d.component_of_arc_[a] >= 0) {
          throw InputError("component through arc " + std::to_string(start) + " does not close");
        }
      } while (a != start);
    }
    d.components_.push_back(std::move(cycle));
  }

  d.markings_ = std::move(markings);
  d.basepoint_ = basepoint;
  d.validate_markings();
  return d;
}

int LinkDiagram::component_of_arc(int arc) const {
  if (arc < 1 || arc > arc_count()) {
    throw InputError("arc " + std::to_string(arc) + " does not exist (diagram has " +
                     std::to_string(arc_count()) + " arcs)");
  }
  return component_of_arc_[arc];
}

int LinkDiagram::positive_crossings() const {
  return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(),
                                        [](const Crossing& c) { return c.sign > 0; }));
}

int LinkDiagram::negative_crossings() const {
  return static_cast<int>(crossing_count()) - positive_crossings();
}

int LinkDiagram::component_of_marking(std::size_t index) const {
  return component_of_arc(markings_.at(index).arc);
}

int LinkDiagram::component_of_basepoint() const {
  if (!basepoint_) throw InputError("diagram has no basepoint");
  return component_of_arc(basepoint_->arc);
}

LinkDiagram LinkDiagram::with_markings(std::vector<Marking> markings,
                                       std::optional<Marking> basepoint) const {
  LinkDiagram d = *this;
  d.markings_ = std::move(markings);
  d.basepoint_ = basepoint;
  d.validate_markings();
  return d;
}

void LinkDiagram::validate_markings() const {
  std::vector<Marking> all = markings_;
  if (basepoint_) all.push_back(*basepoint_);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Marking& m = all[i];
    if (m.arc < 1 || m.arc > arc_count()) {
      throw InputError("marking on arc " + std::to_string(m.arc) + ": no such arc (diagram has " +
                       std::to_string(arc_count()) + ")");
    }
    if (m.offset < 0) throw InputError("marking offsets must be nonnegative");
    for (std::size_t j = 0; j < i; ++j) {
      if (all[j] == m) {
        bool base = basepoint_ && i == all.size() - 1;
        throw InputError(std::string(base ? "basepoint collides with a marking" : "duplicate marking") +
                         " at arc " + std::to_string(m.arc) + " offset " +
                         std::to_string(m.offset));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Text formats

LinkDiagram parse_pd(std::string_view text) {
  std::vector<std::array<int, 4>> pd;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  auto fail = [&](const std::string& what) -> InputError {
    return InputError("PD syntax error at position " + std::to_string(i) + ": " + what);
  };
  auto read_int = [&]() -> int {
    skip();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw fail("expected an integer");
    return std::stoi(std::string(text.substr(start, i - start)));
  };

  skip();
  bool wrapped = false;
  if (text.substr(i, 3) == "PD[") {
    wrapped = true;
    i += 3;
  }
  for (;;) {
    skip();
    if (i >= text.size()) break;
    if (wrapped && text[i] == ']') {
      ++i;
      wrapped = false;
      skip();
      if (i < text.size()) throw fail("trailing characters after PD[...]");
      break;
    }
    if (text[i] != 'X') throw fail(std::string("expected 'X', found '") + text[i] + "'");
    ++i;
    if (i >= text.size() || text[i] != '[') throw fail("expected '['");
    ++i;
    std::array<int, 4> x{};
    for (int k = 0; k < 4; ++k) x[k] = read_int();
    skip();
    if (i >= text.size() || text[i] != ']') throw fail("expected ']' after four labels");
    ++i;
    pd.push_back(x);
  }
  if (wrapped) throw fail("unterminated PD[");
  if (pd.empty()) {
    throw InputError("PD code has no crossings; use the JSON form with \"free_loops\" for unlinks");
  }
  return LinkDiagram::from_pd(std::move(pd));
}

namespace {

Marking marking_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("arc")) throw InputError("marking must be {\"arc\": a, \"offset\": t}");
  return {j.at("arc").get<int>(), j.value("offset", 0)};
}

}  // namespace

LinkDiagram parse_diagram_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("diagram JSON: ") + e.what());
  }
  try {
    std::vector<std::array<int, 4>> pd;
    for (const auto& x : j.value("pd", nlohmann::json::array())) {
      if (!x.is_array() || x.size() != 4) throw InputError("each pd entry must have four labels");
      pd.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
    }
    int loops = j.value("free_loops", 0);
    std::vector<Marking> marks;
    for (const auto& m : j.value("markings", nlohmann::json::array())) marks.push_back(marking_from_json(m));
    std::optional<Marking> base;
    if (j.contains("basepoint") && !j["basepoint"].is_null()) base = marking_from_json(j["basepoint"]);
    std::vector<int> signs = j.value("signs", std::vector<int>{});
    if (pd.empty() && loops == 0) throw InputError("diagram JSON describes the empty link");
    return LinkDiagram::from_pd(std::move(pd), loops, std::move(marks), base, signs);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("diagram JSON: ") + e.what());
  }
}

LinkDiagram parse_braid(std::string_view word, int strands) {
  if (strands < 1) throw InputError("braid needs at least one strand");
  std::vector<int> gens;  // signed, 1-based
  std::string w(word);
  for (char& ch : w) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream is(w);
  std::string tok;
  while (is >> tok) {
    int sign = 1;
    std::string body = tok;
    if (body.size() >= 3 && body.substr(body.size() - 3) == "^-1") {
      sign = -1;
      body.resize(body.size() - 3);
    }
    int index = 0;
    try {
      std::size_t used = 0;
      if (!body.empty() && (body[0] == 's' || body[0] == 'S')) {
        if (body[0] == 'S') sign = -sign;
        index = std::stoi(body.substr(1), &used);
        ++used;
      } else {
        index = std::stoi(body, &used);
        if (index < 0) {
          sign = -sign;
          index = -index;
        }
      }
      if (used != body.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError("braid word: cannot read generator '" + tok + "'");
    }
    if (index < 1 || index >= strands) {
      throw InputError("braid generator " + tok + " out of range for " + std::to_string(strands) +
                       " strands");
    }
    gens.push_back(sign * index);
  }

  // Raw labels: 1..strands at the bottom, fresh labels at each crossing.
  std::vector<int> cur(strands);
  std::iota(cur.begin(), cur.end(), 1);
  int next_label = strands + 1;
  std::vector<std::array<int, 4>> raw;
  std::vector<int> signs;
  for (int g : gens) {
    const int i = std::abs(g) - 1;
    const int lo = next_label++, hi = next_label++;
    if (g > 0) {
      // under: position i+1 -> i, over: i -> i+1
      raw.push_back({cur[i + 1], hi, lo, cur[i]});
      signs.push_back(1);
    } else {
      // under: position i -> i+1, over: i+1 -> i
      raw.push_back({cur[i], cur[i + 1], hi, lo});
      signs.push_back(-1);
    }
    cur[i] = lo;
    cur[i + 1] = hi;
  }

  // Close up: the top label of each position is the bottom label.
  std::vector<int> rep(next_label);
  std::iota(rep.begin(), rep.end(), 0);
  for (int p = 0; p < strands; ++p) rep[cur[p]] = p + 1;
  for (auto& x : raw) {
    for (int& a : x) a = rep[a];
  }

  // Walk each closed strand and renumber consecutively.
  std::map<int, std::vector<Slot>> slots;
  for (int c = 0; c < static_cast<int>(raw.size()); ++c) {
    for (int p = 0; p < 4; ++p) slots[raw[c][p]].push_back({c, p});
  }
  auto entering = [&](int c, int p) {
    if (p == 0) return true;
    if (p == 2) return false;
    return signs[c] > 0 ? p == 3 : p == 1;
  };
  std::map<int, int> relabel;
  int label = 0, free_loops = 0;
  for (int p = 1; p <= strands; ++p) {
    if (relabel.count(p)) continue;
    if (!slots.count(p)) {
      ++free_loops;
      relabel[p] = 0;
      continue;
    }
    int a = p;
    do {
      relabel[a] = ++label;
      const auto& ends = slots[a];
      const Slot& head = entering(ends[0].crossing, ends[0].pos) ? ends[0] : ends[1];
      a = raw[head.crossing][(head.pos + 2) % 4];
    } while (a != p);
  }
  for (auto& x : raw) {
    for (int& a : x) a = relabel.at(a);
  }
  return LinkDiagram::from_pd(std::move(raw), free_loops, {}, std::nullopt, signs);
}

std::string render_pd(const LinkDiagram& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : d.crossings()) {
    os << (first ? "" : " ") << "X[" << c.arcs[0] << "," << c.arcs[1] << "," << c.arcs[2] << ","
       << c.arcs[3] << "]";
    first = false;
  }
  return os.str();
}

std::string render_json(const LinkDiagram& d) {
  nlohmann::json j;
  j["pd"] = nlohmann::json::array();
  j["signs"] = nlohmann::json::array();
  for (const auto& c : d.crossings()) {
    j["pd"].push_back(c.arcs);
    j["signs"].push_back(c.sign);
  }
  j["free_loops"] = d.free_loops();
  j["markings"] = nlohmann::json::array();
  for (const auto& m : d.markings()) j["markings"].push_back({{"arc", m.arc}, {"offset", m.offset}});
  if (d.basepoint()) {
    j["basepoint"] = {{"arc", d.basepoint()->arc}, {"offset", d.basepoint()->offset}};
  } else {
    j["basepoint"] = nullptr;
  }
  return j.dump();
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<std::array<int, 4>> pd;
  std::vector<int> signs;
  for (const auto& c : d.crossings()) {
    const auto& x = c.arcs;
    // The old over-strand becomes the under-strand; re-root the cyclic
    // reading at its incoming end.
    if (c.sign > 0) {
      pd.push_back({x[3], x[0], x[1], x[2]});
    } else {
      pd.push_back({x[1], x[2], x[3], x[0]});
    }
    signs.push_back(-c.sign);
  }
  return LinkDiagram::from_pd(std::move(pd), d.free_loops(), d.markings(), d.basepoint(), signs);
}

// ---------------------------------------------------------------------------
// Resolutions

ResolvedState resolve(const LinkDiagram& d, std::span<const std::uint8_t> vertex) {
  const auto& xs = d.crossings();
  if (vertex.size() != xs.size()) {
    throw InputError("resolution vector has length " + std::to_string(vertex.size()) +
                     ", diagram has " + std::to_string(xs.size()) + " crossings");
  }
  const int n = static_cast<int>(xs.size());
  const int arcs = d.arc_count();

  std::vector<std::vector<Slot>> slots(arcs + 1);
  for (int c = 0; c < n; ++c) {
    for (int p = 0; p < 4; ++p) slots[xs[c].arcs[p]].push_back({c, p});
  }
  auto partner = [&](Slot s) {
    static constexpr int zero[4] = {1, 0, 3, 2};
    static constexpr int one[4] = {3, 2, 1, 0};
    return Slot{s.crossing, vertex[s.crossing] ? one[s.pos] : zero[s.pos]};
  };
  auto same = [](Slot a, Slot b) { return a.crossing == b.crossing && a.pos == b.pos; };

  ResolvedState out;
  out.vertex.assign(vertex.begin(), vertex.end());
  out.circle_of_arc.assign(arcs + 1, -1);
  for (int start = 1; start <= arcs; ++start) {
    if (out.circle_of_arc[start] >= 0) continue;
    const int id = static_cast<int>(out.circles.size());
    std::vector<int> circle;
    if (slots[start].empty()) {
      circle.push_back(start);
      out.circle_of_arc[start] = id;
    } else {
      int a = start;
      Slot from = slots[start][0];
      const Slot origin = from;
      do {
        circle.push_back(a);
        out.circle_of_arc[a] = id;
        const auto& ends = slots[a];
        Slot to = same(ends[0], from) ? ends[1] : ends[0];
        Slot across = partner(to);
        a = xs[across.crossing].arcs[across.pos];
        from = across;
      } while (!same(from, origin));
    }
    out.circles.push_back(std::move(circle));
  }

  for (const auto& m : d.markings()) out.circle_of_marking.push_back(out.circle_of_arc.at(m.arc));
  if (d.basepoint()) out.circle_of_basepoint = out.circle_of_arc.at(d.basepoint()->arc);
  return out;
}

ResolvedState resolve(const LinkDiagram& d, std::uint32_t vertex_bits) {
  std::vector<std::uint8_t> v(d.crossing_count());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = (vertex_bits >> c) & 1u;
  return resolve(d, v);
}

}  // namespace khoszul
