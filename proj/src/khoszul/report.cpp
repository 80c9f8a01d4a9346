#include "khoszul/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "khoszul/catalog.hpp"
#include "khoszul/errors.hpp"
#include "khoszul/graded_complex.hpp"
#include "khoszul/khovanov.hpp"
#include "khoszul/koszul.hpp"
#include "khoszul/spectral.hpp"

namespace khoszul {

using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json torsion_json(const std::vector<Integer>& t) {
  json out = json::array();
  for (const auto& v : t) out.push_back(integer_json(v));
  return out;
}

json structure_json(const GroupStructure& g) {
  return json{{"free_rank", g.free_rank}, {"torsion", torsion_json(g.torsion)}, {"text", g.to_string()}};
}

json marking_json(const Marking& m) { return json{{"arc", m.arc}, {"offset", m.offset}}; }

GroupStructure as_structure(const CoefficientReport& r) { return {r.rank, r.torsion}; }

// Sum of the per-bidegree reports, as text in the report's own ring.
std::string total_text(const GradedHomology& h) {
  CoefficientReport total;
  total.coefficients = h.coefficients;
  GroupStructure acc;
  for (const auto& [g, r] : h.groups) acc = direct_sum(acc, as_structure(r));
  total.rank = acc.free_rank;
  total.torsion = acc.torsion;
  return total.to_string();
}

// Grid with columns ascending and rows descending, like the usual
// Khovanov tables.
std::string grid(const std::string& title, const std::string& col_name, const std::string& row_name,
                 const std::map<std::pair<int, int>, std::string>& cells) {
  std::ostringstream os;
  os << title << "\n";
  if (cells.empty()) {
    os << "  (all zero)\n";
    return os.str();
  }
  std::set<int> cols, rows;
  for (const auto& [key, v] : cells) {
    cols.insert(key.first);
    rows.insert(key.second);
  }
  std::size_t width = 3;
  for (const auto& [key, v] : cells) width = std::max(width, v.size());
  for (int c : cols) width = std::max(width, std::to_string(c).size());
  std::size_t label = std::max(row_name.size() + col_name.size() + 1, std::size_t{4});
  for (int r : rows) label = std::max(label, std::to_string(r).size());

  os << "  " << std::setw(static_cast<int>(label)) << (row_name + "\\" + col_name);
  for (int c : cols) os << "  " << std::setw(static_cast<int>(width)) << c;
  os << "\n";
  for (auto r = rows.rbegin(); r != rows.rend(); ++r) {
    os << "  " << std::setw(static_cast<int>(label)) << *r;
    for (int c : cols) {
      auto it = cells.find({c, *r});
      os << "  " << std::setw(static_cast<int>(width)) << (it == cells.end() ? "." : it->second);
    }
    os << "\n";
  }
  return os.str();
}

std::string describe(const LinkDiagram& d, const InputEcho& in) {
  std::ostringstream os;
  os << (in.catalog_id ? *in.catalog_id : in.source + " input") << " (" << d.crossing_count() << " crossings, "
     << d.component_count() << (d.component_count() == 1 ? " component" : " components") << ")";
  return os.str();
}

LinkDiagram with_default_basepoint(const LinkDiagram& d, bool reduced) {
  if (!reduced || d.basepoint()) return d;
  return d.with_markings(d.markings(), Marking{1, 0});
}

json input_json(const LinkDiagram& d, const InputEcho& in, const RunOptions& o, const std::string& command) {
  json j;
  j["source"] = in.source;
  j["value"] = in.text;
  if (in.source == "braid") j["strands"] = in.strands;
  j["catalog_id"] = in.catalog_id ? json(*in.catalog_id) : json(nullptr);
  j["pd"] = render_pd(d);
  j["free_loops"] = d.free_loops();
  j["crossings"] = d.crossing_count();
  j["components"] = d.component_count();
  json marks = json::array();
  for (const auto& m : d.markings()) marks.push_back(marking_json(m));
  j["markings"] = marks;
  j["basepoint"] = d.basepoint() ? marking_json(*d.basepoint()) : json(nullptr);
  j["coefficients"] = o.coefficients.name();
  j["reduced"] = o.reduced;
  if (command == "pointed" || command == "koszul" || command == "ss") j["variant"] = variant_name(o.variant);
  return j;
}

Report start(const std::string& command, const LinkDiagram& d, const InputEcho& in, const RunOptions& o) {
  Report r;
  r.json["schema_version"] = kSchemaVersion;
  r.json["tool"] = json{{"name", "khoszul"}, {"version", kToolVersion}};
  r.json["command"] = command;
  r.json["input"] = input_json(d, in, o, command);
  return r;
}

void finish(Report& r, const RunOptions& o, const Stopwatch& clock) {
  r.json["status"] = r.exit_code == 0 ? "ok" : "failed";
  if (o.timings) {
    r.json["timings_ms"] = json{{"total", std::round(clock.ms() * 1000.0) / 1000.0}};
  }
}

json homology_groups_json(const GradedHomology& h, const char* deg, const char* q) {
  json groups = json::array();
  for (const auto& [g, rep] : h.groups) {
    groups.push_back(json{{deg, g.degree},
                          {q, g.quantum},
                          {"rank", rep.rank},
                          {"torsion", torsion_json(rep.torsion)},
                          {"text", rep.to_string()}});
  }
  return groups;
}

std::map<std::pair<int, int>, std::string> homology_cells(const GradedHomology& h) {
  std::map<std::pair<int, int>, std::string> cells;
  for (const auto& [g, rep] : h.groups) cells[{g.degree, g.quantum}] = rep.to_string();
  return cells;
}

json euler_json(const std::map<int, long>& chi) {
  json out = json::array();
  for (const auto& [j, c] : chi) out.push_back(json{{"q", j}, {"coefficient", c}});
  return out;
}

Integer wedge_scale(PointedVariant v) { return v == PointedVariant::Standard ? 1 : 2; }

}  // namespace

Marking parse_marking(std::string_view spec) {
  auto read = [&](std::string_view s, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw InputError("bad " + std::string(what) + " '" + std::string(s) + "' in marking '" + std::string(spec) + "'");
    }
    return v;
  };
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return {read(spec, "arc"), 0};
  return {read(spec.substr(0, colon), "arc"), read(spec.substr(colon + 1), "offset")};
}

std::vector<Marking> parse_points(std::string_view spec, const LinkDiagram& d) {
  if (spec == "one-per-component") return one_per_component(d);
  std::vector<Marking> out;
  if (spec.empty()) return out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const auto item = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_marking(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Report cmd_kh(const LinkDiagram& input, const InputEcho& in, const RunOptions& o) {
  Stopwatch clock;
  const LinkDiagram d = with_default_basepoint(input, o.reduced);
  Report r = start("kh", d, in, o);

  KhovanovCube cube(d);
  FreeChainComplex reduced;
  if (o.reduced) reduced = reduced_complex(cube, *d.basepoint()).complex;
  const FreeChainComplex& c = o.reduced ? reduced : cube.complex();
  const GradedHomology h = homology(c, o.coefficients);
  if (h.euler_characteristic() != chain_euler_characteristic(c)) {
    throw InternalError("Euler characteristic of homology differs from that of the chain complex");
  }

  json res;
  res["groups"] = homology_groups_json(h, "i", "j");
  res["total_rank"] = h.total_rank();
  res["torsion_summands"] = h.torsion_count();
  res["total"] = total_text(h);
  res["euler_characteristic"] = euler_json(h.euler_characteristic());
  r.json["result"] = res;

  r.text = "khoszul kh: " + describe(d, in) + ", " + (o.reduced ? "reduced, " : "") + "coefficients " +
           o.coefficients.name() + "\n" + grid("homology by (i, j)", "i", "j", homology_cells(h)) +
           "total: " + total_text(h) + "\n";
  finish(r, o, clock);
  return r;
}

Report cmd_pointed(const LinkDiagram& input, const InputEcho& in, const RunOptions& o) {
  Stopwatch clock;
  const LinkDiagram d = with_default_basepoint(input, o.reduced);
  Report r = start("pointed", d, in, o);

  const PointedComplex pc = o.reduced ? build_reduced_pointed(d, o.variant) : build_pointed(d, o.variant);
  const GradedHomology h = pointed_homology(pc, o.coefficients);

  json res;
  res["markings"] = pc.markings;
  res["groups"] = homology_groups_json(h, "t", "w");
  res["total_rank"] = h.total_rank();
  res["torsion_summands"] = h.torsion_count();
  res["total"] = total_text(h);

  std::string exterior_text;
  if (o.coefficients.is_field()) {
    const SpectralSequence ss = filtration_ss(pc, o.coefficients);
    json ext = json::array();
    std::map<std::pair<int, int>, std::string> cells;
    for (const auto& [kt, n] : ss.infinity.entries()) {
      ext.push_back(json{{"k", kt.first}, {"t", kt.second}, {"dim", n}});
      cells[{kt.first, kt.second}] = std::to_string(n);
    }
    res["by_exterior_degree"] = ext;
    exterior_text = grid("associated graded by (k, t)", "k", "t", cells);
  } else {
    res["by_exterior_degree"] = nullptr;
  }
  r.json["result"] = res;

  r.text = "khoszul pointed: " + describe(d, in) + ", " + std::to_string(pc.markings) + " marking(s), " +
           variant_name(o.variant) + (o.reduced ? ", reduced" : "") + ", coefficients " +
           o.coefficients.name() + "\n" + grid("homology by (t, w)", "t", "w", homology_cells(h)) +
           exterior_text + "total: " + total_text(h) + "\n";
  finish(r, o, clock);
  return r;
}

Report cmd_koszul(const LinkDiagram& input, const InputEcho& in, const RunOptions& o) {
  Stopwatch clock;
  const LinkDiagram d = with_default_basepoint(input, o.reduced);
  if (d.markings().empty()) throw InputError("koszul needs at least one marking (--points)");
  if (o.coefficients.kind != Coefficients::Kind::Integers) {
    throw InputError("koszul works over Z; field ranks come from the ss subcommand");
  }
  Report r = start("koszul", d, in, o);

  const KhovanovBase base = khovanov_base(d, o.reduced);
  const KhKoszulResult k = kh_koszul(base, wedge_scale(o.variant));

  json res;
  res["markings"] = d.markings().size();
  res["scale"] = integer_json(wedge_scale(o.variant));
  json by_k = json::array();
  std::ostringstream text;
  for (std::size_t e = 0; e < k.by_exterior.size(); ++e) {
    json item = structure_json(k.by_exterior[e]);
    by_k.push_back(json{{"k", e}, {"group", item}});
    text << "  k=" << e << ": " << k.by_exterior[e].to_string() << "\n";
  }
  res["by_exterior_degree"] = by_k;
  json entries = json::array();
  std::map<std::pair<int, int>, std::string> cells;
  for (const auto& [kt, s] : k.entries) {
    entries.push_back(json{{"k", kt.first}, {"t", kt.second}, {"group", structure_json(s)}});
    cells[{kt.first, kt.second}] = s.to_string();
  }
  res["entries"] = entries;
  res["total"] = structure_json(k.total());
  res["total_rank"] = k.total_rank;
  r.json["result"] = res;

  r.text = "khoszul koszul: " + describe(d, in) + ", " + std::to_string(d.markings().size()) +
           " marking(s)" + (o.reduced ? ", reduced" : "") + "\n" + "by exterior degree:\n" + text.str() +
           grid("by (k, t)", "k", "t", cells) + "total: " + k.total().to_string() +
           " (rank " + std::to_string(k.total_rank) + ")\n";
  finish(r, o, clock);
  return r;
}

Report cmd_ss(const LinkDiagram& input, const InputEcho& in, const RunOptions& o) {
  Stopwatch clock;
  if (!o.coefficients.is_field()) {
    throw InputError("ss needs field coefficients: use --coeff Q or --coeff F<p>; for integral "
                     "information run the koszul subcommand");
  }
  const LinkDiagram d = with_default_basepoint(input, o.reduced);
  Report r = start("ss", d, in, o);

  const PointedComplex pc = o.reduced ? build_reduced_pointed(d, o.variant) : build_pointed(d, o.variant);
  const SpectralSequence ss = filtration_ss(pc, o.coefficients);
  const ConvergenceReport check = verify_convergence(ss, pc);

  auto page_json = [](const SpectralPage& p) {
    json entries = json::array(), ranks = json::array();
    for (const auto& [kt, n] : p.entries()) entries.push_back(json{{"k", kt.first}, {"t", kt.second}, {"dim", n}});
    for (const auto& [kt, n] : p.ranks()) ranks.push_back(json{{"k", kt.first}, {"t", kt.second}, {"rank", n}});
    return json{{"r", p.r}, {"entries", entries}, {"differential_ranks", ranks}, {"total", p.total()}};
  };

  json res;
  res["filtration_length"] = ss.filtration_length;
  json pages = json::array();
  std::string text;
  for (const auto& p : ss.pages) {
    pages.push_back(page_json(p));
    std::map<std::pair<int, int>, std::string> cells;
    for (const auto& [kt, n] : p.entries()) cells[kt] = std::to_string(n);
    text += grid("E_" + std::to_string(p.r) + " (total " + std::to_string(p.total()) + ")", "k", "t", cells);
  }
  res["pages"] = pages;
  res["infinity"] = page_json(ss.infinity);
  res["degenerates_at"] = ss.degenerates_at;

  json mismatches = json::array();
  for (const auto& m : check.mismatches) {
    mismatches.push_back(json{{"check", m.check},
                              {"r", m.r},
                              {"k", std::get<0>(m.at)},
                              {"t", std::get<1>(m.at)},
                              {"w", std::get<2>(m.at)},
                              {"expected", m.expected},
                              {"actual", m.actual}});
  }
  res["convergence"] = json{{"passed", check.passed}, {"checks", check.checks}, {"mismatches", mismatches}};
  r.json["result"] = res;
  r.exit_code = check.passed ? 0 : 1;

  r.text = "khoszul ss: " + describe(d, in) + ", " + std::to_string(pc.markings) + " marking(s), " +
           variant_name(o.variant) + (o.reduced ? ", reduced" : "") + ", field " + o.coefficients.name() +
           "\n" + text + "degenerates at E_" + std::to_string(ss.degenerates_at) + "; convergence " +
           (check.passed ? "verified" : "FAILED") + "\n";
  for (const auto& m : check.mismatches) r.text += "  " + m.to_string() + "\n";
  finish(r, o, clock);
  return r;
}

Report cmd_verify(const LinkDiagram& input, const InputEcho& in, const RunOptions& o) {
  Stopwatch clock;
  if (o.coefficients.kind != Coefficients::Kind::Integers) {
    throw InputError("verify compares Z-ranks; drop --coeff or pass --coeff Z");
  }
  if (input.component_count() == 0) throw InputError("verify needs a nonempty link");

  std::optional<long> khi = o.khi_dim;
  std::string source = khi ? "user override (--khi-dim)" : "";
  if (!khi && in.catalog_id) {
    const CatalogEntry& e = catalog_entry(*in.catalog_id);
    khi = e.khi_dim;
    if (khi) source = e.khi_source;
  }
  if (khi && *khi < 1) throw InputError("--khi-dim must be at least 1");

  // Unreduced: one marking per component.
  const LinkDiagram unreduced = input.with_markings(one_per_component(input));
  // Reduced: basepoint plus one marking on every other component.
  const Marking bp = input.basepoint() ? *input.basepoint() : Marking{input.components().front().front(), 0};
  std::vector<Marking> others;
  const int bp_component = input.component_of_arc(bp.arc);
  for (std::size_t c = 0; c < input.component_count(); ++c) {
    if (static_cast<int>(c) != bp_component) others.push_back({input.components()[c].front(), 0});
  }
  const LinkDiagram reduced = input.with_markings(others, bp);

  Report r = start("verify", unreduced, in, o);

  struct Inequality {
    const char* name;
    const char* statement;
    long factor;
    const LinkDiagram* diagram;
    bool reduced;
  };
  const Inequality checks[] = {
      {"unreduced", "2 * dim KHI(L) <= rank_Z H(K(X, Kh(L)))", 2, &unreduced, false},
      {"reduced", "dim KHI(L) <= rank_Z H(K(X', Kh~(L, p0)))", 1, &reduced, true},
  };

  json list = json::array();
  bool violated = false, all_unknown = true, all_sharp = true;
  std::ostringstream text;
  text << "khoszul verify: " << describe(input, in) << "\n";
  for (const auto& q : checks) {
    const KhovanovBase base = khovanov_base(*q.diagram, q.reduced);
    const KhKoszulResult k = kh_koszul(base, 1);
    const long rank = static_cast<long>(k.total_rank);
    json item;
    item["name"] = q.name;
    item["statement"] = q.statement;
    json marks = json::array();
    for (const auto& m : q.diagram->markings()) marks.push_back(marking_json(m));
    item["markings"] = marks;
    item["basepoint"] = q.reduced ? marking_json(bp) : json(nullptr);
    item["koszul_rank"] = rank;
    item["koszul_total"] = k.total().to_string();
    std::string verdict;
    if (khi) {
      const long lhs = q.factor * *khi;
      const long slack = rank - lhs;
      verdict = slack == 0 ? "sharp" : (slack > 0 ? "holds" : "violated");
      item["lhs"] = lhs;
      item["slack"] = slack;
      all_unknown = false;
      violated = violated || slack < 0;
      all_sharp = all_sharp && slack == 0;
      text << "  " << q.name << ": " << q.statement << ": " << lhs << " <= " << rank << ", slack " << slack
           << " (" << verdict << ")\n";
    } else {
      verdict = "unknown";
      item["lhs"] = nullptr;
      item["slack"] = nullptr;
      all_sharp = false;
      text << "  " << q.name << ": rank " << rank << "; KHI dimension unknown (pass --khi-dim)\n";
    }
    item["verdict"] = verdict;
    list.push_back(item);
  }

  json res;
  res["khi_dim"] = khi ? json(*khi) : json(nullptr);
  res["khi_source"] = khi ? json(source) : json(nullptr);
  res["inequalities"] = list;
  res["verdict"] = violated ? "violated" : (all_unknown ? "unknown" : (all_sharp ? "sharp" : "holds"));
  r.json["result"] = res;
  r.exit_code = violated ? 1 : 0;
  text << "verdict: " << res["verdict"].get<std::string>() << "\n";
  r.text = text.str();
  finish(r, o, clock);
  return r;
}

}  // namespace khoszul
