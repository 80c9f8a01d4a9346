// khoszul command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>

#include "khoszul.h"

namespace {

struct Args {
  std::string pd, braid, link, diagram_json;
  int strands = 0;
  bool mirror = false;
  std::string coeff = "Z";
  bool reduced = false;
  std::string basepoint, points;
  std::string variant = "standard";
  long khi_dim = 0;
  bool no_timings = false;
  bool quiet = false;
};

using Diagram = std::unique_ptr<khz_diagram, decltype(&khz_diagram_destroy)>;
using Report = std::unique_ptr<khz_report, decltype(&khz_report_destroy)>;

int exit_for(khz_status s) {
  if (s == KHZ_E_PARSE) return 2;
  return 3;
}

int fail(khz_status s) {
  std::cerr << "khoszul: " << khz_status_string(s) << ": " << khz_last_error() << "\n";
  return exit_for(s);
}

std::optional<std::string> slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void add_common(CLI::App* sub, Args& a, bool pointed) {
  auto* input = sub->add_option_group("input", "exactly one diagram source");
  input->add_option("--pd", a.pd, "PD code, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'");
  input->add_option("--braid", a.braid, "braid word, e.g. 's1 s1 s1' (S<i> or s<i>^-1 for inverses)");
  input->add_option("--link", a.link, "catalog id: unknot, unlink:m, hopf, trefoil[-right|-left], figure-eight");
  input->add_option("--diagram-json", a.diagram_json, "diagram JSON file ('-' for stdin)");
  input->require_option(1);
  sub->add_option("--strands", a.strands, "strand count for --braid");
  sub->add_flag("--mirror", a.mirror, "use the mirror image of the diagram");
  sub->add_option("--coeff", a.coeff, "Z, Q, F<p> or Zhalf")->capture_default_str();
  sub->add_flag("--reduced", a.reduced, "reduced complex at the basepoint");
  sub->add_option("--basepoint", a.basepoint, "basepoint arc[:offset] (default 1:0 with --reduced)");
  if (pointed) {
    sub->add_option("--points", a.points, "markings arc:off[,arc:off...] or one-per-component");
    sub->add_option("--variant", a.variant, "standard or doubled")->capture_default_str();
  }
  sub->add_flag("--no-timings", a.no_timings, "omit timings so reports are byte-for-byte reproducible");
  sub->add_flag("--quiet", a.quiet, "no tables on stderr");
}

khz_status load(const Args& a, khz_diagram_t* out) {
  if (!a.pd.empty()) return khz_diagram_from_pd(a.pd.c_str(), out);
  if (!a.braid.empty()) return khz_diagram_from_braid(a.braid.c_str(), a.strands, out);
  if (!a.link.empty()) return khz_diagram_from_catalog(a.link.c_str(), out);
  auto text = slurp(a.diagram_json);
  if (!text) {
    std::cerr << "khoszul: cannot read " << a.diagram_json << "\n";
    return KHZ_E_PARSE;
  }
  return khz_diagram_from_json(text->c_str(), out);
}

int run(const std::string& command, const Args& a) {
  khz_diagram_t raw = nullptr;
  if (khz_status s = load(a, &raw); s != KHZ_OK) return khz_last_error()[0] ? fail(s) : exit_for(s);
  Diagram d(raw, &khz_diagram_destroy);
  if (a.mirror) {
    khz_diagram_t m = nullptr;
    if (khz_status s = khz_diagram_mirror(d.get(), &m); s != KHZ_OK) return fail(s);
    d.reset(m);
  }
  if (!a.basepoint.empty()) {
    if (khz_status s = khz_diagram_set_basepoint(d.get(), a.basepoint.c_str()); s != KHZ_OK) return fail(s);
  }
  if (!a.points.empty()) {
    if (khz_status s = khz_diagram_set_points(d.get(), a.points.c_str()); s != KHZ_OK) return fail(s);
  }

  khz_options opts;
  khz_options_init(&opts);
  opts.coefficients = a.coeff.c_str();
  opts.reduced = a.reduced;
  opts.variant = a.variant.c_str();
  opts.khi_dim = a.khi_dim;
  opts.timings = !a.no_timings;

  khz_report_t rr = nullptr;
  khz_status s = KHZ_OK;
  if (command == "kh") s = khz_run_kh(d.get(), &opts, &rr);
  else if (command == "pointed") s = khz_run_pointed(d.get(), &opts, &rr);
  else if (command == "koszul") s = khz_run_koszul(d.get(), &opts, &rr);
  else if (command == "ss") s = khz_run_ss(d.get(), &opts, &rr);
  else s = khz_run_verify(d.get(), &opts, &rr);
  if (s != KHZ_OK) return fail(s);
  Report report(rr, &khz_report_destroy);

  const char* json = nullptr;
  const char* text = nullptr;
  int code = 0;
  khz_report_json(report.get(), &json);
  khz_report_text(report.get(), &text);
  khz_report_exit_code(report.get(), &code);
  std::fputs(json, stdout);
  if (!a.quiet) std::fputs(text, stderr);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov, pointed Khovanov and Koszul homology of links"};
  app.set_version_flag("--version", std::string(khz_version()));
  app.require_subcommand(1);

  Args a;
  auto* kh = app.add_subcommand("kh", "Khovanov homology table");
  add_common(kh, a, false);
  auto* pointed = app.add_subcommand("pointed", "pointed Khovanov homology (standard or doubled)");
  add_common(pointed, a, true);
  auto* koszul = app.add_subcommand("koszul", "Koszul homology of Kh(L) under the marking actions");
  add_common(koszul, a, true);
  auto* ss = app.add_subcommand("ss", "exterior-degree spectral sequence over a field");
  add_common(ss, a, true);
  auto* verify = app.add_subcommand("verify", "rank inequality against known instanton dimensions");
  add_common(verify, a, false);
  verify->add_option("--khi-dim", a.khi_dim, "externally sourced KHI dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (const auto* sub : app.get_subcommands()) return run(sub->get_name(), a);
  return 2;
}
