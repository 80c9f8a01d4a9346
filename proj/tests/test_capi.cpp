// Exercises the shared library through its C header only.
#include <khoszul.h>

#include <cstdio>
#include <cstring>
#include <string>

namespace {

int failures = 0;

void check(bool ok, const char* what) {
  if (!ok) {
    std::fprintf(stderr, "FAILED: %s (last error: %s)\n", what, khz_last_error());
    ++failures;
  }
}

std::string json_of(khz_report_t r) {
  const char* s = nullptr;
  return khz_report_json(r, &s) == KHZ_OK && s ? s : "";
}

std::string text_of(khz_report_t r) {
  const char* s = nullptr;
  return khz_report_text(r, &s) == KHZ_OK && s ? s : "";
}

bool has(const std::string& haystack, const char* needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

int main() {
  khz_options opts;
  khz_options_init(&opts);
  opts.timings = 0;

  khz_diagram_t hopf = nullptr;
  check(khz_diagram_from_catalog("hopf", &hopf) == KHZ_OK, "catalog lookup");
  size_t n = 0;
  check(khz_diagram_crossings(hopf, &n) == KHZ_OK && n == 2, "hopf crossings");
  check(khz_diagram_components(hopf, &n) == KHZ_OK && n == 2, "hopf components");

  khz_report_t rep = nullptr;
  check(khz_run_kh(hopf, &opts, &rep) == KHZ_OK, "kh run");
  check(has(json_of(rep), "\"total_rank\": 4"), "hopf total rank");
  int code = -1;
  check(khz_report_exit_code(rep, &code) == KHZ_OK && code == 0, "kh exit code");
  khz_report_destroy(rep);

  check(khz_run_verify(hopf, &opts, &rep) == KHZ_OK, "verify run");
  check(has(json_of(rep), "\"verdict\": \"sharp\""), "hopf sharp");
  khz_report_destroy(rep);

  check(khz_diagram_set_points(hopf, "one-per-component") == KHZ_OK, "set points");
  opts.coefficients = "Q";
  check(khz_run_ss(hopf, &opts, &rep) == KHZ_OK, "ss run");
  check(has(text_of(rep), "convergence verified"), "ss converged");
  khz_report_destroy(rep);

  opts.coefficients = "Z";
  rep = nullptr;
  check(khz_run_ss(hopf, &opts, &rep) == KHZ_E_PARSE, "ss over Z rejected");
  check(rep == nullptr, "no report on failure");
  check(khz_diagram_set_points(hopf, "1:0,1:0") == KHZ_E_PARSE, "duplicate markings rejected");
  check(khz_diagram_set_basepoint(hopf, "3:1") == KHZ_OK, "set basepoint");
  check(khz_diagram_set_basepoint(hopf, nullptr) == KHZ_OK, "clear basepoint");

  khz_diagram_t bad = nullptr;
  check(khz_diagram_from_pd("X[1,2,3]", &bad) == KHZ_E_PARSE, "bad PD rejected");
  check(bad == nullptr, "no handle on failure");
  check(std::strlen(khz_last_error()) > 0, "error message set");
  check(khz_diagram_from_catalog("nonesuch", &bad) == KHZ_E_PARSE, "unknown catalog id");
  check(khz_run_kh(nullptr, &opts, &rep) == KHZ_E_BAD_PARAM, "null diagram");
  check(khz_diagram_from_pd("X[1,3,2,4] X[3,1,4,2]", nullptr) == KHZ_E_BAD_PARAM, "null out-pointer");

  khz_diagram_t tref = nullptr;
  check(khz_diagram_from_braid("s1 s1 s1", 2, &tref) == KHZ_OK, "braid");
  khz_diagram_t mir = nullptr;
  check(khz_diagram_mirror(tref, &mir) == KHZ_OK, "mirror");
  const char* pd = nullptr;
  check(khz_diagram_render_pd(mir, &pd) == KHZ_OK && pd && pd[0] == 'X', "render pd");
  const char* js = nullptr;
  check(khz_diagram_render_json(mir, &js) == KHZ_OK && js && has(js, "\"pd\""), "render json");
  check(khz_run_kh(mir, nullptr, &rep) == KHZ_OK, "kh of mirror with default options");
  check(has(json_of(rep), "\"torsion_summands\": 1"), "mirror trefoil torsion");
  khz_report_destroy(rep);

  check(std::strlen(khz_status_string(KHZ_E_PARSE)) > 0, "status string");
  check(khz_version() != nullptr && std::strlen(khz_version()) > 0, "version");

  khz_diagram_destroy(mir);
  khz_diagram_destroy(tref);
  khz_diagram_destroy(hopf);
  khz_diagram_destroy(nullptr);
  khz_report_destroy(nullptr);
  if (failures == 0) std::puts("capi: all checks passed");
  return failures == 0 ? 0 : 1;
}
