#include "khoszul.h"

#include <new>
#include <string>

#include "khoszul/catalog.hpp"
#include "khoszul/errors.hpp"
#include "khoszul/report.hpp"

struct khz_diagram {
  khoszul::LinkDiagram diagram;
  khoszul::InputEcho echo;
  std::string scratch;
};

struct khz_report {
  khoszul::Report report;
  std::string json;
};

namespace {

thread_local std::string last_error;

struct BadParam : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
T& deref(T* p) {
  if (p == nullptr) throw BadParam("null pointer argument");
  return *p;
}

std::string text_of(const char* s, const char* what) {
  if (s == nullptr) throw BadParam(std::string("null ") + what);
  return s;
}

template <class F>
khz_status try_(F&& f) {
  try {
    f();
    last_error.clear();
    return KHZ_OK;
  } catch (const BadParam& e) {
    last_error = e.what();
    return KHZ_E_BAD_PARAM;
  } catch (const khoszul::InputError& e) {
    last_error = e.what();
    return KHZ_E_PARSE;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return KHZ_E_PARSE;
  } catch (const khoszul::InternalError& e) {
    last_error = std::string("internal invariant failed: ") + e.what();
    return KHZ_E_INTERNAL;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return KHZ_E_MEMORY;
  } catch (const std::logic_error& e) {
    last_error = std::string("internal error: ") + e.what();
    return KHZ_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return KHZ_E_UNKNOWN;
  } catch (...) {
    last_error = "unknown exception";
    return KHZ_E_UNKNOWN;
  }
}

khoszul::RunOptions convert(const khz_options* opts) {
  khoszul::RunOptions o;
  if (opts == nullptr) return o;
  if (opts->coefficients) o.coefficients = khoszul::Coefficients::parse(opts->coefficients);
  o.reduced = opts->reduced != 0;
  if (opts->variant) o.variant = khoszul::parse_variant(opts->variant);
  if (opts->khi_dim > 0) o.khi_dim = opts->khi_dim;
  o.timings = opts->timings != 0;
  return o;
}

void emit(const std::string& source, const std::string& text, khoszul::LinkDiagram diagram, khz_diagram_t* out) {
  auto& slot = deref(out);
  slot = new khz_diagram{std::move(diagram), {source, text, 0, std::nullopt}, {}};
}

template <class Cmd>
khz_status run(Cmd cmd, khz_diagram_t d, const khz_options* opts, khz_report_t* out) {
  return try_([&] {
    auto& slot = deref(out);
    const auto& h = deref(d);
    auto* r = new khz_report{cmd(h.diagram, h.echo, convert(opts)), {}};
    r->json = r->report.json.dump(2) + "\n";
    slot = r;
  });
}

}  // namespace

extern "C" {

void khz_options_init(khz_options* opts) {
  if (opts == nullptr) return;
  opts->coefficients = nullptr;
  opts->reduced = 0;
  opts->variant = nullptr;
  opts->khi_dim = 0;
  opts->timings = 1;
}

khz_status khz_diagram_from_pd(const char* text, khz_diagram_t* out) {
  return try_([&] {
    const std::string s = text_of(text, "PD text");
    emit("pd", s, khoszul::parse_pd(s), out);
  });
}

khz_status khz_diagram_from_json(const char* text, khz_diagram_t* out) {
  return try_([&] {
    const std::string s = text_of(text, "JSON text");
    emit("json", s, khoszul::parse_diagram_json(s), out);
  });
}

khz_status khz_diagram_from_braid(const char* word, int strands, khz_diagram_t* out) {
  return try_([&] {
    const std::string s = text_of(word, "braid word");
    emit("braid", s, khoszul::parse_braid(s, strands), out);
    (*out)->echo.strands = strands;
  });
}

khz_status khz_diagram_from_catalog(const char* id, khz_diagram_t* out) {
  return try_([&] {
    const auto& e = khoszul::catalog_entry(text_of(id, "catalog id"));
    emit("link", id, e.diagram, out);
    (*out)->echo.catalog_id = e.id;
  });
}

khz_status khz_diagram_mirror(khz_diagram_t d, khz_diagram_t* out) {
  return try_([&] {
    const auto& h = deref(d);
    emit(h.echo.source, "mirror(" + h.echo.text + ")", khoszul::mirror(h.diagram), out);
    (*out)->echo.strands = h.echo.strands;
  });
}

khz_status khz_diagram_set_points(khz_diagram_t d, const char* spec) {
  return try_([&] {
    auto& h = deref(d);
    auto points = khoszul::parse_points(text_of(spec, "points spec"), h.diagram);
    h.diagram = h.diagram.with_markings(std::move(points), h.diagram.basepoint());
  });
}

khz_status khz_diagram_set_basepoint(khz_diagram_t d, const char* spec) {
  return try_([&] {
    auto& h = deref(d);
    std::optional<khoszul::Marking> bp;
    if (spec != nullptr) bp = khoszul::parse_marking(spec);
    h.diagram = h.diagram.with_markings(h.diagram.markings(), bp);
  });
}

khz_status khz_diagram_crossings(khz_diagram_t d, size_t* n) {
  return try_([&] { deref(n) = deref(d).diagram.crossing_count(); });
}

khz_status khz_diagram_components(khz_diagram_t d, size_t* n) {
  return try_([&] { deref(n) = deref(d).diagram.component_count(); });
}

khz_status khz_diagram_render_pd(khz_diagram_t d, const char** text) {
  return try_([&] {
    auto& h = deref(d);
    auto& slot = deref(text);
    h.scratch = khoszul::render_pd(h.diagram);
    slot = h.scratch.c_str();
  });
}

khz_status khz_diagram_render_json(khz_diagram_t d, const char** text) {
  return try_([&] {
    auto& h = deref(d);
    auto& slot = deref(text);
    h.scratch = khoszul::render_json(h.diagram);
    slot = h.scratch.c_str();
  });
}

void khz_diagram_destroy(khz_diagram_t d) { delete d; }

khz_status khz_run_kh(khz_diagram_t d, const khz_options* opts, khz_report_t* out) {
  return run(khoszul::cmd_kh, d, opts, out);
}

khz_status khz_run_pointed(khz_diagram_t d, const khz_options* opts, khz_report_t* out) {
  return run(khoszul::cmd_pointed, d, opts, out);
}

khz_status khz_run_koszul(khz_diagram_t d, const khz_options* opts, khz_report_t* out) {
  return run(khoszul::cmd_koszul, d, opts, out);
}

khz_status khz_run_ss(khz_diagram_t d, const khz_options* opts, khz_report_t* out) {
  return run(khoszul::cmd_ss, d, opts, out);
}

khz_status khz_run_verify(khz_diagram_t d, const khz_options* opts, khz_report_t* out) {
  return run(khoszul::cmd_verify, d, opts, out);
}

khz_status khz_report_json(khz_report_t r, const char** json) {
  return try_([&] {
    auto& slot = deref(json);
    slot = deref(r).json.c_str();
  });
}

khz_status khz_report_text(khz_report_t r, const char** text) {
  return try_([&] {
    auto& slot = deref(text);
    slot = deref(r).report.text.c_str();
  });
}

khz_status khz_report_exit_code(khz_report_t r, int* code) {
  return try_([&] { deref(code) = deref(r).report.exit_code; });
}

void khz_report_destroy(khz_report_t r) { delete r; }

const char* khz_last_error(void) { return last_error.c_str(); }

const char* khz_status_string(khz_status s) {
  switch (s) {
    case KHZ_OK: return "ok";
    case KHZ_E_BAD_PARAM: return "bad parameter";
    case KHZ_E_PARSE: return "parse error";
    case KHZ_E_INTERNAL: return "internal invariant failure";
    case KHZ_E_MEMORY: return "out of memory";
    case KHZ_E_UNKNOWN: return "unknown error";
  }
  return "unrecognised status";
}

const char* khz_version(void) { return khoszul::kToolVersion; }

}  // extern "C"
