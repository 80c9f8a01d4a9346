#include <doctest.h>

#include "khoszul/catalog.hpp"
#include "khoszul/errors.hpp"
#include "khoszul/report.hpp"

using namespace khoszul;

namespace {

InputEcho link_echo(const std::string& id) { return {"link", id, 0, id}; }

RunOptions quiet(Coefficients c = Coefficients::integers()) {
  RunOptions o;
  o.coefficients = c;
  o.timings = false;
  return o;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("marking specs") {
    CHECK(parse_marking("3") == Marking{3, 0});
    CHECK(parse_marking("3:2") == Marking{3, 2});
    CHECK_THROWS_AS(parse_marking("a:1"), InputError);
    CHECK_THROWS_AS(parse_marking("3:"), InputError);
    const auto& hopf = catalog_entry("hopf").diagram;
    CHECK(parse_points("one-per-component", hopf).size() == 2);
    CHECK(parse_points("1:0,3:1", hopf) == std::vector<Marking>{{1, 0}, {3, 1}});
  }

  TEST_CASE("kh report for the trefoil") {
    auto r = cmd_kh(catalog_entry("trefoil").diagram, link_echo("trefoil"), quiet());
    CHECK(r.exit_code == 0);
    CHECK(r.json["schema_version"] == kSchemaVersion);
    CHECK(r.json["result"]["torsion_summands"] == 1);
    CHECK(r.json["result"]["total"] == "Z^4 + Z/2");
    CHECK_FALSE(r.json.contains("timings_ms"));
    CHECK(r.text.find("total: Z^4 + Z/2") != std::string::npos);
  }

  TEST_CASE("reports are deterministic without timings") {
    const auto& d = catalog_entry("hopf").diagram;
    auto marked = d.with_markings(one_per_component(d));
    CHECK(cmd_ss(marked, link_echo("hopf"), quiet(Coefficients::rationals())).json.dump() ==
          cmd_ss(marked, link_echo("hopf"), quiet(Coefficients::rationals())).json.dump());
  }

  TEST_CASE("pointed and koszul reports") {
    auto d = catalog_entry("unknot").diagram.with_markings({{1, 0}});
    RunOptions o = quiet();
    o.variant = PointedVariant::Doubled;
    auto p = cmd_pointed(d, link_echo("unknot"), o);
    CHECK(p.json["result"]["total"] == "Z^2 + Z/2");
    CHECK(p.json["result"]["by_exterior_degree"].is_null());
    auto k = cmd_koszul(catalog_entry("unlink:3").diagram.with_markings(
                            one_per_component(catalog_entry("unlink:3").diagram)),
                        link_echo("unlink:3"), quiet());
    CHECK(k.json["result"]["total_rank"] == 8);
    CHECK_THROWS_AS(cmd_koszul(catalog_entry("hopf").diagram, link_echo("hopf"), quiet()), InputError);
    CHECK_THROWS_AS(cmd_ss(d, link_echo("unknot"), quiet()), InputError);
  }

  TEST_CASE("verify verdicts") {
    for (const char* id : {"unlink:1", "unlink:2", "unlink:3", "hopf"}) {
      INFO(id);
      auto r = cmd_verify(catalog_entry(id).diagram, link_echo(id), quiet());
      CHECK(r.exit_code == 0);
      CHECK(r.json["result"]["verdict"] == "sharp");
    }
    auto t = cmd_verify(catalog_entry("trefoil").diagram, link_echo("trefoil"), quiet());
    CHECK(t.json["result"]["verdict"] == "unknown");
    CHECK(t.exit_code == 0);
    RunOptions big = quiet();
    big.khi_dim = 100;
    auto v = cmd_verify(catalog_entry("trefoil").diagram, link_echo("trefoil"), big);
    CHECK(v.json["result"]["verdict"] == "violated");
    CHECK(v.exit_code == 1);
  }
}
