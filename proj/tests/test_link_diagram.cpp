#include <doctest.h>

#include <bit>
#include <map>
#include <set>

#include "khoszul/catalog.hpp"
#include "khoszul/errors.hpp"
#include "khoszul/link_diagram.hpp"

using namespace khoszul;

TEST_SUITE("link_diagram") {
  TEST_CASE("PD parsing and signs") {
    auto hopf = parse_pd("X[1,3,2,4] X[3,1,4,2]");
    CHECK(hopf.crossing_count() == 2);
    CHECK(hopf.component_count() == 2);
    CHECK(hopf == parse_pd("PD[X[1,3,2,4], X[3,1,4,2]]"));

    auto right = parse_pd("X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]");
    CHECK(right.component_count() == 1);
    CHECK(right.positive_crossings() == 3);
    auto left = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
    CHECK(left.negative_crossings() == 3);

    auto fig8 = catalog_entry("figure-eight").diagram;
    CHECK(fig8.positive_crossings() == 2);
    CHECK(fig8.negative_crossings() == 2);
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_pd("X[1,2,3]"), InputError);
    CHECK_THROWS_AS(parse_pd("X[1,1,2,3]"), InputError);
    CHECK_THROWS_AS(parse_pd("X[1,2,3,5] X[4,2,3,1]"), InputError);
    CHECK_THROWS_AS(parse_pd(""), InputError);
    CHECK_THROWS_AS(parse_diagram_json("{"), InputError);
    CHECK_THROWS_AS(parse_diagram_json(R"({"pd": [], "free_loops": 0})"), InputError);
    CHECK_THROWS_AS(parse_diagram_json(R"({"pd": [[1,2,3]]})"), InputError);
    CHECK_THROWS_AS(parse_braid("s3", 3), InputError);
    CHECK_THROWS_AS(parse_braid("t1", 2), InputError);
    CHECK_THROWS_AS(parse_braid("s1", 0), InputError);
  }

  TEST_CASE("render round trips") {
    for (const auto& e : catalog()) {
      INFO(e.id);
      const auto& d = e.diagram;
      CHECK(parse_diagram_json(render_json(d)) == d);
      if (d.crossing_count() > 0 && d.free_loops() == 0) CHECK(parse_pd(render_pd(d)) == d);
    }
  }

  TEST_CASE("braid closures") {
    auto t = parse_braid("s1 s1 s1", 2);
    CHECK(t.crossing_count() == 3);
    CHECK(t.component_count() == 1);
    CHECK(t.positive_crossings() == 3);
    auto h = parse_braid("s1 s1", 2);
    CHECK(h.component_count() == 2);
    auto u2 = parse_braid("", 2);
    CHECK(u2.crossing_count() == 0);
    CHECK(u2.component_count() == 2);
    CHECK(parse_braid("S1 s2^-1 -1", 3).negative_crossings() == 3);
  }

  TEST_CASE("mirror is an involution that flips signs") {
    for (const auto& e : catalog()) {
      INFO(e.id);
      auto m = mirror(e.diagram);
      CHECK(mirror(m) == e.diagram);
      CHECK(m.positive_crossings() == e.diagram.negative_crossings());
      CHECK(m.component_count() == e.diagram.component_count());
    }
  }

  TEST_CASE("marking validation") {
    auto hopf = catalog_entry("hopf").diagram;
    CHECK_NOTHROW(hopf.with_markings({{1, 0}, {1, 1}}));
    CHECK_THROWS_AS(hopf.with_markings({{1, 0}, {1, 0}}), InputError);
    CHECK_THROWS_AS(hopf.with_markings({{9, 0}}), InputError);
    CHECK_THROWS_AS(hopf.with_markings({{1, -1}}), InputError);
    CHECK_THROWS_AS(hopf.with_markings({{2, 0}}, Marking{2, 0}), InputError);
    auto marked = hopf.with_markings(one_per_component(hopf));
    REQUIRE(marked.markings().size() == 2);
    CHECK(marked.component_of_marking(0) != marked.component_of_marking(1));
  }

  TEST_CASE("resolutions of the right trefoil") {
    auto t = catalog_entry("trefoil").diagram;
    std::map<int, std::multiset<std::size_t>> by_weight;
    for (std::uint32_t v = 0; v < 8; ++v) by_weight[std::popcount(v)].insert(resolve(t, v).circles.size());
    CHECK(by_weight[0] == std::multiset<std::size_t>{2});
    CHECK(by_weight[1] == std::multiset<std::size_t>{1, 1, 1});
    CHECK(by_weight[2] == std::multiset<std::size_t>{2, 2, 2});
    CHECK(by_weight[3] == std::multiset<std::size_t>{3});
  }

  TEST_CASE("free loops are their own circles") {
    auto u3 = catalog_entry("unlink:3").diagram;
    auto s = resolve(u3, 0u);
    CHECK(s.circles.size() == 3);
    CHECK(u3.component_count() == 3);
  }

  TEST_CASE("catalog lookups") {
    CHECK(catalog_entry("trefoil").id == "trefoil-right");
    CHECK(catalog_entry("unlink:1").id == "unknot");
    CHECK_THROWS_AS(catalog_entry("borromean"), InputError);
    CHECK(catalog_entry("hopf").khi_dim == 4);
    CHECK_FALSE(catalog_entry("figure-eight").khi_dim.has_value());
  }
}
