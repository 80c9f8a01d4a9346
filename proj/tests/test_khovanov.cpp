#include <doctest.h>

#include <random>

#include "khoszul/catalog.hpp"
#include "khoszul/khovanov.hpp"
#include "support.hpp"

using namespace khoszul;

namespace {

std::map<std::pair<int, int>, oracle::Group> as_oracle(const GradedHomology& h) {
  std::map<std::pair<int, int>, oracle::Group> out;
  for (const auto& [g, r] : h.groups) {
    oracle::Group o;
    o.free_rank = r.rank;
    for (const auto& t : r.torsion) o.torsion.push_back(t.get_si());
    out[{g.degree, g.quantum}] = o;
  }
  return out;
}

std::map<std::pair<int, int>, oracle::Group> oracle_kh(const LinkDiagram& d) {
  return oracle::khovanov(testing_support::pd_of(d), testing_support::signs_of(d), d.free_loops());
}

std::map<Grading, std::size_t> ranks(const GradedHomology& h) {
  std::map<Grading, std::size_t> out;
  for (const auto& [g, r] : h.groups)
    if (r.rank) out[g] = r.rank;
  return out;
}

}  // namespace

TEST_SUITE("khovanov") {
  TEST_CASE("unlinks are free of rank 2^m") {
    for (int m = 1; m <= 4; ++m) {
      auto h = kh(catalog_entry("unlink:" + std::to_string(m)).diagram, Coefficients::integers());
      CHECK(h.total_rank() == (1u << m));
      CHECK(h.torsion_count() == 0);
    }
  }

  TEST_CASE("hopf link") {
    auto h = kh(catalog_entry("hopf").diagram, Coefficients::integers());
    CHECK(h.total_rank() == 4);
    CHECK(ranks(h) == std::map<Grading, std::size_t>{{{0, 0}, 1}, {{0, 2}, 1}, {{2, 4}, 1}, {{2, 6}, 1}});
  }

  TEST_CASE("catalog links agree with the oracle over Z") {
    for (const auto& e : catalog()) {
      INFO(e.id);
      CHECK(as_oracle(kh(e.diagram, Coefficients::integers())) == oracle_kh(e.diagram));
    }
  }

  TEST_CASE("random braid closures agree with the oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
      const int strands = 2 + trial % 3;
      auto word = testing_support::random_braid(rng, strands, 1 + trial % 5);
      INFO(word);
      auto d = parse_braid(word, strands);
      CHECK(as_oracle(kh(d, Coefficients::integers())) == oracle_kh(d));
    }
  }

  TEST_CASE("Euler characteristic equals the chain-level one") {
    for (const auto& e : catalog()) {
      auto cube = build_cube(e.diagram);
      auto h = homology(cube.complex(), Coefficients::rationals());
      auto chi = chain_euler_characteristic(cube.complex());
      CHECK(h.euler_characteristic() == chi);
    }
  }

  TEST_CASE("right trefoil Jones polynomial shape") {
    auto h = kh(catalog_entry("trefoil-right").diagram, Coefficients::integers());
    CHECK(h.euler_characteristic() == std::map<int, long>{{1, 1}, {3, 1}, {5, 1}, {9, -1}});
  }

  TEST_CASE("mirror duality over Q") {
    for (const char* id : {"trefoil-right", "figure-eight", "hopf"}) {
      INFO(id);
      const auto& d = catalog_entry(id).diagram;
      auto a = ranks(kh(d, Coefficients::rationals()));
      auto b = ranks(kh(mirror(d), Coefficients::rationals()));
      std::map<Grading, std::size_t> flipped;
      for (const auto& [g, r] : a) flipped[{-g.degree, -g.quantum}] = r;
      CHECK(flipped == b);
    }
    CHECK(as_oracle(kh(mirror(catalog_entry("trefoil-right").diagram), Coefficients::integers())) ==
          as_oracle(kh(catalog_entry("trefoil-left").diagram, Coefficients::integers())));
  }

  TEST_CASE("alternate diagrams give the same homology") {
    for (const auto& e : catalog()) {
      auto base = as_oracle(kh(e.diagram, Coefficients::integers()));
      for (std::size_t i = 0; i < e.alternates.size(); ++i) {
        INFO(e.id << " vs " << e.alternate_labels[i]);
        CHECK(as_oracle(kh(e.alternates[i], Coefficients::integers())) == base);
      }
    }
  }

  TEST_CASE("universal coefficients over F2 and F3") {
    for (const auto& e : catalog()) {
      INFO(e.id);
      auto z = kh(e.diagram, Coefficients::integers());
      for (unsigned p : {2u, 3u}) {
        auto f = kh(e.diagram, Coefficients::prime_field(p));
        CHECK(ranks(f) == field_dims_from_integral(z, p));
      }
    }
  }

  TEST_CASE("point operators commute with d and square to zero") {
    auto d = catalog_entry("hopf").diagram;
    auto cube = build_cube(d);
    const auto& dk = cube.complex().differential();
    for (int arc = 1; arc <= d.arc_count(); ++arc) {
      auto x = cube.point_operator(arc);
      CHECK((x * x).is_zero());
      CHECK(dk * x == x * dk);
    }
  }

  TEST_CASE("reduced homology") {
    auto unknot = catalog_entry("unknot").diagram.with_markings({}, Marking{1, 0});
    auto u = kh_reduced(unknot, Coefficients::integers());
    CHECK(u.total_rank() == 1);
    CHECK(u.rank_at({0, 0}) == 1);

    auto t = catalog_entry("trefoil-right").diagram.with_markings({}, Marking{1, 0});
    auto r = kh_reduced(t, Coefficients::rationals());
    CHECK(ranks(r) == std::map<Grading, std::size_t>{{{0, 2}, 1}, {{2, 6}, 1}, {{3, 8}, 1}});
    CHECK(kh_reduced(t, Coefficients::integers()).torsion_count() == 0);

    // the basepoint's component does not matter for a knot
    auto t2 = catalog_entry("trefoil-right").diagram.with_markings({}, Marking{4, 0});
    CHECK(ranks(kh_reduced(t2, Coefficients::rationals())) == ranks(r));
  }

  TEST_CASE("induced action of X on the unknot") {
    auto d = catalog_entry("unknot").diagram;
    auto cube = build_cube(d);
    auto h = homology(cube.complex(), Coefficients::integers(), true);
    auto act = induced_action(cube.complex(), h, cube.point_operator(1));
    REQUIRE(act.count({0, 1}));
    auto m = act.at({0, 1});
    CHECK(m.matrix.at(0, 0) * m.matrix.at(0, 0) == 1);
  }
}
