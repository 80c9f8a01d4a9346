#include <doctest.h>

#include <random>

#include "khoszul/abelian.hpp"
#include "khoszul/errors.hpp"
#include "support.hpp"

using namespace khoszul;

namespace {

GroupStructure group(std::size_t free, std::vector<long> torsion) {
  GroupStructure g;
  g.free_rank = free;
  for (long t : torsion) g.torsion.push_back(t);
  return g;
}

GroupMorphism free_map(const IntMatrix& m) {
  return {PresentedGroup::free(m.cols()), PresentedGroup::free(m.rows()), m};
}

// A random pair d_out * d_in = 0: d_in factors through ker d_out.
std::pair<IntMatrix, IntMatrix> random_complex(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(0, 6);
  const std::size_t a = dim(rng), n = dim(rng) + 1, b = dim(rng);
  auto d_out = testing_support::random_sparse(rng, b, n, 0.5, 3);
  auto k = kernel_basis(snf(d_out));
  auto mix = testing_support::random_sparse(rng, k.cols(), a, 0.6, 3);
  return {k * mix, d_out};
}

}  // namespace

TEST_SUITE("abelian") {
  TEST_CASE("coefficient parsing") {
    CHECK(Coefficients::parse("Z") == Coefficients::integers());
    CHECK(Coefficients::parse("Q").is_field());
    CHECK(Coefficients::parse("F5") == Coefficients::prime_field(5));
    CHECK(Coefficients::parse("Zhalf") == Coefficients::z_half());
    CHECK_THROWS_AS(Coefficients::parse("F4"), InputError);
    CHECK_THROWS_AS(Coefficients::parse("R"), InputError);
    CHECK_THROWS_AS(Coefficients::parse("F"), InputError);
  }

  TEST_CASE("canonical forms") {
    PresentedGroup g(3, IntMatrix{{2, 0}, {0, 3}, {0, 0}});
    CHECK(g.structure() == group(1, {6}));
    CHECK(g.structure().to_string() == "Z + Z/6");
    CHECK(PresentedGroup::from_structure(group(2, {2, 4})).structure() == group(2, {2, 4}));
    CHECK(GroupStructure{}.to_string() == "0");
    CHECK(direct_sum(group(1, {2}), group(0, {3})) == group(1, {6}));
    CHECK(direct_sum(group(0, {2}), group(0, {2})) == group(0, {2, 2}));
  }

  TEST_CASE("homology_at") {
    // Z --2--> Z --0--> Z gives Z/2 in the middle
    auto h = homology_at(IntMatrix{{2}}, IntMatrix{{0}});
    CHECK(h.structure() == group(0, {2}));
    CHECK(h.class_of({3}) == std::vector<Integer>{1});
    // Z^2 --(1,1)^T--> ... a free quotient
    auto f = homology_at(IntMatrix{{1}, {1}}, IntMatrix(0, 2));
    CHECK(f.structure() == group(1, {}));
    CHECK_THROWS_AS(homology_at(IntMatrix{{1}}, IntMatrix{{1}}), InternalError);
  }

  TEST_CASE("presented homology with zero maps") {
    PresentedGroup z4(1, IntMatrix{{4}});
    GroupMorphism zero{z4, z4, IntMatrix{{0}}};
    CHECK(presented_homology_at(zero, zero).structure() == group(0, {4}));
    GroupMorphism twice{z4, z4, IntMatrix{{2}}};
    CHECK(presented_homology_at(twice, twice).structure().is_trivial());
    GroupMorphism into{PresentedGroup::free(1), z4, IntMatrix{{0}}};
    CHECK(presented_homology_at(into, twice).structure() == group(0, {2}));
  }

  TEST_CASE("ill-defined morphisms are rejected") {
    PresentedGroup z2(1, IntMatrix{{2}});
    GroupMorphism bad{z2, PresentedGroup::free(1), IntMatrix{{1}}};
    CHECK_THROWS_AS(bad.validate(), InternalError);
    GroupMorphism good{PresentedGroup::free(1), z2, IntMatrix{{1}}};
    CHECK_NOTHROW(good.validate());
    CHECK_FALSE(good.is_zero());
    GroupMorphism killed{PresentedGroup::free(1), z2, IntMatrix{{2}}};
    CHECK(killed.is_zero());
  }

  TEST_CASE("change of coefficients") {
    auto g = group(2, {2, 6, 12});
    CHECK(change_coefficients(g, Coefficients::rationals()).rank == 2);
    CHECK(change_coefficients(g, Coefficients::prime_field(2)).rank == 5);
    CHECK(change_coefficients(g, Coefficients::prime_field(3)).rank == 4);
    CHECK(change_coefficients(g, Coefficients::prime_field(5)).rank == 2);
    auto half = change_coefficients(g, Coefficients::z_half());
    CHECK(half.rank == 2);
    CHECK(half.torsion == std::vector<Integer>{3, 3});
    CHECK(change_coefficients(group(0, {6}), Coefficients::z_half()).to_string() == "Z[1/2]/3");
    CHECK(change_coefficients(group(0, {4}), Coefficients::z_half()).to_string() == "0");
  }

  TEST_CASE("presented_homology_at matches homology_at on free presentations") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      auto [d_in, d_out] = random_complex(rng);
      INFO("d_in=" << d_in.to_string() << " d_out=" << d_out.to_string());
      auto direct = homology_structure(d_in, d_out);
      auto presented = presented_homology_at(free_map(d_in), free_map(d_out)).structure();
      CHECK(direct == presented);
      auto lifted = homology_at(d_in, d_out).structure();
      CHECK(direct == lifted);
      try {
        const auto g = oracle::homology(testing_support::to_dense(d_in), testing_support::to_dense(d_out),
                                        d_in.rows());
        CHECK(direct.free_rank == g.free_rank);
        CHECK(direct.torsion.size() == g.torsion.size());
      } catch (const oracle::Overflow&) {
      }
    }
  }
}
