#include <doctest.h>

#include <random>

#include "khoszul/smith.hpp"
#include "support.hpp"

using namespace khoszul;

namespace {

std::vector<long long> as_ll(const std::vector<Integer>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

TEST_SUITE("smith") {
  TEST_CASE("small examples") {
    auto s = snf(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    CHECK(as_ll(s.divisors) == std::vector<long long>{2, 6, 12});
    CHECK(verify_smith(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, s).empty());

    auto t = snf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(as_ll(t.divisors) == std::vector<long long>{1, 6});

    auto z = snf(IntMatrix(3, 2));
    CHECK(z.rank() == 0);
    CHECK(verify_smith(IntMatrix(3, 2), z).empty());

    auto empty = snf(IntMatrix(0, 4));
    CHECK(empty.rank() == 0);
  }

  TEST_CASE("transforms are optional") {
    IntMatrix m{{4, 6}, {6, 9}};
    auto s = snf(m, {false, false});
    CHECK_FALSE(s.has_left);
    CHECK_FALSE(s.has_right);
    CHECK(as_ll(s.divisors) == std::vector<long long>{1});
  }

  TEST_CASE("kernel basis is saturated and annihilated") {
    IntMatrix m{{2, 4, 6}, {1, 2, 3}};
    auto s = snf(m);
    auto k = kernel_basis(s);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());
    // saturation: the kernel lattice has index 1 in its rational span
    auto ks = snf(k);
    for (const auto& d : ks.divisors) CHECK(d == 1);
  }

  TEST_CASE("lattice solve") {
    IntMatrix m{{2, 0}, {0, 3}};
    auto s = snf(m);
    auto y = lattice_solve(s, IntMatrix{{4}, {-3}});
    REQUIRE(y.has_value());
    CHECK(m * *y == IntMatrix{{4}, {-3}});
    CHECK_FALSE(lattice_solve(s, IntMatrix{{1}, {0}}).has_value());
  }

  TEST_CASE("random matrices against the dense oracle") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 12);
    int compared = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const auto rows = dim(rng), cols = dim(rng);
      auto m = testing_support::random_sparse(rng, rows, cols, 0.35, 6);
      auto s = snf(m);
      INFO(m.to_string());
      REQUIRE(verify_smith(m, s).empty());
      try {
        auto expected = oracle::invariant_factors(testing_support::to_dense(m));
        std::sort(expected.begin(), expected.end());
        CHECK(as_ll(s.divisors) == expected);
        ++compared;
      } catch (const oracle::Overflow&) {
      }
    }
    CHECK(compared > 100);
  }

  TEST_CASE("verify_smith detects tampering") {
    IntMatrix m{{2, 1}, {1, 2}};
    auto s = snf(m);
    REQUIRE(verify_smith(m, s).empty());
    s.divisors.back() += 1;
    CHECK_FALSE(verify_smith(m, s).empty());
  }
}
