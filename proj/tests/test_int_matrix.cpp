#include <doctest.h>

#include <random>

#include "khoszul/int_matrix.hpp"
#include "support.hpp"

using khoszul::Integer;
using khoszul::IntMatrix;

TEST_SUITE("int_matrix") {
  TEST_CASE("literal, access and sparsity") {
    IntMatrix m{{1, 0, 2}, {0, 0, -3}};
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.nonzeros() == 3);
    CHECK(m.at(1, 2) == -3);
    m.set(1, 2, 0);
    CHECK(m.nonzeros() == 2);
    m.add(0, 0, -1);
    CHECK(m.at(0, 0) == 0);
    CHECK(m.nonzeros() == 1);
    CHECK_FALSE(m.is_zero());
    CHECK(IntMatrix(3, 4).is_zero());
  }

  TEST_CASE("products agree with dense multiplication") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      auto a = testing_support::random_sparse(rng, 6, 5, 0.4, 4);
      auto b = testing_support::random_sparse(rng, 5, 7, 0.4, 4);
      auto p = a * b;
      auto da = a.to_dense(), db = b.to_dense();
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
          Integer s = 0;
          for (std::size_t k = 0; k < 5; ++k) s += da[i][k] * db[k][j];
          CHECK(p.at(i, j) == s);
        }
    }
  }

  TEST_CASE("transpose, slicing and concatenation") {
    IntMatrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(m.transpose().transpose() == m);
    CHECK(m.transpose().at(2, 1) == 6);
    std::vector<std::size_t> cols{2, 0};
    CHECK(m.select_columns(cols) == IntMatrix{{3, 1}, {6, 4}});
    std::vector<std::size_t> rows{1};
    CHECK(m.select_rows(rows) == IntMatrix{{4, 5, 6}});
    CHECK(m.column_range(1, 3) == IntMatrix{{2, 3}, {5, 6}});
    CHECK(hconcat(m, IntMatrix::identity(2)).cols() == 5);
    CHECK(vconcat(m, m).row_range(2, 4) == m);
    std::vector<IntMatrix> blocks{IntMatrix{{1}}, IntMatrix{{2, 3}}};
    auto bd = khoszul::block_diagonal(blocks);
    CHECK(bd == IntMatrix{{1, 0, 0}, {0, 2, 3}});
  }

  TEST_CASE("arithmetic and apply") {
    IntMatrix a{{1, 2}, {3, 4}};
    CHECK(a + a == Integer(2) * a);
    CHECK((a - a).is_zero());
    CHECK(a * IntMatrix::identity(2) == a);
    auto y = a.apply({1, -1});
    CHECK(y == std::vector<Integer>{-1, -1});
    CHECK(IntMatrix(2, 2).first_nonzero() == std::nullopt);
    CHECK(a.first_nonzero() == std::make_pair(std::size_t{0}, std::size_t{0}));
  }

  TEST_CASE("entries beyond 64 bits") {
    IntMatrix m(1, 1);
    Integer big("123456789012345678901234567890");
    m.set(0, 0, big);
    CHECK((m * m).at(0, 0) == big * big);
  }
}
