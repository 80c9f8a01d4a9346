#pragma once

#include <random>
#include <string>

#include "khoszul/int_matrix.hpp"
#include "khoszul/link_diagram.hpp"
#include "oracle/dense_snf.hpp"

namespace testing_support {

inline oracle::Dense to_dense(const khoszul::IntMatrix& m) {
  oracle::Dense out(m.rows(), std::vector<long long>(m.cols(), 0));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) out[e.row][c] = e.value.get_si();
  return out;
}

inline khoszul::IntMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density,
                                        int bound) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> value(-bound, bound);
  khoszul::IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(rng) < density) m.set(r, c, value(rng));
  return m;
}

// Random braid word with `length` letters on `strands` strands.
inline std::string random_braid(std::mt19937& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::bernoulli_distribution inverse(0.5);
  std::string word;
  for (int i = 0; i < length; ++i) {
    if (!word.empty()) word += ' ';
    word += (inverse(rng) ? "S" : "s") + std::to_string(gen(rng));
  }
  return word;
}

inline std::vector<std::array<int, 4>> pd_of(const khoszul::LinkDiagram& d) {
  std::vector<std::array<int, 4>> pd;
  for (const auto& c : d.crossings()) pd.push_back(c.arcs);
  return pd;
}

inline std::vector<int> signs_of(const khoszul::LinkDiagram& d) {
  std::vector<int> s;
  for (const auto& c : d.crossings()) s.push_back(c.sign);
  return s;
}

}  // namespace testing_support
