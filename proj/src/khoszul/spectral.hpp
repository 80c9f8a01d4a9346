#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "khoszul/abelian.hpp"
#include "khoszul/pointed.hpp"

namespace khoszul {

// (k, t, w): filtration (exterior) degree, total degree, weight.
using SpectralIndex = std::tuple<int, int, int>;

struct SpectralPage {
  int r = 0;
  std::map<SpectralIndex, std::size_t> weighted;           // nonzero entries
  std::map<SpectralIndex, std::size_t> differential_rank;  // rank of d_r leaving the entry

  // Summed over weights, keyed by (k, t).
  std::map<std::pair<int, int>, std::size_t> entries() const;
  std::map<std::pair<int, int>, std::size_t> ranks() const;
  std::size_t total() const;
};

// Exterior-degree filtration spectral sequence of a pointed complex over a
// field. Pages run r = 1 .. l+1 (E_{l+1} = E_inf since the filtration has
// length l). `infinity` is computed separately as the associated graded of
// the homology, not by iterating pages.
struct SpectralSequence {
  Coefficients field;
  std::size_t filtration_length = 0;
  std::vector<SpectralPage> pages;
  SpectralPage infinity;
  int degenerates_at = 1;  // first r with d_{r'} = 0 for every r' >= r
};

SpectralSequence filtration_ss(const PointedComplex& pc, const Coefficients& field);

struct Mismatch {
  std::string check;
  int r = 0;
  SpectralIndex at{};
  long expected = 0;
  long actual = 0;
  std::string to_string() const;
};

struct ConvergenceReport {
  bool passed = true;
  std::vector<std::string> checks;  // names of the checks that ran
  std::vector<Mismatch> mismatches;
};

// Checks: page recurrence dim E_{r+1} = dim ker d_r - rank(incoming d_r),
// monotonicity, support 0 <= k <= l, Euler characteristic per weight,
// E_{l+1} = E_inf, E_inf against the homology of the total complex, E_1
// against Lambda^k (x) Kh(L; field), E_2 against the field Koszul complex of
// the induced module and, over Q, against integral Koszul ranks.
ConvergenceReport verify_convergence(const SpectralSequence& ss, const PointedComplex& pc);

}  // namespace khoszul
