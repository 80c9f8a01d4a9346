#pragma once

#include <optional>
#include <vector>

#include "khoszul/int_matrix.hpp"

namespace khoszul {

struct SmithOptions {
  bool left = true;   // compute U and U^-1
  bool right = true;  // compute V and V^-1
};

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank,
// all positive. Inverses are kept alongside so callers can move between
// bases without re-solving.
struct SmithDecomposition {
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
  std::vector<Integer> divisors;  // nonzero diagonal entries, length == rank
  IntMatrix U, U_inv;             // empty (0x0) unless requested
  IntMatrix V, V_inv;

  std::size_t rank() const { return divisors.size(); }
  IntMatrix D() const;
  bool has_left = false;
  bool has_right = false;
};

SmithDecomposition snf(const IntMatrix& m, SmithOptions opts = {});

// Columns of V spanning ker(M) over Z (a saturated lattice basis).
IntMatrix kernel_basis(const SmithDecomposition& s);

// Solves M * Y = W over the integers given snf(M) with both transforms.
// Returns nullopt when some column of W is not in the column lattice of M.
std::optional<IntMatrix> lattice_solve(const SmithDecomposition& s, const IntMatrix& w);

// Rechecks U*M*V = D, the divisor chain, and unimodularity (U*U^-1 = I).
// Returns an empty string when everything holds, otherwise a description.
std::string verify_smith(const IntMatrix& m, const SmithDecomposition& s);

}  // namespace khoszul
