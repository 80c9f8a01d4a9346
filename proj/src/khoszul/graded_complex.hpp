#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "khoszul/abelian.hpp"
#include "khoszul/int_matrix.hpp"

namespace khoszul {

struct Grading {
  int degree = 0;   // homological (or total) degree; the differential raises it by one
  int quantum = 0;  // preserved by the differential
  auto operator<=>(const Grading&) const = default;
};

// A finite free cochain complex over Z with a global basis, split into
// pieces by (degree, quantum). Generators may also carry a filtration level
// that the differential does not decrease.
class FreeChainComplex {
 public:
  struct Piece {
    std::vector<std::size_t> generators;  // global indices, ascending
  };

  FreeChainComplex() = default;
  // Throws InternalError if d*d != 0, if d does not raise the degree by one
  // while preserving the quantum grading, or if d lowers the filtration.
  FreeChainComplex(std::vector<Grading> grading, IntMatrix differential,
                   std::vector<int> filtration = {});

  std::size_t rank() const { return grading_.size(); }
  const std::vector<Grading>& grading() const { return grading_; }
  const std::vector<int>& filtration() const { return filtration_; }
  const IntMatrix& differential() const { return differential_; }
  const std::map<Grading, Piece>& pieces() const { return pieces_; }
  std::size_t piece_rank(Grading g) const;
  std::size_t local_index(std::size_t global) const { return local_[global]; }

  // Block of a global operator from piece `from` to piece `to`.
  IntMatrix block(const IntMatrix& op, Grading from, Grading to) const;
  IntMatrix d_out(Grading g) const { return block(differential_, g, {g.degree + 1, g.quantum}); }
  IntMatrix d_in(Grading g) const { return block(differential_, {g.degree - 1, g.quantum}, g); }

  // Embeds piece-local column vectors into the global basis.
  IntMatrix to_global(const IntMatrix& local, Grading g) const;

 private:
  std::vector<Grading> grading_;
  std::vector<int> filtration_;
  IntMatrix differential_;
  std::map<Grading, Piece> pieces_;
  std::vector<std::size_t> local_;
};

// Homology split by bidegree. Integral lifts are only kept on request.
struct GradedHomology {
  Coefficients coefficients;
  std::map<Grading, CoefficientReport> groups;  // nonzero bidegrees only
  std::map<Grading, HomologyResult> integral;   // Z with lifts; may include zero groups

  std::size_t total_rank() const;
  std::size_t torsion_count() const;
  std::map<int, std::size_t> rank_by_degree() const;
  std::size_t rank_at(Grading g) const;
  // Euler characteristic sum_{i,j} (-1)^i rank(i,j) q^j, as quantum -> coefficient.
  std::map<int, long> euler_characteristic() const;
};

GradedHomology homology(const FreeChainComplex& c, const Coefficients& coeff,
                        bool with_lifts = false);

// Graded Euler characteristic of the chain groups (same convention).
std::map<int, long> chain_euler_characteristic(const FreeChainComplex& c);

// Field dimensions of H(C; F_p) predicted from integral homology by the
// universal coefficient theorem (cochain convention: Tor from degree+1).
std::map<Grading, std::size_t> field_dims_from_integral(const GradedHomology& integral, unsigned p);

// Checks that d*d == 0 over Z; returns the first violating entry if any.
std::optional<std::pair<std::size_t, std::size_t>> square_defect(const IntMatrix& d);

}  // namespace khoszul
