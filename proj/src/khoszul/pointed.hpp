#pragma once

#include <bit>
#include <cstdint>
#include <string_view>
#include <vector>

#include "khoszul/graded_complex.hpp"
#include "khoszul/khovanov.hpp"
#include "khoszul/link_diagram.hpp"

namespace khoszul {

enum class PointedVariant { Standard, Doubled };

const char* variant_name(PointedVariant v);
PointedVariant parse_variant(std::string_view text);

// Lambda_p (x) CKh with d(w (x) b) = (-1)^k w (x) d_Kh b + sum_i y_i ^ w (x) c X_i b.
// Generator (S, b) sits at index S * base_rank + b where S is the bitmask
// of wedge factors. Grading: total degree i + k, weight q + 2k, both
// preserved/raised correctly by d; filtration k = |S|.
struct PointedComplex {
  KhovanovBase base;
  PointedVariant variant = PointedVariant::Standard;
  Integer coefficient = 1;  // c in the wedge term
  std::size_t markings = 0;
  FreeChainComplex complex;

  std::size_t base_rank() const { return base.complex.rank(); }
  std::size_t index(std::uint32_t subset, std::size_t b) const { return subset * base_rank() + b; }
};

PointedComplex build_pointed(const LinkDiagram& d, PointedVariant v);
// Requires a basepoint that is not one of the markings.
PointedComplex build_reduced_pointed(const LinkDiagram& d, PointedVariant v);

// Assembles the complex from an existing base. `coefficient` overrides c
// (1 for Standard, 2 for Doubled); tests use it to build corrupted fixtures.
PointedComplex assemble_pointed(KhovanovBase base, PointedVariant v, const Integer& coefficient);

GradedHomology pointed_homology(const PointedComplex& pc, const Coefficients& c);

// Sign of y_i ^ y_S once reordered increasingly: (-1)^{#{s in S : s < i}}.
inline int wedge_sign(std::uint32_t subset, unsigned i) {
  return (std::popcount(subset & ((1u << i) - 1)) % 2 == 0) ? 1 : -1;
}

}  // namespace khoszul
