#include "khoszul/pointed.hpp"

#include <bit>

#include "khoszul/errors.hpp"

namespace khoszul {

const char* variant_name(PointedVariant v) {
  return v == PointedVariant::Standard ? "standard" : "doubled";
}

PointedVariant parse_variant(std::string_view text) {
  if (text == "standard") return PointedVariant::Standard;
  if (text == "doubled") return PointedVariant::Doubled;
  throw InputError("unknown variant '" + std::string(text) + "' (expected standard or doubled)");
}

PointedComplex assemble_pointed(KhovanovBase base, PointedVariant v, const Integer& coefficient) {
  PointedComplex pc;
  pc.variant = v;
  pc.coefficient = coefficient;
  pc.markings = base.marking_ops.size();
  pc.base = std::move(base);
  if (pc.markings > 16) throw InputError("at most 16 markings are supported");

  const std::size_t n = pc.base_rank();
  const std::uint32_t subsets = 1u << pc.markings;
  const auto& base_grading = pc.base.complex.grading();
  const IntMatrix& d_kh = pc.base.complex.differential();

  std::vector<Grading> grading(subsets * n);
  std::vector<int> filtration(subsets * n);
  IntMatrix d(subsets * n, subsets * n);
  for (std::uint32_t s = 0; s < subsets; ++s) {
    const int k = std::popcount(s);
    const Integer kh_sign = (k % 2 == 0) ? 1 : -1;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t col = pc.index(s, b);
      grading[col] = {base_grading[b].degree + k, base_grading[b].quantum + 2 * k};
      filtration[col] = k;
      for (const auto& e : d_kh.column(b)) d.add(pc.index(s, e.row), col, kh_sign * e.value);
      for (unsigned i = 0; i < pc.markings; ++i) {
        if (s & (1u << i)) continue;
        const Integer c = wedge_sign(s, i) * coefficient;
        for (const auto& e : pc.base.marking_ops[i].column(b)) {
          d.add(pc.index(s | (1u << i), e.row), col, c * e.value);
        }
      }
    }
  }
  pc.complex = FreeChainComplex(std::move(grading), std::move(d), std::move(filtration));
  return pc;
}

PointedComplex build_pointed(const LinkDiagram& d, PointedVariant v) {
  return assemble_pointed(khovanov_base(d, false), v, v == PointedVariant::Standard ? 1 : 2);
}

PointedComplex build_reduced_pointed(const LinkDiagram& d, PointedVariant v) {
  if (!d.basepoint()) throw InputError("reduced pointed complex needs a basepoint");
  for (const auto& m : d.markings()) {
    if (m == *d.basepoint()) throw InputError("basepoint collides with a marking");
  }
  return assemble_pointed(khovanov_base(d, true), v, v == PointedVariant::Standard ? 1 : 2);
}

GradedHomology pointed_homology(const PointedComplex& pc, const Coefficients& c) {
  return homology(pc.complex, c);
}

}  // namespace khoszul
