#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "khoszul/abelian.hpp"
#include "khoszul/graded_complex.hpp"
#include "khoszul/khovanov.hpp"

namespace khoszul {

// K(X, M) = M (x) Lambda(Z^l) with d(m (x) w) = sum_i X_i m (x) e_i ^ w.
// The summand of K^k indexed by subsets[k][j] occupies generators
// j * M.gens() .. (j+1) * M.gens() - 1.
struct KoszulComplex {
  PresentedGroup module;
  std::vector<GroupMorphism> endos;
  std::vector<std::vector<std::uint32_t>> subsets;  // per k, ascending bitmasks
  std::vector<PresentedGroup> terms;                 // k = 0..l
  std::vector<GroupMorphism> differentials;          // K^k -> K^{k+1}
};

// Checks that every X_i is a well-defined endomorphism, that they pairwise
// commute and square to zero modulo relations, and that d^2 = 0. Failures
// throw InternalError naming the offending pair.
KoszulComplex koszul(const PresentedGroup& module, std::vector<GroupMorphism> endos);

struct KoszulHomology {
  std::vector<PresentedGroup> groups;      // by exterior degree
  std::vector<GroupStructure> structures;  // canonical forms of `groups`
  std::size_t total_rank = 0;              // rank over Q
  GroupStructure total() const;
};

KoszulHomology koszul_homology(const KoszulComplex& kc);

// Integral homology of a complex as a module over the induced actions of
// `ops` (each of quantum degree -2), restricted to one homological degree
// when `degree` is set. Blocks are the nonzero bidegrees in ascending order.
struct HomologyModule {
  std::vector<Grading> blocks;
  std::vector<std::size_t> offsets;
  PresentedGroup group;
  std::vector<GroupMorphism> endos;
};

HomologyModule homology_module(const FreeChainComplex& c, const GradedHomology& lifted,
                               const std::vector<IntMatrix>& ops, const Integer& scale,
                               std::optional<int> degree = std::nullopt);

// K(cX, Kh(L)) split by cube degree i. Entry (k, i + k) of `entries` holds
// the Koszul homology at exterior degree k over cube degree i.
struct KhKoszulResult {
  std::map<int, KoszulHomology> by_degree;
  std::vector<GroupStructure> by_exterior;
  std::map<std::pair<int, int>, GroupStructure> entries;  // (k, t)
  std::size_t total_rank = 0;
  GroupStructure total() const;
};

KhKoszulResult kh_koszul(const KhovanovBase& base, const Integer& scale);

}  // namespace khoszul
