#include "khoszul/koszul.hpp"

#include <algorithm>
#include <bit>

#include "khoszul/errors.hpp"
#include "khoszul/pointed.hpp"

namespace khoszul {

namespace {

PresentedGroup repeat(const PresentedGroup& m, std::size_t copies) {
  std::vector<IntMatrix> rels(copies, m.rels());
  return PresentedGroup(m.gens() * copies, block_diagonal(rels));
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "X_" + std::to_string(i + 1) + " and X_" + std::to_string(j + 1);
}

}  // namespace

KoszulComplex koszul(const PresentedGroup& module, std::vector<GroupMorphism> endos) {
  const std::size_t l = endos.size();
  if (l > 16) throw InputError("at most 16 endomorphisms are supported");
  const std::size_t g = module.gens();
  for (std::size_t i = 0; i < l; ++i) {
    const auto& x = endos[i].matrix;
    if (x.rows() != g || x.cols() != g || endos[i].source.gens() != g || endos[i].target.gens() != g) {
      throw InternalError("X_" + std::to_string(i + 1) + " is not an endomorphism of the module");
    }
    endos[i].validate();
    if (!module.is_zero(x * x)) throw InternalError("X_" + std::to_string(i + 1) + " does not square to zero");
  }
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i + 1; j < l; ++j) {
      if (!module.is_zero(endos[i].matrix * endos[j].matrix - endos[j].matrix * endos[i].matrix)) {
        throw InternalError(pair_name(i, j) + " do not commute modulo relations");
      }
    }
  }

  KoszulComplex kc;
  kc.module = module;
  kc.subsets.resize(l + 1);
  for (std::uint32_t s = 0; s < (1u << l); ++s) kc.subsets[std::popcount(s)].push_back(s);
  for (std::size_t k = 0; k <= l; ++k) kc.terms.push_back(repeat(module, kc.subsets[k].size()));

  for (std::size_t k = 0; k < l; ++k) {
    const auto& from = kc.subsets[k];
    const auto& to = kc.subsets[k + 1];
    IntMatrix d(to.size() * g, from.size() * g);
    for (std::size_t a = 0; a < from.size(); ++a) {
      for (unsigned i = 0; i < l; ++i) {
        if (from[a] & (1u << i)) continue;
        const std::uint32_t t = from[a] | (1u << i);
        const std::size_t b = std::lower_bound(to.begin(), to.end(), t) - to.begin();
        const Integer sign = wedge_sign(from[a], i);
        for (std::size_t c = 0; c < g; ++c) {
          for (const auto& e : endos[i].matrix.column(c)) d.add(b * g + e.row, a * g + c, sign * e.value);
        }
      }
    }
    kc.differentials.push_back({kc.terms[k], kc.terms[k + 1], std::move(d)});
  }
  for (std::size_t k = 0; k + 1 < kc.differentials.size(); ++k) {
    const IntMatrix dd = kc.differentials[k + 1].matrix * kc.differentials[k].matrix;
    if (!kc.terms[k + 2].is_zero(dd)) {
      throw InternalError("Koszul differential does not square to zero at degree " + std::to_string(k));
    }
  }
  kc.endos = std::move(endos);
  return kc;
}

GroupStructure KoszulHomology::total() const {
  GroupStructure out;
  for (const auto& s : structures) out = direct_sum(out, s);
  return out;
}

KoszulHomology koszul_homology(const KoszulComplex& kc) {
  KoszulHomology out;
  const std::size_t l = kc.terms.size() - 1;
  const PresentedGroup zero = PresentedGroup::free(0);
  for (std::size_t k = 0; k <= l; ++k) {
    const PresentedGroup& here = kc.terms[k];
    GroupMorphism in = k == 0 ? GroupMorphism{zero, here, IntMatrix(here.gens(), 0)} : kc.differentials[k - 1];
    GroupMorphism out_map = k == l ? GroupMorphism{here, zero, IntMatrix(0, here.gens())} : kc.differentials[k];
    PresentedGroup h = presented_homology_at(in, out_map);
    GroupStructure s = h.structure();
    out.total_rank += s.free_rank;
    out.groups.push_back(std::move(h));
    out.structures.push_back(std::move(s));
  }
  return out;
}

HomologyModule homology_module(const FreeChainComplex& c, const GradedHomology& lifted,
                               const std::vector<IntMatrix>& ops, const Integer& scale,
                               std::optional<int> degree) {
  HomologyModule m;
  std::map<Grading, std::size_t> where;
  std::size_t total = 0;
  std::vector<IntMatrix> rels;
  for (const auto& [g, h] : lifted.integral) {
    if (degree && g.degree != *degree) continue;
    if (h.orders.empty()) continue;
    where[g] = m.blocks.size();
    m.blocks.push_back(g);
    m.offsets.push_back(total);
    total += h.orders.size();
    rels.push_back(h.group.rels());
  }
  m.group = PresentedGroup(total, block_diagonal(rels));

  for (const auto& op : ops) {
    auto action = induced_action(c, lifted, op);
    IntMatrix x(total, total);
    for (std::size_t b = 0; b < m.blocks.size(); ++b) {
      const Grading src = m.blocks[b];
      auto dst = where.find({src.degree, src.quantum - 2});
      if (dst == where.end()) continue;
      const IntMatrix& block = action.at(src).matrix;
      for (std::size_t col = 0; col < block.cols(); ++col) {
        for (const auto& e : block.column(col)) {
          x.set(m.offsets[dst->second] + e.row, m.offsets[b] + col, scale * e.value);
        }
      }
    }
    GroupMorphism f{m.group, m.group, std::move(x)};
    f.validate();
    m.endos.push_back(std::move(f));
  }
  return m;
}

GroupStructure KhKoszulResult::total() const {
  GroupStructure out;
  for (const auto& s : by_exterior) out = direct_sum(out, s);
  return out;
}

KhKoszulResult kh_koszul(const KhovanovBase& base, const Integer& scale) {
  const GradedHomology h = homology(base.complex, Coefficients::integers(), true);
  const std::size_t l = base.marking_ops.size();
  KhKoszulResult out;
  out.by_exterior.resize(l + 1);
  std::vector<int> degrees;
  for (const auto& [g, r] : h.integral) {
    if (!r.orders.empty() && (degrees.empty() || degrees.back() != g.degree)) degrees.push_back(g.degree);
  }
  for (int i : degrees) {
    HomologyModule m = homology_module(base.complex, h, base.marking_ops, scale, i);
    KoszulHomology kh = koszul_homology(koszul(m.group, m.endos));
    for (std::size_t k = 0; k <= l; ++k) {
      out.by_exterior[k] = direct_sum(out.by_exterior[k], kh.structures[k]);
      if (!kh.structures[k].is_trivial()) out.entries[{static_cast<int>(k), i + static_cast<int>(k)}] = kh.structures[k];
    }
    out.total_rank += kh.total_rank;
    out.by_degree.emplace(i, std::move(kh));
  }
  return out;
}

}  // namespace khoszul
