#include "khoszul/graded_complex.hpp"

#include <mutex>

#include "khoszul/errors.hpp"
#include "khoszul/field.hpp"
#include "khoszul/parallel.hpp"

namespace khoszul {

std::optional<std::pair<std::size_t, std::size_t>> square_defect(const IntMatrix& d) {
  if (d.rows() == 0) return std::nullopt;
  return (d * d).first_nonzero();
}

FreeChainComplex::FreeChainComplex(std::vector<Grading> grading, IntMatrix differential,
                                   std::vector<int> filtration)
    : grading_(std::move(grading)),
      filtration_(std::move(filtration)),
      differential_(std::move(differential)) {
  const std::size_t n = grading_.size();
  if (differential_.rows() != n || differential_.cols() != n) {
    throw InternalError("differential is not square on the generator set");
  }
  if (filtration_.empty()) filtration_.assign(n, 0);
  if (filtration_.size() != n) throw InternalError("filtration length mismatch");

  local_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& piece = pieces_[grading_[i]];
    local_[i] = piece.generators.size();
    piece.generators.push_back(i);
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& e : differential_.column(c)) {
      const Grading& src = grading_[c];
      const Grading& dst = grading_[e.row];
      if (dst.degree != src.degree + 1 || dst.quantum != src.quantum) {
        throw InternalError("differential maps generator " + std::to_string(c) + " in bidegree (" +
                            std::to_string(src.degree) + "," + std::to_string(src.quantum) +
                            ") to bidegree (" + std::to_string(dst.degree) + "," +
                            std::to_string(dst.quantum) + ")");
      }
      if (filtration_[e.row] < filtration_[c]) {
        throw InternalError("differential lowers the filtration at generator " + std::to_string(c));
      }
    }
  }
  if (auto bad = square_defect(differential_)) {
    throw InternalError("d*d != 0 at entry (" + std::to_string(bad->first) + "," +
                        std::to_string(bad->second) + ")");
  }
}

std::size_t FreeChainComplex::piece_rank(Grading g) const {
  auto it = pieces_.find(g);
  return it == pieces_.end() ? 0 : it->second.generators.size();
}

IntMatrix FreeChainComplex::block(const IntMatrix& op, Grading from, Grading to) const {
  IntMatrix out(piece_rank(to), piece_rank(from));
  auto it = pieces_.find(from);
  if (it == pieces_.end() || out.rows() == 0) return out;
  const auto& gens = it->second.generators;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (const auto& e : op.column(gens[j])) {
      if (grading_[e.row] == to) out.set(local_[e.row], j, e.value);
    }
  }
  return out;
}

IntMatrix FreeChainComplex::to_global(const IntMatrix& local, Grading g) const {
  IntMatrix out(rank(), local.cols());
  auto it = pieces_.find(g);
  if (it == pieces_.end()) return out;
  for (std::size_t c = 0; c < local.cols(); ++c) {
    for (const auto& e : local.column(c)) out.set(it->second.generators[e.row], c, e.value);
  }
  return out;
}

std::size_t GradedHomology::total_rank() const {
  std::size_t n = 0;
  for (const auto& [g, r] : groups) n += r.rank;
  return n;
}

std::size_t GradedHomology::torsion_count() const {
  std::size_t n = 0;
  for (const auto& [g, r] : groups) n += r.torsion.size();
  return n;
}

std::map<int, std::size_t> GradedHomology::rank_by_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [g, r] : groups) out[g.degree] += r.rank;
  return out;
}

std::size_t GradedHomology::rank_at(Grading g) const {
  auto it = groups.find(g);
  return it == groups.end() ? 0 : it->second.rank;
}

std::map<int, long> GradedHomology::euler_characteristic() const {
  std::map<int, long> chi;
  for (const auto& [g, r] : groups) {
    chi[g.quantum] += (g.degree % 2 == 0 ? 1 : -1) * static_cast<long>(r.rank);
  }
  std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
  return chi;
}

std::map<int, long> chain_euler_characteristic(const FreeChainComplex& c) {
  std::map<int, long> chi;
  for (const auto& [g, piece] : c.pieces()) {
    chi[g.quantum] += (g.degree % 2 == 0 ? 1 : -1) * static_cast<long>(piece.generators.size());
  }
  std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
  return chi;
}

GradedHomology homology(const FreeChainComplex& c, const Coefficients& coeff, bool with_lifts) {
  std::vector<Grading> keys;
  for (const auto& [g, piece] : c.pieces()) keys.push_back(g);

  GradedHomology out;
  out.coefficients = coeff;
  std::mutex m;
  parallel_for(keys.size(), [&](std::size_t k) {
    const Grading g = keys[k];
    IntMatrix d_in = c.d_in(g);
    IntMatrix d_out = c.d_out(g);
    CoefficientReport report;
    std::optional<HomologyResult> lifted;
    switch (coeff.kind) {
      case Coefficients::Kind::Integers:
      case Coefficients::Kind::IntegersLocalizedAwayFrom2: {
        GroupStructure s;
        if (with_lifts && coeff.kind == Coefficients::Kind::Integers) {
          lifted = homology_at(d_in, d_out);
          s = lifted->structure();
        } else {
          s = homology_structure(d_in, d_out);
        }
        report = change_coefficients(s, coeff);
        break;
      }
      case Coefficients::Kind::Rationals: {
        RationalField f;
        report.coefficients = coeff;
        report.rank = d_in.rows() - rank(f, d_in) - rank(f, d_out);
        break;
      }
      case Coefficients::Kind::PrimeField: {
        PrimeField f(coeff.prime);
        report.coefficients = coeff;
        report.rank = d_in.rows() - rank(f, d_in) - rank(f, d_out);
        break;
      }
    }
    std::lock_guard lock(m);
    if (report.rank > 0 || !report.torsion.empty()) out.groups.emplace(g, std::move(report));
    if (lifted) out.integral.emplace(g, std::move(*lifted));
  });
  return out;
}

std::map<Grading, std::size_t> field_dims_from_integral(const GradedHomology& integral, unsigned p) {
  auto p_torsion = [&](Grading g) -> std::size_t {
    auto it = integral.groups.find(g);
    if (it == integral.groups.end()) return 0;
    std::size_t n = 0;
    for (const auto& t : it->second.torsion) {
      if (mpz_divisible_ui_p(t.get_mpz_t(), p)) ++n;
    }
    return n;
  };
  std::map<Grading, std::size_t> dims;
  for (const auto& [g, r] : integral.groups) {
    dims[g] += r.rank + p_torsion(g);
    if (std::size_t tor = p_torsion(g)) dims[{g.degree - 1, g.quantum}] += tor;
  }
  std::erase_if(dims, [](const auto& kv) { return kv.second == 0; });
  return dims;
}

}  // namespace khoszul
