#include "khoszul/abelian.hpp"

#include <charconv>
#include <sstream>

#include "khoszul/errors.hpp"

namespace khoszul {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Coefficients Coefficients::prime_field(unsigned p) {
  if (!is_prime(p)) throw InputError("F_" + std::to_string(p) + ": modulus is not prime");
  return {Kind::PrimeField, p};
}

Coefficients Coefficients::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text == "Zhalf" || text == "Z[1/2]") return z_half();
  if (text.size() > 1 && text[0] == 'F') {
    unsigned p = 0;
    auto body = text.substr(1);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec == std::errc() && ptr == body.data() + body.size()) return prime_field(p);
  }
  throw InputError("unknown coefficient ring '" + std::string(text) +
                   "' (expected Z, Q, F<p>, or Zhalf)");
}

std::string Coefficients::name() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(prime);
    case Kind::IntegersLocalizedAwayFrom2: return "Zhalf";
  }
  return "?";
}

std::string GroupStructure::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

GroupStructure direct_sum(const GroupStructure& a, const GroupStructure& b) {
  // Re-normalise through a diagonal presentation; the torsion parts of a
  // sum need not form a divisor chain.
  std::vector<Integer> diag = a.torsion;
  diag.insert(diag.end(), b.torsion.begin(), b.torsion.end());
  auto s = snf(IntMatrix::diagonal(diag.size(), diag.size(), diag), {false, false});
  GroupStructure out;
  out.free_rank = a.free_rank + b.free_rank;
  for (const auto& d : s.divisors) {
    if (d != 1) out.torsion.push_back(d);
  }
  return out;
}

PresentedGroup::PresentedGroup(std::size_t gens, IntMatrix rels)
    : gens_(gens), rels_(std::move(rels)) {
  if (rels_.rows() != gens_) {
    if (rels_.rows() == 0 && rels_.cols() == 0) {
      rels_ = IntMatrix(gens_, 0);
    } else {
      throw std::invalid_argument("relation matrix must have one row per generator");
    }
  }
}

PresentedGroup PresentedGroup::from_structure(const GroupStructure& s) {
  std::size_t n = s.free_rank + s.torsion.size();
  IntMatrix rels(n, s.torsion.size());
  for (std::size_t i = 0; i < s.torsion.size(); ++i) rels.set(s.free_rank + i, i, s.torsion[i]);
  return {n, std::move(rels)};
}

GroupStructure PresentedGroup::structure() const {
  auto s = snf(rels_, {false, false});
  GroupStructure out;
  out.free_rank = gens_ - s.rank();
  for (const auto& d : s.divisors) {
    if (d != 1) out.torsion.push_back(d);
  }
  return out;
}

bool PresentedGroup::is_zero(const IntMatrix& w) const {
  if (w.rows() != gens_) throw std::invalid_argument("is_zero: vector length mismatch");
  if (w.is_zero()) return true;
  if (rels_.cols() == 0) return false;
  return lattice_solve(snf(rels_), w).has_value();
}

PresentedGroup direct_sum(const PresentedGroup& a, const PresentedGroup& b) {
  IntMatrix blocks[] = {a.rels(), b.rels()};
  return {a.gens() + b.gens(), block_diagonal(blocks)};
}

void GroupMorphism::validate() const {
  if (matrix.rows() != target.gens() || matrix.cols() != source.gens()) {
    throw InternalError("morphism matrix is " + std::to_string(matrix.rows()) + "x" +
                        std::to_string(matrix.cols()) + ", expected " +
                        std::to_string(target.gens()) + "x" + std::to_string(source.gens()));
  }
  if (source.rels().cols() == 0) return;
  if (!target.is_zero(matrix * source.rels())) {
    throw InternalError("morphism does not map source relations into target relations");
  }
}

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f) {
  return {f.source, g.target, g.matrix * f.matrix};
}

std::vector<Integer> HomologyResult::class_of(const std::vector<Integer>& cycle) const {
  auto coords = projection.apply(cycle);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (sgn(orders[i]) != 0) mpz_fdiv_r(coords[i].get_mpz_t(), coords[i].get_mpz_t(),
                                        orders[i].get_mpz_t());
  }
  return coords;
}

IntMatrix HomologyResult::classes_of(const IntMatrix& cycles) const {
  IntMatrix out(orders.size(), 0);
  for (std::size_t c = 0; c < cycles.cols(); ++c) out.append_column(class_of(cycles.dense_column(c)));
  return out;
}

namespace {

void require_composable(const IntMatrix& d_in, const IntMatrix& d_out) {
  if (d_in.rows() != d_out.cols()) {
    throw std::invalid_argument("homology_at: d_in has " + std::to_string(d_in.rows()) +
                                " rows but d_out has " + std::to_string(d_out.cols()) +
                                " columns");
  }
  if (d_in.cols() == 0 || d_out.rows() == 0) return;
  auto comp = d_out * d_in;
  if (auto bad = comp.first_nonzero()) {
    throw InternalError("d_out * d_in != 0: entry (" + std::to_string(bad->first) + "," +
                        std::to_string(bad->second) + ") = " +
                        comp.at(bad->first, bad->second).get_str());
  }
}

}  // namespace

HomologyResult homology_at(const IntMatrix& d_in, const IntMatrix& d_out) {
  require_composable(d_in, d_out);
  const std::size_t c = d_in.rows();
  HomologyResult out;
  if (c == 0) {
    out.group = PresentedGroup::free(0);
    out.lift = IntMatrix(0, 0);
    out.projection = IntMatrix(0, 0);
    return out;
  }

  auto s_out = snf(d_out, {false, true});
  const std::size_t r = s_out.rank();
  const std::size_t k = c - r;
  IntMatrix kernel = kernel_basis(s_out);             // c x k
  IntMatrix to_kernel = s_out.V_inv.row_range(r, c);  // k x c
  IntMatrix a = to_kernel * d_in;                     // k x |C_-|

  auto s_a = snf(a, {true, false});
  std::vector<std::size_t> kept;
  std::vector<Integer> orders;
  for (std::size_t i = s_a.rank(); i < k; ++i) {
    kept.push_back(i);
    orders.emplace_back(0);
  }
  for (std::size_t i = 0; i < s_a.rank(); ++i) {
    if (s_a.divisors[i] != 1) {
      kept.push_back(i);
      orders.push_back(s_a.divisors[i]);
    }
  }

  IntMatrix rels(kept.size(), 0);
  for (std::size_t g = 0; g < kept.size(); ++g) {
    if (sgn(orders[g]) == 0) continue;
    std::vector<Integer> col(kept.size());
    col[g] = orders[g];
    rels.append_column(col);
  }
  out.group = PresentedGroup(kept.size(), std::move(rels));
  out.orders = std::move(orders);
  if (k == 0) {
    out.lift = IntMatrix(c, 0);
    out.projection = IntMatrix(0, c);
    return out;
  }
  out.lift = kernel * s_a.U_inv.select_columns(kept);
  out.projection = s_a.U.select_rows(kept) * to_kernel;
  return out;
}

GroupStructure homology_structure(const IntMatrix& d_in, const IntMatrix& d_out) {
  require_composable(d_in, d_out);
  auto s_in = snf(d_in, {false, false});
  auto s_out = snf(d_out, {false, false});
  GroupStructure g;
  g.free_rank = d_in.rows() - s_in.rank() - s_out.rank();
  for (const auto& d : s_in.divisors) {
    if (d != 1) g.torsion.push_back(d);
  }
  return g;
}

PresentedGroup presented_homology_at(const GroupMorphism& f, const GroupMorphism& g) {
  f.validate();
  g.validate();
  if (f.target.gens() != g.source.gens()) {
    throw std::invalid_argument("presented_homology_at: f and g are not composable");
  }
  if (!g.target.is_zero(g.matrix * f.matrix)) {
    auto comp = g.matrix * f.matrix;
    auto bad = comp.first_nonzero();
    throw InternalError("g o f is nonzero modulo relations (first entry (" +
                        std::to_string(bad->first) + "," + std::to_string(bad->second) + "))");
  }
  const PresentedGroup& mid = f.target;
  const std::size_t n = mid.gens();
  if (n == 0) return PresentedGroup::free(0);

  // Preimage of the target relation lattice: ker [g | R_target], first n coords.
  IntMatrix kernel_gens;
  if (g.target.gens() == 0) {
    kernel_gens = IntMatrix::identity(n);
  } else {
    IntMatrix stacked = hconcat(g.matrix, g.target.rels());
    auto s = snf(stacked, {false, true});
    kernel_gens = kernel_basis(s).row_range(0, n);
  }

  // Lattice basis of the kernel: U^-1 columns scaled by the divisors.
  auto s_k = snf(kernel_gens, {true, false});
  const std::size_t rk = s_k.rank();
  IntMatrix sub = hconcat(f.matrix, mid.rels());
  IntMatrix coords(rk, sub.cols());
  if (sub.cols() > 0) {
    IntMatrix uw = s_k.U * sub;
    for (std::size_t c = 0; c < uw.cols(); ++c) {
      for (const auto& e : uw.column(c)) {
        if (e.row >= rk || !mpz_divisible_p(e.value.get_mpz_t(), s_k.divisors[e.row].get_mpz_t())) {
          throw InternalError("image of f (or a relation) escapes ker g");
        }
        coords.set(e.row, c, Integer(e.value / s_k.divisors[e.row]));
      }
    }
  }
  auto s_q = snf(coords, {false, false});
  GroupStructure h;
  h.free_rank = rk - s_q.rank();
  for (const auto& d : s_q.divisors) {
    if (d != 1) h.torsion.push_back(d);
  }
  return PresentedGroup::from_structure(h);
}

std::string CoefficientReport::to_string() const {
  std::ostringstream os;
  switch (coefficients.kind) {
    case Coefficients::Kind::Integers: {
      GroupStructure g{rank, torsion};
      return g.to_string();
    }
    case Coefficients::Kind::Rationals:
    case Coefficients::Kind::PrimeField:
      if (rank == 0) return "0";
      os << (coefficients.kind == Coefficients::Kind::Rationals ? "Q" : coefficients.name());
      if (rank > 1) os << "^" << rank;
      return os.str();
    case Coefficients::Kind::IntegersLocalizedAwayFrom2: {
      if (rank == 0 && torsion.empty()) return "0";
      bool first = true;
      if (rank > 0) {
        os << "Z[1/2]";
        if (rank > 1) os << "^" << rank;
        first = false;
      }
      for (const auto& t : torsion) {
        os << (first ? "" : " + ") << "Z[1/2]/" << t;
        first = false;
      }
      return os.str();
    }
  }
  return os.str();
}

CoefficientReport change_coefficients(const GroupStructure& g, const Coefficients& c) {
  CoefficientReport r;
  r.coefficients = c;
  switch (c.kind) {
    case Coefficients::Kind::Integers:
      r.rank = g.free_rank;
      r.torsion = g.torsion;
      break;
    case Coefficients::Kind::Rationals:
      r.rank = g.free_rank;
      break;
    case Coefficients::Kind::PrimeField:
      r.rank = g.free_rank;
      for (const auto& t : g.torsion) {
        if (mpz_divisible_ui_p(t.get_mpz_t(), c.prime)) ++r.rank;
      }
      break;
    case Coefficients::Kind::IntegersLocalizedAwayFrom2:
      r.rank = g.free_rank;
      for (const auto& t : g.torsion) {
        Integer odd;
        mpz_tdiv_q_2exp(odd.get_mpz_t(), t.get_mpz_t(), mpz_scan1(t.get_mpz_t(), 0));
        if (odd > 1) r.torsion.push_back(odd);
      }
      break;
  }
  return r;
}

CoefficientReport change_coefficients(const PresentedGroup& g, const Coefficients& c) {
  return change_coefficients(g.structure(), c);
}

}  // namespace khoszul
