#include "khoszul/smith.hpp"

#include <sstream>
#include <stdexcept>

namespace khoszul {

namespace {

using Dense = std::vector<std::vector<Integer>>;

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const Integer& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

Dense dense_identity(std::size_t n) {
  Dense m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Working state for the elimination. Row operations on D are mirrored on U
// (left) and inversely on U^-1 (as column operations); column operations on
// D are mirrored on V and inversely on V^-1.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, SmithOptions opts)
      : rows_(m.rows()), cols_(m.cols()), opts_(opts), d_(m.to_dense()) {
    if (opts_.left) {
      u_ = dense_identity(rows_);
      u_inv_ = dense_identity(rows_);
    }
    if (opts_.right) {
      v_ = dense_identity(cols_);
      v_inv_ = dense_identity(cols_);
    }
  }

  SmithDecomposition run() {
    std::size_t t = 0;
    const std::size_t limit = std::min(rows_, cols_);
    for (; t < limit; ++t) {
      auto pivot = smallest_entry(t, t, rows_, cols_);
      if (!pivot) break;
      move_to(t, *pivot);
      settle_pivot(t);
      if (sgn(d_[t][t]) < 0) negate_row(t);
    }

    SmithDecomposition out;
    out.source_rows = rows_;
    out.source_cols = cols_;
    for (std::size_t i = 0; i < t; ++i) out.divisors.push_back(d_[i][i]);
    out.has_left = opts_.left;
    out.has_right = opts_.right;
    if (opts_.left) {
      out.U = IntMatrix::from_dense(u_);
      out.U_inv = IntMatrix::from_dense(u_inv_);
      if (rows_ == 0) out.U = out.U_inv = IntMatrix(0, 0);
    }
    if (opts_.right) {
      out.V = IntMatrix::from_dense(v_);
      out.V_inv = IntMatrix::from_dense(v_inv_);
      if (cols_ == 0) out.V = out.V_inv = IntMatrix(0, 0);
    }
    return out;
  }

 private:
  using Pos = std::pair<std::size_t, std::size_t>;

  std::optional<Pos> smallest_entry(std::size_t r0, std::size_t c0, std::size_t r1,
                                    std::size_t c1) const {
    std::optional<Pos> best;
    for (std::size_t i = r0; i < r1; ++i) {
      for (std::size_t j = c0; j < c1; ++j) {
        if (sgn(d_[i][j]) == 0) continue;
        if (!best || cmpabs(d_[i][j], d_[best->first][best->second]) < 0) {
          best = Pos{i, j};
          if (cmpabs(d_[i][j], 1) == 0) return best;
        }
      }
    }
    return best;
  }

  void move_to(std::size_t t, Pos p) {
    if (p.first != t) swap_rows(t, p.first);
    if (p.second != t) swap_cols(t, p.second);
  }

  // Clears row t and column t beyond the pivot and enforces that the pivot
  // divides every remaining entry.
  void settle_pivot(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (sgn(d_[i][t]) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_[i][t].get_mpz_t(), d_[t][t].get_mpz_t());
        if (sgn(q) != 0) add_row(i, t, -q);
        if (sgn(d_[i][t]) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (sgn(d_[t][j]) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_[t][j].get_mpz_t(), d_[t][t].get_mpz_t());
        if (sgn(q) != 0) add_col(j, t, -q);
        if (sgn(d_[t][j]) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived: bring it in.
        std::optional<Pos> best;
        for (std::size_t i = t + 1; i < rows_; ++i) {
          if (sgn(d_[i][t]) != 0 && (!best || cmpabs(d_[i][t], d_[best->first][best->second]) < 0))
            best = Pos{i, t};
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (sgn(d_[t][j]) != 0 && (!best || cmpabs(d_[t][j], d_[best->first][best->second]) < 0))
            best = Pos{t, j};
        }
        move_to(t, *best);
        continue;
      }
      auto bad = non_divisible_row(t);
      if (!bad) return;
      add_row(t, *bad, 1);
    }
  }

  std::optional<std::size_t> non_divisible_row(std::size_t t) const {
    const Integer& p = d_[t][t];
    if (cmpabs(p, 1) == 0) return std::nullopt;
    for (std::size_t i = t + 1; i < rows_; ++i) {
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (sgn(d_[i][j]) != 0 && !mpz_divisible_p(d_[i][j].get_mpz_t(), p.get_mpz_t()))
          return i;
      }
    }
    return std::nullopt;
  }

  // row_dst += s * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer& s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn(d_[src][j]) != 0) d_[dst][j] += s * d_[src][j];
    }
    if (opts_.left) {
      for (std::size_t j = 0; j < rows_; ++j) {
        if (sgn(u_[src][j]) != 0) u_[dst][j] += s * u_[src][j];
      }
      // U^-1 <- U^-1 * (I - s e_dst e_src^T): col_src -= s * col_dst
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(u_inv_[i][dst]) != 0) u_inv_[i][src] -= s * u_inv_[i][dst];
      }
    }
  }

  // col_dst += s * col_src
  void add_col(std::size_t dst, std::size_t src, const Integer& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (sgn(d_[i][src]) != 0) d_[i][dst] += s * d_[i][src];
    }
    if (opts_.right) {
      for (std::size_t i = 0; i < cols_; ++i) {
        if (sgn(v_[i][src]) != 0) v_[i][dst] += s * v_[i][src];
      }
      // V^-1 <- (I - s e_src e_dst^T) * V^-1: row_src -= s * row_dst
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(v_inv_[dst][j]) != 0) v_inv_[src][j] -= s * v_inv_[dst][j];
      }
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(d_[a], d_[b]);
    if (opts_.left) {
      std::swap(u_[a], u_[b]);
      for (auto& row : u_inv_) std::swap(row[a], row[b]);
    }
  }

  void swap_cols(std::size_t a, std::size_t b) {
    for (auto& row : d_) std::swap(row[a], row[b]);
    if (opts_.right) {
      for (auto& row : v_) std::swap(row[a], row[b]);
      std::swap(v_inv_[a], v_inv_[b]);
    }
  }

  void negate_row(std::size_t t) {
    for (auto& x : d_[t]) x = -x;
    if (opts_.left) {
      for (auto& x : u_[t]) x = -x;
      for (auto& row : u_inv_) row[t] = -row[t];
    }
  }

  std::size_t rows_, cols_;
  SmithOptions opts_;
  Dense d_, u_, u_inv_, v_, v_inv_;
};

}  // namespace

IntMatrix SmithDecomposition::D() const {
  return IntMatrix::diagonal(source_rows, source_cols, divisors);
}

SmithDecomposition snf(const IntMatrix& m, SmithOptions opts) {
  return SmithWorker(m, opts).run();
}

IntMatrix kernel_basis(const SmithDecomposition& s) {
  if (!s.has_right) throw std::logic_error("kernel_basis needs right transforms");
  if (s.source_cols == 0) return IntMatrix(0, 0);
  return s.V.column_range(s.rank(), s.source_cols);
}

std::optional<IntMatrix> lattice_solve(const SmithDecomposition& s, const IntMatrix& w) {
  if (!s.has_left || !s.has_right) throw std::logic_error("lattice_solve needs both transforms");
  if (w.rows() != s.source_rows) throw std::invalid_argument("lattice_solve: row mismatch");
  IntMatrix uw = s.source_rows == 0 ? IntMatrix(0, w.cols()) : s.U * w;
  IntMatrix z(s.source_cols, w.cols());
  for (std::size_t c = 0; c < uw.cols(); ++c) {
    for (const auto& e : uw.column(c)) {
      if (e.row >= s.rank()) return std::nullopt;
      const Integer& d = s.divisors[e.row];
      if (!mpz_divisible_p(e.value.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      z.set(e.row, c, Integer(e.value / d));
    }
  }
  if (s.source_cols == 0) return z;
  return s.V * z;
}

std::string verify_smith(const IntMatrix& m, const SmithDecomposition& s) {
  std::ostringstream err;
  for (std::size_t i = 0; i < s.divisors.size(); ++i) {
    if (sgn(s.divisors[i]) <= 0) err << "divisor " << i << " not positive; ";
    if (i > 0 && !mpz_divisible_p(s.divisors[i].get_mpz_t(), s.divisors[i - 1].get_mpz_t()))
      err << "divisor chain broken at " << i << "; ";
  }
  if (s.has_left && s.has_right && m.rows() > 0 && m.cols() > 0) {
    if (!(s.U * m * s.V == s.D())) err << "U*M*V != D; ";
  }
  if (s.has_left && m.rows() > 0) {
    if (!(s.U * s.U_inv == IntMatrix::identity(m.rows()))) err << "U not unimodular; ";
  }
  if (s.has_right && m.cols() > 0) {
    if (!(s.V * s.V_inv == IntMatrix::identity(m.cols()))) err << "V not unimodular; ";
  }
  return err.str();
}

}  // namespace khoszul
