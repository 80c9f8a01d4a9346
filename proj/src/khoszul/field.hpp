#pragma once

// Dense linear algebra over Q and F_p. Used for field-coefficient homology,
// spectral-sequence pages, and as the second route for field ranks.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "khoszul/abelian.hpp"
#include "khoszul/int_matrix.hpp"

namespace khoszul {

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(unsigned p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus not prime");
  }

  unsigned characteristic() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p_; }
  value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    // a^(p-2)
    value_type result = 1, base = a % p_;
    unsigned e = p_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  value_type from_integer(const Integer& v) const {
    return static_cast<value_type>(mpz_fdiv_ui(v.get_mpz_t(), p_));
  }

 private:
  std::uint64_t p_;
};

class RationalField {
 public:
  using value_type = mpq_class;

  unsigned characteristic() const { return 0; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  value_type from_integer(const Integer& v) const { return mpq_class(v); }
};

template <class Field>
class DenseMatrix {
 public:
  using T = typename Field::value_type;

  DenseMatrix() = default;
  DenseMatrix(const Field& f, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class Field>
DenseMatrix<Field> to_field(const Field& f, const IntMatrix& m) {
  DenseMatrix<Field> out(f, m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& e : m.column(c)) out(e.row, c) = f.from_integer(e.value);
  }
  return out;
}

template <class Field>
DenseMatrix<Field> multiply(const Field& f, const DenseMatrix<Field>& a,
                            const DenseMatrix<Field>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dense multiply: shape mismatch");
  DenseMatrix<Field> out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!f.is_zero(b(k, j))) out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
      }
    }
  }
  return out;
}

template <class Field>
DenseMatrix<Field> scaled(const Field& f, const DenseMatrix<Field>& a,
                          const typename Field::value_type& s) {
  DenseMatrix<Field> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.mul(a(i, j), s);
  return out;
}

template <class Field>
DenseMatrix<Field> hconcat(const Field& f, const DenseMatrix<Field>& a,
                           const DenseMatrix<Field>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("dense hconcat: row mismatch");
  DenseMatrix<Field> out(f, a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

template <class Field>
DenseMatrix<Field> select(const Field& f, const DenseMatrix<Field>& a,
                          const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  DenseMatrix<Field> out(f, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

inline std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Reduced row echelon form in place; returns pivot columns.
template <class Field>
std::vector<std::size_t> rref(const Field& f, DenseMatrix<Field>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && f.is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    auto inv = f.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m(i, col))) continue;
      auto factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!f.is_zero(m(row, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Field>
std::size_t rank(const Field& f, DenseMatrix<Field> m) {
  // Plain forward elimination is enough for the rank.
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && f.is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    auto inv = f.inv(m(row, col));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (f.is_zero(m(i, col))) continue;
      auto factor = f.mul(m(i, col), inv);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!f.is_zero(m(row, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
      }
    }
    ++row;
  }
  return row;
}

template <class Field>
std::size_t rank(const Field& f, const IntMatrix& m) {
  return rank(f, to_field(f, m));
}

// Basis of the null space as columns.
template <class Field>
DenseMatrix<Field> nullspace(const Field& f, DenseMatrix<Field> m) {
  const std::size_t n = m.cols();
  auto pivots = rref(f, m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  DenseMatrix<Field> out(f, n, n - pivots.size());
  std::size_t k = 0;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    out(free_col, k) = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) out(pivots[r], k) = f.neg(m(r, free_col));
    ++k;
  }
  return out;
}

// Inverse of a square invertible matrix.
template <class Field>
DenseMatrix<Field> inverse(const Field& f, const DenseMatrix<Field>& m) {
  const std::size_t n = m.rows();
  DenseMatrix<Field> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto pivots = rref(f, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    throw std::invalid_argument("inverse: matrix is singular");
  }
  DenseMatrix<Field> out(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

// Homology ker(d_out)/im(d_in) over a field with chain representatives.
template <class Field>
struct FieldHomology {
  std::size_t dim = 0;
  DenseMatrix<Field> lift;        // c x dim
  DenseMatrix<Field> projection;  // dim x c, valid on cycles
};

template <class Field>
FieldHomology<Field> field_homology_at(const Field& f, const DenseMatrix<Field>& d_in,
                                       const DenseMatrix<Field>& d_out) {
  const std::size_t c = d_in.rows();
  auto kernel = nullspace(f, d_out);
  auto both = hconcat(f, d_in, kernel);
  auto echelon = both;
  auto pivots = rref(f, echelon);
  std::vector<std::size_t> image_cols, lift_cols;
  for (auto p : pivots) (p < d_in.cols() ? image_cols : lift_cols).push_back(p);

  FieldHomology<Field> out;
  out.dim = lift_cols.size();
  auto all_rows = iota_indices(c);
  out.lift = select(f, both, all_rows, lift_cols);
  out.projection = DenseMatrix<Field>(f, out.dim, c);
  if (out.dim == 0) return out;

  std::vector<std::size_t> basis_cols = image_cols;
  basis_cols.insert(basis_cols.end(), lift_cols.begin(), lift_cols.end());
  auto basis = select(f, both, all_rows, basis_cols);
  // Independent rows of the basis give an invertible square block.
  DenseMatrix<Field> transposed(f, basis.cols(), basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) transposed(j, i) = basis(i, j);
  auto row_pivots = rref(f, transposed);
  auto square = select(f, basis, row_pivots, iota_indices(basis.cols()));
  auto inv = inverse(f, square);
  const std::size_t offset = image_cols.size();
  for (std::size_t h = 0; h < out.dim; ++h) {
    for (std::size_t k = 0; k < row_pivots.size(); ++k) {
      out.projection(h, row_pivots[k]) = inv(offset + h, k);
    }
  }
  return out;
}

}  // namespace khoszul
