#include "khoszul/int_matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace khoszul {

namespace {

void check_index(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols) {
  if (r >= rows || c >= cols) {
    throw std::out_of_range("IntMatrix index (" + std::to_string(r) + "," +
                            std::to_string(c) + ") outside " + std::to_string(rows) +
                            "x" + std::to_string(cols));
  }
}

IntMatrix::Column dense_to_column(const std::vector<Integer>& values) {
  IntMatrix::Column col;
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (sgn(values[r]) != 0) col.push_back({r, values[r]});
  }
  return col;
}

// a + s*b on sorted sparse columns
IntMatrix::Column axpy(const IntMatrix::Column& a, const Integer& s,
                       const IntMatrix::Column& b) {
  IntMatrix::Column out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      Integer v = s * b[j].value;
      if (sgn(v) != 0) out.push_back({b[j].row, std::move(v)});
      ++j;
    } else {
      Integer v = a[i].value + s * b[j].value;
      if (sgn(v) != 0) out.push_back({a[i].row, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()) {
  std::size_t ncols = rows.size() == 0 ? 0 : rows.begin()->size();
  cols_.resize(ncols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != ncols) throw std::invalid_argument("ragged matrix literal");
    std::size_t c = 0;
    for (long v : row) {
      if (v != 0) cols_[c].push_back({r, Integer(v)});
      ++c;
    }
    ++r;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].push_back({i, Integer(1)});
  return m;
}

IntMatrix IntMatrix::diagonal(std::size_t rows, std::size_t cols,
                              std::span<const Integer> diag) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) {
    if (sgn(diag[i]) != 0) m.cols_[i].push_back({i, diag[i]});
  }
  return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<Integer>>& rows) {
  std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < ncols; ++c) {
      if (sgn(rows[r][c]) != 0) m.cols_[c].push_back({r, rows[r][c]});
    }
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows,
                                  const std::vector<std::vector<Integer>>& cols) {
  IntMatrix m(rows, 0);
  for (const auto& c : cols) m.append_column(c);
  return m;
}

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool IntMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const Column& c) { return c.empty(); });
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
  check_index(r, c, rows_, cols());
  const auto& col = cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.row < row; });
  if (it != col.end() && it->row == r) return it->value;
  return 0;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Integer& v) {
  check_index(r, c, rows_, cols());
  auto& col = cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.row < row; });
  if (it != col.end() && it->row == r) {
    if (sgn(v) == 0) {
      col.erase(it);
    } else {
      it->value = v;
    }
  } else if (sgn(v) != 0) {
    col.insert(it, {r, v});
  }
}

void IntMatrix::add(std::size_t r, std::size_t c, const Integer& v) {
  if (sgn(v) == 0) return;
  check_index(r, c, rows_, cols());
  auto& col = cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.row < row; });
  if (it != col.end() && it->row == r) {
    it->value += v;
    if (sgn(it->value) == 0) col.erase(it);
  } else {
    col.insert(it, {r, v});
  }
}

std::vector<Integer> IntMatrix::dense_column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (const auto& e : cols_.at(c)) out[e.row] = e.value;
  return out;
}

void IntMatrix::set_column(std::size_t c, const std::vector<Integer>& values) {
  if (values.size() != rows_) throw std::invalid_argument("column length mismatch");
  cols_.at(c) = dense_to_column(values);
}

void IntMatrix::append_column(const std::vector<Integer>& values) {
  if (values.size() != rows_) throw std::invalid_argument("column length mismatch");
  cols_.push_back(dense_to_column(values));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& e : cols_[c]) t.cols_[e.row].push_back({c, e.value});
  }
  return t;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> idx) const {
  IntMatrix m(rows_, 0);
  m.cols_.reserve(idx.size());
  for (std::size_t c : idx) m.cols_.push_back(cols_.at(c));
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  std::vector<std::vector<std::size_t>> targets(rows_);
  for (std::size_t k = 0; k < idx.size(); ++k) targets.at(idx[k]).push_back(k);
  IntMatrix m(idx.size(), cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& e : cols_[c]) {
      for (std::size_t k : targets[e.row]) m.cols_[c].push_back({k, e.value});
    }
    std::sort(m.cols_[c].begin(), m.cols_[c].end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }
  return m;
}

IntMatrix IntMatrix::column_range(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, 0);
  for (std::size_t c = begin; c < end; ++c) m.cols_.push_back(cols_.at(c));
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& e : cols_[c]) {
      if (e.row >= begin && e.row < end) m.cols_[c].push_back({e.row - begin, e.value});
    }
  }
  return m;
}

std::vector<std::vector<Integer>> IntMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols()));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& e : cols_[c]) d[e.row][c] = e.value;
  }
  return d;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
  if (x.size() != cols()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<Integer> y(rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    if (sgn(x[c]) == 0) continue;
    for (const auto& e : cols_[c]) y[e.row] += e.value * x[c];
  }
  return y;
}

std::optional<std::pair<std::size_t, std::size_t>> IntMatrix::first_nonzero() const {
  for (std::size_t c = 0; c < cols(); ++c) {
    if (!cols_[c].empty()) return std::make_pair(cols_[c].front().row, c);
  }
  return std::nullopt;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  IntMatrix out(a.rows(), b.cols());
  std::map<std::size_t, Integer> acc;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    acc.clear();
    for (const auto& eb : b.cols_[c]) {
      for (const auto& ea : a.cols_[eb.row]) acc[ea.row] += ea.value * eb.value;
    }
    for (auto& [r, v] : acc) {
      if (sgn(v) != 0) out.cols_[c].push_back({r, std::move(v)});
    }
  }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix sum: shape mismatch");
  }
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) out.cols_[c] = axpy(a.cols_[c], 1, b.cols_[c]);
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix difference: shape mismatch");
  }
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) out.cols_[c] = axpy(a.cols_[c], -1, b.cols_[c]);
  return out;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  if (sgn(s) == 0) return out;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    out.cols_[c].reserve(a.cols_[c].size());
    for (const auto& e : a.cols_[c]) out.cols_[c].push_back({e.row, s * e.value});
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const auto& x = a.cols_[c];
    const auto& y = b.cols_[c];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].row != y[k].row || x[k].value != y[k].value) return false;
    }
  }
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  auto d = to_dense();
  for (std::size_t r = 0; r < d.size(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < d[r].size(); ++c) os << (c ? "," : "") << d[r][c];
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  IntMatrix out = a;
  for (std::size_t c = 0; c < b.cols(); ++c) out.append_column(b.dense_column(c));
  return out;
}

IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
  return hconcat(a.transpose(), b.transpose()).transpose();
}

IntMatrix block_diagonal(std::span<const IntMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      for (const auto& e : b.column(c)) out.set(r0 + e.row, c0 + c, e.value);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace khoszul
