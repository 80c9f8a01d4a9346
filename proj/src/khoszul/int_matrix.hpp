#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace khoszul {

using Integer = mpz_class;

// Sparse integer matrix in compressed-column form. Only nonzero entries are
// stored; each column is kept sorted by row.
class IntMatrix {
 public:
  struct Entry {
    std::size_t row;
    Integer value;
  };
  using Column = std::vector<Entry>;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  // Row-major literal, for tests and small fixtures.
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::size_t rows, std::size_t cols,
                            std::span<const Integer> diag);
  static IntMatrix from_dense(const std::vector<std::vector<Integer>>& rows);
  // Columns given as dense vectors of equal length.
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<std::vector<Integer>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  std::size_t nonzeros() const;
  bool is_zero() const;

  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& v);
  void add(std::size_t r, std::size_t c, const Integer& v);
  const Column& column(std::size_t c) const { return cols_[c]; }
  std::vector<Integer> dense_column(std::size_t c) const;
  void set_column(std::size_t c, const std::vector<Integer>& values);
  void append_column(const std::vector<Integer>& values);

  IntMatrix transpose() const;
  IntMatrix select_columns(std::span<const std::size_t> idx) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  IntMatrix column_range(std::size_t begin, std::size_t end) const;
  IntMatrix row_range(std::size_t begin, std::size_t end) const;
  std::vector<std::vector<Integer>> to_dense() const;

  std::vector<Integer> apply(const std::vector<Integer>& x) const;

  // First nonzero entry in column-major order.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::vector<Column> cols_;
};

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

}  // namespace khoszul
