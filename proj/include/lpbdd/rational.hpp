#pragma once

// Exact rational scalars, vectors and dense matrices.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace lpbdd {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using Vector = std::vector<Rat>;
using IntVector = std::vector<Int>;

/// Parses "a/b", an integer, or a plain decimal such as "-1.25" exactly.
Rat parse_rational(std::string_view text);

/// Canonical "a/b" (or "a" when the denominator is 1).
std::string format_rational(const Rat& value);

/// Decimal text when the value has a terminating expansion, "a/b" otherwise.
std::string format_decimal_or_rational(const Rat& value);

double to_double(const Rat& value);

/// Smallest k / 10^digits that is >= value.
Rat ceil_to_decimal(double value, int digits);

Rat rat_pow(const Rat& base, unsigned exponent);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("matrix rows have unequal length");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

RatMatrix to_rational(const IntMatrix& m);

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Vector operator*(const RatMatrix& a, std::span<const Rat> x);
Vector operator*(const RatMatrix& a, std::span<const Int> x);

Vector add(std::span<const Rat> a, std::span<const Rat> b);
Vector subtract(std::span<const Rat> a, std::span<const Rat> b);
Vector scale(std::span<const Rat> a, const Rat& factor);

/// Exact Gaussian elimination for a square system; nullopt when singular.
std::optional<Vector> solve(RatMatrix a, Vector b);

Rat determinant(RatMatrix a);

std::size_t rank(RatMatrix a);

bool is_integral(const Rat& value);

inline std::strong_ordering three_way(const Rat& a, const Rat& b) {
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace lpbdd
