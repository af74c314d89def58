#include "lpbdd/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace lpbdd {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// Leading zeros would make GMP read the digits as octal.
Int decimal_digits(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Int(0) : Int(std::string(digits.substr(first)));
}

Int parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  Int v = decimal_digits(s);
  return negative ? Int(-v) : v;
}

Int pow10(unsigned k) {
  Int out = 1;
  for (unsigned i = 0; i < k; ++i) out *= 10;
  return out;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational string");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    Int den = decimal_digits(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
  }

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    body = body.substr(0, e);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    digits = std::string(body);
  }
  Rat value{decimal_digits(digits)};
  long shift = exponent - frac_len;
  if (shift > 0) value *= Rat(pow10(static_cast<unsigned>(shift)));
  if (shift < 0) value /= Rat(pow10(static_cast<unsigned>(-shift)));
  return negative ? Rat(-value) : value;
}

std::string format_rational(const Rat& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_decimal_or_rational(const Rat& value) {
  Int den = denominator(value);
  unsigned twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return format_rational(value);
  unsigned places = std::max(twos, fives);
  if (places == 0) return numerator(value).str();
  Int scaled = numerator(value * Rat(pow10(places)));
  bool negative = scaled < 0;
  std::string digits = (negative ? Int(-scaled) : scaled).str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

double to_double(const Rat& value) { return value.convert_to<double>(); }

Rat ceil_to_decimal(double value, int digits) {
  if (!std::isfinite(value)) throw std::invalid_argument("ceil_to_decimal: non-finite value");
  Int scale = pow10(static_cast<unsigned>(digits));
  double scaled = std::ceil(value * std::pow(10.0, digits));
  std::ostringstream os;
  os.precision(0);
  os << std::fixed << scaled;
  Rat out(Int(os.str()), scale);
  // guard against the multiplication rounding down
  while (out < Rat(value)) out += Rat(1, scale);
  return out;
}

Rat rat_pow(const Rat& base, unsigned exponent) {
  Rat out = 1;
  Rat b = base;
  while (exponent != 0) {
    if (exponent & 1U) out *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

template <class T>
static Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }

Vector operator*(const RatMatrix& a, std::span<const Rat> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) out[i] += a(i, j) * x[j];
  return out;
}

Vector operator*(const RatMatrix& a, std::span<const Int> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) out[i] += a(i, j) * x[j];
  return out;
}

Vector add(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum: dimension mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector subtract(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector difference: dimension mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(std::span<const Rat> a, const Rat& factor) {
  Vector out(a.begin(), a.end());
  for (auto& x : out) x *= factor;
  return out;
}

std::optional<Vector> solve(RatMatrix a, Vector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: expected a square system");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rat f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rat acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

Rat determinant(RatMatrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix is not square");
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rat f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

std::size_t rank(RatMatrix a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rat f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

bool is_integral(const Rat& value) { return denominator(value) == 1; }

}  // namespace lpbdd
