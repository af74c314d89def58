#pragma once

// l_p norm orders and exactly comparable norm magnitudes.

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpbdd/rational.hpp"

namespace lpbdd {

/// The exponent p of an l_p norm: a rational p >= 1, or infinity.
class NormOrder {
 public:
  static NormOrder infinity() { return NormOrder(); }
  static NormOrder finite(const Rat& p);
  /// Accepts "inf", "infinity", an integer, a decimal, or "a/b".
  static NormOrder parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  /// Only meaningful for finite orders.
  const Rat& exponent() const { return exponent_; }
  bool is_integral() const { return !infinite_ && denominator(exponent_) == 1; }
  unsigned integral_exponent() const;
  /// +inf for the infinity norm.
  double value() const;
  std::string to_string() const;

  friend bool operator==(const NormOrder& a, const NormOrder& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.exponent_ == b.exponent_);
  }

 private:
  NormOrder() = default;
  bool infinite_ = true;
  Rat exponent_ = 0;
};

/// Raised when two magnitudes with a non-integral exponent cannot be ordered
/// at the highest working precision and are not structurally equal.
class UndecidedComparison : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-negative real number that arises as an l_p norm.
///
/// For finite p the value is stored through its p-th power as a weighted sum
/// of rational powers, value^p = sum_k weight_k * base_k^p, which keeps radii
/// such as (1/2)(n+1)^{1/p} exact. For p = infinity the value is a single
/// rational.
class Magnitude {
 public:
  struct Term {
    Rat weight;
    Rat base;
    friend bool operator==(const Term&, const Term&) = default;
  };

  static Magnitude zero(NormOrder p);
  static Magnitude from_value(NormOrder p, const Rat& value);
  /// value^p = pth_power. Not available for p = infinity.
  static Magnitude from_pth_power(NormOrder p, const Rat& pth_power);
  static Magnitude from_terms(NormOrder p, std::vector<Term> terms);

  const NormOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// value * factor for a rational factor > 0.
  Magnitude scaled(const Rat& factor) const;

  double to_double() const;
  double pth_power_double() const;

  /// value^p when it is rational (always for integral p).
  std::optional<Rat> exact_pth_power() const;
  /// The value itself when it is provably rational.
  std::optional<Rat> exact_value() const;
  /// Smallest k / 2^bits with k / 2^bits >= value, checked exactly.
  Rat rational_upper_bound(unsigned bits = 40) const;

  friend std::strong_ordering compare(const Magnitude& a, const Magnitude& b);
  friend bool operator==(const Magnitude& a, const Magnitude& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) { return compare(a, b); }

 private:
  Magnitude(NormOrder p, std::vector<Term> terms);
  NormOrder order_;
  std::vector<Term> terms_;
  std::optional<Rat> exact_power_;
};

/// ||v||_p as an exact magnitude.
Magnitude norm_p(std::span<const Rat> v, NormOrder p);

/// Exact comparison of ||v||_p against r without building the magnitude.
std::strong_ordering compare_norm(std::span<const Rat> v, const Magnitude& r);

/// Exact k-th root of a non-negative rational, when it exists.
std::optional<Rat> exact_root(const Rat& value, unsigned k);

}  // namespace lpbdd
