#pragma once

// Exact-rational lattices: coefficient extraction, l_p ball enumeration and
// counting, minimum distance, and closest vectors.
//
// Enumeration is exponential in the rank and meant for desk-scale instances.
// Candidates are generated in floating point under an inflated l_2 ellipsoid
// and every membership decision is then made exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lpbdd/norm.hpp"
#include "lpbdd/rational.hpp"

namespace lpbdd {

/// d x n matrix whose columns are linearly independent (d >= n >= 1).
class Basis {
 public:
  explicit Basis(RatMatrix columns);
  static Basis identity(std::size_t n);
  static Basis from_integer(const IntMatrix& columns);

  std::size_t ambient_dim() const { return m_.rows(); }
  std::size_t rank() const { return m_.cols(); }
  const RatMatrix& matrix() const { return m_; }
  Vector column(std::size_t j) const { return m_.column(j); }

  /// B x.
  Vector combine(std::span<const Int> x) const { return m_ * x; }
  Vector combine(std::span<const Rat> x) const { return m_ * x; }

  friend bool operator==(const Basis& a, const Basis& b) { return a.m_ == b.m_; }

 private:
  RatMatrix m_;
};

class NotInSpan : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The unique c with B c = v (the Moore-Penrose coefficients B^+ v).
/// Throws NotInSpan when v is outside the column span.
Vector coeffs(const Basis& basis, std::span<const Rat> v);

/// Integer coefficients of v when v is a lattice vector, nullopt otherwise.
std::optional<IntVector> lattice_coeffs(const Basis& basis, std::span<const Rat> v);

enum class Boundary { kClosed, kOpen };

struct BallQuery {
  Magnitude radius;
  Vector center;
  Boundary boundary = Boundary::kClosed;
  bool exclude_zero = false;

  const NormOrder& order() const { return radius.order(); }
};

struct LatticePoint {
  IntVector coeffs;
  Vector point;
};

/// Every v in L(B) with ||v - center||_p <= radius (< for an open ball).
std::vector<LatticePoint> enumerate(const Basis& basis, const BallQuery& query);

std::size_t count(const Basis& basis, const BallQuery& query);

/// True when the ball holds at least one lattice point. Stops at the first.
bool any_in_ball(const Basis& basis, const BallQuery& query);

struct ShortestVector {
  Magnitude length;
  LatticePoint vector;
};

/// lambda_1^{(p)}(L(B)) and a vector attaining it.
ShortestVector lambda1(const Basis& basis, NormOrder p);

struct ClosestVector {
  Magnitude distance;
  LatticePoint vector;
};

/// dist_p(t, L(B)) and a closest lattice vector.
ClosestVector dist(const Basis& basis, std::span<const Rat> target, NormOrder p);

/// |{x in {0,1}^n : ||B x - t||_p <= s}|.
std::size_t count_binary_close(const Basis& basis, std::span<const Rat> target, const Magnitude& s);

/// Upper bound on the number of candidates a ball enumeration may visit before
/// it gives up with std::length_error.
inline constexpr std::uint64_t kEnumerationNodeLimit = 50'000'000;

}  // namespace lpbdd
