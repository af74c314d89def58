#include "lpbdd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace lpbdd {

Basis::Basis(RatMatrix columns) : m_(std::move(columns)) {
  if (m_.cols() == 0) throw std::invalid_argument("basis needs at least one column");
  if (m_.rows() < m_.cols()) throw std::invalid_argument("basis has more columns than rows");
  if (lpbdd::rank(m_) != m_.cols()) throw std::invalid_argument("basis columns are linearly dependent");
}

Basis Basis::identity(std::size_t n) { return Basis(RatMatrix::identity(n)); }

Basis Basis::from_integer(const IntMatrix& columns) { return Basis(to_rational(columns)); }

Vector coeffs(const Basis& basis, std::span<const Rat> v) {
  const RatMatrix& b = basis.matrix();
  if (v.size() != b.rows()) throw std::invalid_argument("coeffs: dimension mismatch");
  RatMatrix bt = b.transposed();
  auto c = solve(bt * b, bt * v);
  if (!c) throw std::logic_error("coeffs: singular Gram matrix");
  if (b * std::span<const Rat>(*c) != Vector(v.begin(), v.end()))
    throw NotInSpan("vector lies outside the span of the basis");
  return *c;
}

std::optional<IntVector> lattice_coeffs(const Basis& basis, std::span<const Rat> v) {
  Vector c;
  try {
    c = coeffs(basis, v);
  } catch (const NotInSpan&) {
    return std::nullopt;
  }
  IntVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!is_integral(c[i])) return std::nullopt;
    out[i] = numerator(c[i]);
  }
  return out;
}

namespace {

using Real = long double;

// Column-major d x n real matrix with its Gram-Schmidt data.
struct GramSchmidt {
  std::size_t d, n;
  std::vector<Real> b, bstar, mu, norm2;

  GramSchmidt(std::size_t d_, std::size_t n_) : d(d_), n(n_), b(d_ * n_), bstar(d_ * n_), mu(n_ * n_), norm2(n_) {}

  Real* col(std::size_t j) { return b.data() + j * d; }
  Real* star(std::size_t j) { return bstar.data() + j * d; }

  void refresh() {
    for (std::size_t j = 0; j < n; ++j) {
      std::copy(col(j), col(j) + d, star(j));
      for (std::size_t i = 0; i < j; ++i) {
        Real dot = 0;
        for (std::size_t r = 0; r < d; ++r) dot += col(j)[r] * star(i)[r];
        const Real m = dot / norm2[i];
        mu[j * n + i] = m;
        for (std::size_t r = 0; r < d; ++r) star(j)[r] -= m * star(i)[r];
      }
      Real nn = 0;
      for (std::size_t r = 0; r < d; ++r) nn += star(j)[r] * star(j)[r];
      norm2[j] = nn;
    }
  }
};

// LLL with delta = 0.99 in floating point. Returns the unimodular transform
// U (column-major) with reduced = B U; only U is trusted downstream.
std::vector<long long> lll_transform(GramSchmidt g) {
  const std::size_t n = g.n, d = g.d;
  std::vector<long long> u(n * n, 0);
  for (std::size_t j = 0; j < n; ++j) u[j * n + j] = 1;
  g.refresh();
  std::size_t k = 1;
  std::uint64_t steps = 0;
  while (k < n) {
    if (++steps > 100000) break;
    for (std::size_t j = k; j-- > 0;) {
      const Real q = std::round(g.mu[k * n + j]);
      if (q == 0) continue;
      const auto qi = static_cast<long long>(q);
      for (std::size_t r = 0; r < d; ++r) g.col(k)[r] -= q * g.col(j)[r];
      for (std::size_t r = 0; r < n; ++r) u[k * n + r] -= qi * u[j * n + r];
      for (std::size_t i = 0; i < j; ++i) g.mu[k * n + i] -= q * g.mu[j * n + i];
      g.mu[k * n + j] -= q;
    }
    const Real m = g.mu[k * n + k - 1];
    if (g.norm2[k] >= (0.99L - m * m) * g.norm2[k - 1]) {
      ++k;
      continue;
    }
    std::swap_ranges(g.col(k), g.col(k) + d, g.col(k - 1));
    std::swap_ranges(u.begin() + static_cast<long>(k * n), u.begin() + static_cast<long>((k + 1) * n),
                     u.begin() + static_cast<long>((k - 1) * n));
    g.refresh();
    k = std::max<std::size_t>(k - 1, 1);
  }
  return u;
}

// Fincke-Pohst style candidate generation on an LLL-reduced copy of the basis.
// Candidates are reported in the coordinates of the original basis.
class CandidateWalker {
 public:
  explicit CandidateWalker(const Basis& basis) : d_(basis.ambient_dim()), n_(basis.rank()), g_(d_, n_) {
    const RatMatrix& b = basis.matrix();
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t r = 0; r < d_; ++r) g_.col(j)[r] = static_cast<Real>(to_double(b(r, j)));
    u_ = lll_transform(g_);
    // Recompute the reduced columns exactly before going back to floating point.
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t r = 0; r < d_; ++r) {
        Rat acc = 0;
        for (std::size_t i = 0; i < n_; ++i)
          if (u_[j * n_ + i] != 0) acc += b(r, i) * u_[j * n_ + i];
        g_.col(j)[r] = static_cast<Real>(to_double(acc));
      }
    g_.refresh();
    x_orig_.assign(n_, 0);
  }

  // Visits every integer x with ||B x - t||_2^2 <= radius2 (up to slack).
  // The visitor returns false to stop early.
  void walk(std::span<const Rat> center, Real radius2, const std::function<bool(std::span<const long long>)>& visit) {
    std::vector<Real> t(d_);
    Real t_norm2 = 0;
    for (std::size_t r = 0; r < d_; ++r) {
      t[r] = static_cast<Real>(to_double(center[r]));
      t_norm2 += t[r] * t[r];
    }
    center_.assign(n_, 0);
    Real par = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      Real dot = 0;
      for (std::size_t r = 0; r < d_; ++r) dot += t[r] * g_.star(i)[r];
      center_[i] = dot / g_.norm2[i];
      par += center_[i] * center_[i] * g_.norm2[i];
    }
    Real perp = std::max<Real>(0, t_norm2 - par);
    Real slack = 1e-9L * (1 + t_norm2 + radius2);
    budget_ = radius2 * (1 + 1e-9L) + slack - perp;
    if (budget_ < 0) return;

    x_.assign(n_, 0);
    nodes_ = 0;
    stop_ = false;
    visit_ = &visit;
    recurse(n_, 0);
  }

  // Nearest-plane rounding of the center, used to seed closest-vector searches.
  std::vector<long long> babai(std::span<const Rat> center) {
    std::vector<Real> t(d_);
    for (std::size_t r = 0; r < d_; ++r) t[r] = static_cast<Real>(to_double(center[r]));
    std::vector<Real> ct(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Real dot = 0;
      for (std::size_t r = 0; r < d_; ++r) dot += t[r] * g_.star(i)[r];
      ct[i] = dot / g_.norm2[i];
    }
    std::vector<long long> y(n_);
    for (std::size_t i = n_; i-- > 0;) {
      Real c = ct[i];
      for (std::size_t j = i + 1; j < n_; ++j) c -= g_.mu[j * n_ + i] * static_cast<Real>(y[j]);
      y[i] = std::llround(c);
    }
    to_original(y);
    return x_orig_;
  }

 private:
  void recurse(std::size_t level, Real partial) {
    if (stop_) return;
    if (level == 0) {
      to_original(x_);
      if (!(*visit_)(x_orig_)) stop_ = true;
      return;
    }
    const std::size_t i = level - 1;
    Real c = center_[i];
    for (std::size_t j = i + 1; j < n_; ++j) c -= g_.mu[j * n_ + i] * static_cast<Real>(x_[j]);
    Real rem = budget_ - partial;
    if (rem < 0) return;
    Real w = std::sqrt(rem / g_.norm2[i]);
    auto lo = static_cast<long long>(std::ceil(c - w));
    auto hi = static_cast<long long>(std::floor(c + w));
    for (long long xi = lo; xi <= hi && !stop_; ++xi) {
      if (++nodes_ > kEnumerationNodeLimit) throw std::length_error("enumeration exceeded the node limit");
      Real y = static_cast<Real>(xi) - c;
      x_[i] = xi;
      recurse(i, partial + y * y * g_.norm2[i]);
    }
    x_[i] = 0;
  }

  // x = U y
  void to_original(std::span<const long long> y) {
    std::fill(x_orig_.begin(), x_orig_.end(), 0);
    for (std::size_t j = 0; j < n_; ++j)
      if (y[j] != 0)
        for (std::size_t i = 0; i < n_; ++i) x_orig_[i] += u_[j * n_ + i] * y[j];
  }

  std::size_t d_, n_;
  GramSchmidt g_;
  std::vector<long long> u_;
  std::vector<Real> center_;
  std::vector<long long> x_, x_orig_;
  Real budget_ = 0;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
  const std::function<bool(std::span<const long long>)>* visit_ = nullptr;
};

// Factor c with ||v||_2 <= c ||v||_p in dimension d.
Real l2_inflation(const NormOrder& p, std::size_t d) {
  if (p.is_infinite()) return std::sqrt(static_cast<Real>(d));
  const Real pv = static_cast<Real>(p.value());
  if (pv <= 2) return 1;
  return std::pow(static_cast<Real>(d), 0.5L - 1.0L / pv);
}

Vector combine_small(const Basis& basis, std::span<const long long> x) {
  const RatMatrix& b = basis.matrix();
  Vector out(b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (x[j] != 0) out[i] += b(i, j) * x[j];
  return out;
}

bool inside(std::span<const Rat> diff, const BallQuery& q) {
  auto c = compare_norm(diff, q.radius);
  return q.boundary == Boundary::kClosed ? c <= 0 : c < 0;
}

// Floating rejection test: true only when ||B x - center||_p clearly exceeds
// the radius, with slack for the rounding in the evaluation.
class FloatPrefilter {
 public:
  FloatPrefilter(const Basis& basis, const BallQuery& q)
      : d_(basis.ambient_dim()), n_(basis.rank()), b_(d_ * n_), t_(d_), p_(q.order()) {
    for (std::size_t i = 0; i < d_; ++i) {
      t_[i] = static_cast<Real>(to_double(q.center[i]));
      for (std::size_t j = 0; j < n_; ++j) b_[i * n_ + j] = static_cast<Real>(to_double(basis.matrix()(i, j)));
    }
    r_ = static_cast<Real>(q.radius.to_double());
    pv_ = p_.is_infinite() ? 0 : static_cast<Real>(p_.value());
  }

  bool clearly_outside(std::span<const long long> x) const {
    Real acc = 0, scale = 0;
    for (std::size_t i = 0; i < d_; ++i) {
      Real v = -t_[i], mag = std::fabs(t_[i]);
      for (std::size_t j = 0; j < n_; ++j) {
        const Real term = b_[i * n_ + j] * static_cast<Real>(x[j]);
        v += term;
        mag += std::fabs(term);
      }
      scale = std::max(scale, mag);
      const Real a = std::fabs(v);
      acc = p_.is_infinite() ? std::max(acc, a) : acc + std::pow(a, pv_);
    }
    const Real norm = p_.is_infinite() ? acc : std::pow(acc, 1 / pv_);
    return norm > r_ * (1 + 1e-9L) + 1e-9L * (1 + scale) * static_cast<Real>(d_);
  }

 private:
  std::size_t d_, n_;
  std::vector<Real> b_, t_;
  NormOrder p_;
  Real r_ = 0, pv_ = 0;
};

// Calls visit(x, point) for every lattice point in the ball.
void for_each_in_ball(const Basis& basis, const BallQuery& query,
                      const std::function<bool(std::span<const long long>, const Vector&)>& visit) {
  if (query.center.size() != basis.ambient_dim()) throw std::invalid_argument("ball center has the wrong dimension");
  const Real r = static_cast<Real>(query.radius.to_double());
  const Real r2 = r * l2_inflation(query.order(), basis.ambient_dim());
  const FloatPrefilter prefilter(basis, query);
  CandidateWalker walker(basis);
  walker.walk(query.center, r2 * r2, [&](std::span<const long long> x) {
    if (query.exclude_zero && std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) return true;
    if (prefilter.clearly_outside(x)) return true;
    Vector point = combine_small(basis, x);
    if (!inside(subtract(point, query.center), query)) return true;
    return visit(x, point);
  });
}

LatticePoint make_point(std::span<const long long> x, Vector point) {
  IntVector c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i];
  return {std::move(c), std::move(point)};
}

}  // namespace

std::vector<LatticePoint> enumerate(const Basis& basis, const BallQuery& query) {
  std::vector<LatticePoint> out;
  for_each_in_ball(basis, query, [&](std::span<const long long> x, const Vector& point) {
    out.push_back(make_point(x, point));
    return true;
  });
  return out;
}

std::size_t count(const Basis& basis, const BallQuery& query) {
  std::size_t n = 0;
  for_each_in_ball(basis, query, [&](std::span<const long long>, const Vector&) {
    ++n;
    return true;
  });
  return n;
}

bool any_in_ball(const Basis& basis, const BallQuery& query) {
  bool found = false;
  for_each_in_ball(basis, query, [&](std::span<const long long>, const Vector&) {
    found = true;
    return false;
  });
  return found;
}

ShortestVector lambda1(const Basis& basis, NormOrder p) {
  std::size_t best_col = 0;
  Magnitude best = norm_p(basis.column(0), p);
  for (std::size_t j = 1; j < basis.rank(); ++j) {
    Magnitude m = norm_p(basis.column(j), p);
    if (m < best) best = m, best_col = j;
  }
  std::vector<long long> seed(basis.rank(), 0);
  seed[best_col] = 1;
  LatticePoint best_point = make_point(seed, basis.column(best_col));

  BallQuery q{best, Vector(basis.ambient_dim()), Boundary::kOpen, true};
  for_each_in_ball(basis, q, [&](std::span<const long long> x, const Vector& point) {
    Magnitude m = norm_p(point, p);
    if (m < best) best = m, best_point = make_point(x, point);
    return true;
  });
  return {best, best_point};
}

ClosestVector dist(const Basis& basis, std::span<const Rat> target, NormOrder p) {
  if (target.size() != basis.ambient_dim()) throw std::invalid_argument("dist: target has the wrong dimension");
  CandidateWalker walker(basis);
  std::vector<long long> x0 = walker.babai(target);
  Vector start = combine_small(basis, x0);
  Magnitude best = norm_p(subtract(start, target), p);
  LatticePoint best_point = make_point(x0, start);

  BallQuery q{best, Vector(target.begin(), target.end()), Boundary::kOpen, false};
  for_each_in_ball(basis, q, [&](std::span<const long long> x, const Vector& point) {
    Magnitude m = norm_p(subtract(point, target), p);
    if (m < best) best = m, best_point = make_point(x, point);
    return true;
  });
  return {best, best_point};
}

std::size_t count_binary_close(const Basis& basis, std::span<const Rat> target, const Magnitude& s) {
  const std::size_t n = basis.rank();
  if (n > 30) throw std::length_error("count_binary_close: rank too large for exhaustive enumeration");
  if (target.size() != basis.ambient_dim()) throw std::invalid_argument("count_binary_close: dimension mismatch");
  std::size_t hits = 0;
  std::vector<long long> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<long long>((mask >> i) & 1U);
    if (compare_norm(subtract(combine_small(basis, x), target), s) <= 0) ++hits;
  }
  return hits;
}

}  // namespace lpbdd
