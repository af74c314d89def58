#include "lpbdd/numerics.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace lpbdd {

namespace {

void require_theta_order(double p) {
  if (!std::isfinite(p)) throw std::invalid_argument("theta series needs a finite norm order p");
  if (!(p >= 1.0)) throw std::invalid_argument("norm order p must satisfy p >= 1");
}

// Terms beyond this index never matter for tau in the ranges the searches visit.
constexpr long kMaxThetaTerms = 200'000'000;

constexpr double kGolden = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

// Log-scale limits for the tau bracket search.
constexpr double kMinLogTau = -30.0;
constexpr double kMaxLogTau = 700.0;

}  // namespace

RankRatio::RankRatio(double c) : infinite_(std::isinf(c) && c > 0), c_(c) {
  if (!infinite_ && !(c > 1.0)) throw std::invalid_argument("rank ratio C must satisfy C > 1");
}

RankRatio RankRatio::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "INF") return infinite();
  std::size_t used = 0;
  double c = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad rank ratio '" + text + "'");
  return RankRatio(c);
}

double RankRatio::threshold() const { return infinite_ ? 2.0 : std::exp2(1.0 - 1.0 / c_); }

std::string RankRatio::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << c_;
  return os.str();
}

double theta(double p, const ThetaParams& params) {
  require_theta_order(p);
  if (!(params.tau > 0)) throw std::invalid_argument("theta: tau must be positive");
  if (!(params.rel_tol > 0 && params.rel_tol < 1)) throw std::invalid_argument("theta: rel_tol must lie in (0, 1)");
  double sum = 1.0;
  for (long z = 1;; ++z) {
    if (z > kMaxThetaTerms) throw std::runtime_error("theta: series did not converge (tau too small)");
    double term = std::exp(-params.tau * std::pow(static_cast<double>(z), p));
    if (term < params.rel_tol * sum) break;
    sum += 2.0 * term;
  }
  return sum;
}

double theta1_closed(double tau) {
  if (!(tau > 0)) throw std::invalid_argument("theta1_closed: tau must be positive");
  return 2.0 / (-std::expm1(-tau)) - 1.0;
}

ScalarMinimum minimize_log_unimodal(const std::function<double(double)>& log_objective) {
  auto h = [&](double u) { return log_objective(std::exp(u)); };

  // Bracket a < b < c with h(b) <= h(a), h(b) <= h(c), walking outward from tau = 1.
  double a = 0.0, b = std::log(2.0);
  double fa = h(a), fb = h(b);
  double step = std::log(2.0);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
    step = -step;
  }
  double c = b + step, fc = h(c);
  while (fc < fb) {
    if (c >= kMaxLogTau || c <= kMinLogTau) return {std::exp(c), std::exp(fc)};
    a = b, fa = fb;
    b = c, fb = fc;
    step *= 1.5;
    c = std::clamp(b + step, kMinLogTau, kMaxLogTau);
    fc = h(c);
  }
  if (a > c) std::swap(a, c);

  double x1 = c - kGolden * (c - a);
  double x2 = a + kGolden * (c - a);
  double f1 = h(x1), f2 = h(x2);
  while (c - a > 1e-11) {
    if (f1 < f2) {
      c = x2;
      x2 = x1, f2 = f1;
      x1 = c - kGolden * (c - a);
      f1 = h(x1);
    } else {
      a = x1;
      x1 = x2, f1 = f2;
      x2 = a + kGolden * (c - a);
      f2 = h(x2);
    }
  }
  double u = f1 < f2 ? x1 : x2;
  double f = std::min(f1, f2);
  if (fb < f) u = b, f = fb;
  return {std::exp(u), std::exp(f)};
}

ScalarMinimum mo_objective_minimum(double p, double alpha) {
  require_theta_order(p);
  if (!(alpha > 0)) throw std::invalid_argument("mo_objective: alpha must be positive");
  const double slope = std::exp(-p * std::log(2.0 * alpha));
  const bool closed = p == 1.0;
  return minimize_log_unimodal([&](double tau) {
    double th = closed ? theta1_closed(tau) : theta(p, {tau});
    return tau * slope + std::log(th);
  });
}

double mo_objective(double p, double alpha) { return mo_objective_minimum(p, alpha).value; }

double mo_bound(double p, double r, unsigned n) {
  require_theta_order(p);
  if (!(r > 0)) throw std::invalid_argument("mo_bound: r must be positive");
  if (n == 0) throw std::invalid_argument("mo_bound: n must be positive");
  const double rp = std::pow(r, p);
  const bool closed = p == 1.0;
  return minimize_log_unimodal([&](double tau) {
           double th = closed ? theta1_closed(tau) : theta(p, {tau});
           return tau * rp + n * std::log(th);
         })
      .value;
}

AlphaResult alpha_star(double p, RankRatio c, double tol, double alpha_ceiling) {
  require_theta_order(p);
  if (!(tol > 0)) throw std::invalid_argument("alpha_star: tol must be positive");
  const double threshold = c.threshold();
  auto above = [&](double alpha) { return mo_objective(p, alpha) > threshold; };

  double hi = 1.0;
  while (above(hi)) {
    hi *= 2.0;
    if (hi > alpha_ceiling)
      throw std::range_error("alpha_star: no alpha below the ceiling meets the threshold (p=" + std::to_string(p) +
                             ", C=" + c.to_string() + ")");
  }
  double lo = hi / 2.0;
  while (!above(lo)) {
    hi = lo;
    lo /= 2.0;
    if (lo < 1e-9) throw std::range_error("alpha_star: threshold met for every alpha tried");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), lo, hi, tol};
}

double crossover_p(double target_alpha, RankRatio c, double tol) {
  if (!(target_alpha > 0.5)) throw std::invalid_argument("crossover_p: target alpha must exceed 1/2");
  if (!(tol > 0)) throw std::invalid_argument("crossover_p: tol must be positive");
  const double inner_tol = std::min(1e-10, tol * 1e-4);
  auto alpha_at = [&](double p) { return alpha_star(p, c, inner_tol).value; };

  double lo = 1.0;
  if (alpha_at(lo) <= target_alpha)
    throw std::range_error("crossover_p: alpha* is already below the target at p = 1");
  double hi = 2.0;
  while (alpha_at(hi) > target_alpha) {
    lo = hi;
    hi *= 2.0;
    if (hi > 4096.0) throw std::range_error("crossover_p: no crossing for p <= 4096");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (alpha_at(mid) > target_alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double closed_form_g(double sigma, double tau) {
  if (!(sigma > 0) || !(tau > 0)) throw std::invalid_argument("closed_form_g: sigma and tau must be positive");
  return std::exp(tau / sigma) * theta1_closed(tau);
}

double closed_form_g_star(double sigma) { return closed_form_g(sigma, std::asinh(sigma)); }

double sigma_star(RankRatio c, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("sigma_star: tol must be positive");
  const double threshold = c.threshold();
  double hi = 1.0;
  while (closed_form_g_star(hi) > threshold) {
    hi *= 2.0;
    if (hi > 1e15) throw std::range_error("sigma_star: threshold too close to 1");
  }
  double lo = hi / 2.0;
  while (closed_form_g_star(lo) <= threshold) {
    hi = lo;
    lo /= 2.0;
  }
  while (hi - lo > tol * hi) {
    double mid = 0.5 * (lo + hi);
    (closed_form_g_star(mid) > threshold ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double alpha_upper_bound(double p, RankRatio c) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("alpha_upper_bound: need finite p >= 1");
  return 0.5 * std::pow(sigma_star(c), 1.0 / p);
}

double alt_upper_bound(double p, RankRatio c) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::domain_error("alt_upper_bound: need finite p > 1");
  const double arg = c.threshold() * (p - 1.0) / (p + 1.0);
  if (!(arg > 1.0)) throw std::domain_error("alt_upper_bound: threshold * (p-1)/(p+1) must exceed 1");
  return 0.5 * std::pow(std::log(p) / std::log(arg), 1.0 / p);
}

namespace {

CurveRow curve_row(double p, RankRatio c, double tol) {
  CurveRow row{p, c, alpha_star(p, c, tol).value, alpha_upper_bound(p, c),
               std::numeric_limits<double>::quiet_NaN()};
  try {
    row.alt_upper_bound = alt_upper_bound(p, c);
  } catch (const std::domain_error&) {
  }
  return row;
}

}  // namespace

std::vector<CurveRow> alpha_curve_serial(std::span<const double> ps, std::span<const RankRatio> cs, double tol) {
  std::vector<CurveRow> rows;
  rows.reserve(ps.size() * cs.size());
  for (double p : ps)
    for (const auto& c : cs) rows.push_back(curve_row(p, c, tol));
  return rows;
}

std::vector<CurveRow> alpha_curve(std::span<const double> ps, std::span<const RankRatio> cs, double tol) {
  const long total = static_cast<long>(ps.size() * cs.size());
  std::vector<CurveRow> rows(static_cast<std::size_t>(total),
                             CurveRow{0, RankRatio::infinite(), 0, 0, 0});
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < total; ++k) {
    try {
      const auto i = static_cast<std::size_t>(k) / cs.size();
      const auto j = static_cast<std::size_t>(k) % cs.size();
      rows[static_cast<std::size_t>(k)] = curve_row(ps[i], cs[j], tol);
    } catch (...) {
#pragma omp critical(lpbdd_curve_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace lpbdd
