#pragma once

// Theta series, Mazo-Odlyzko point-count bounds, and the BDD relative
// distance thresholds alpha*_{p,C} with their closed-form upper bounds.
//
// Norm orders are plain doubles here because thresholds are studied as
// continuous functions of p; +infinity is rejected wherever a theta series
// is involved.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpbdd {

/// The rank ratio C of a reduction: a finite C > 1, or infinity.
class RankRatio {
 public:
  static RankRatio infinite() { return RankRatio(); }
  explicit RankRatio(double c);
  /// Accepts "inf" or a decimal.
  static RankRatio parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : c_; }
  /// 2^{1-1/C}, or 2 for C = infinity.
  double threshold() const;
  std::string to_string() const;

 private:
  RankRatio() = default;
  bool infinite_ = true;
  double c_ = 0;
};

struct ThetaParams {
  double tau;
  double rel_tol = 1e-15;
};

struct AlphaResult {
  double value;
  double bracket_lo;
  double bracket_hi;
  double tol;
};

struct ScalarMinimum {
  double argmin;
  double value;
};

inline constexpr double kDefaultBisectionTol = 1e-6;
inline constexpr double kAlphaCeiling = 64.0;

/// sum_{z in Z} exp(-tau |z|^p), truncated once the next term drops below
/// rel_tol times the running sum.
double theta(double p, const ThetaParams& params);

/// 2 / (1 - exp(-tau)) - 1, the p = 1 theta series in closed form.
double theta1_closed(double tau);

/// Minimizes a unimodal function of tau > 0 given as its logarithm.
/// Brackets by doubling/halving from tau = 1, then golden-section search in
/// log tau. Returns the minimizer and exp of the minimum.
ScalarMinimum minimize_log_unimodal(const std::function<double(double)>& log_objective);

/// min_{tau > 0} exp(tau / (2 alpha)^p) * Theta_p(tau).
double mo_objective(double p, double alpha);
ScalarMinimum mo_objective_minimum(double p, double alpha);

/// min_{tau > 0} exp(tau r^p) * Theta_p(tau)^n, an upper bound on N_p(Z^n, r, 0).
double mo_bound(double p, double r, unsigned n);

/// Infimum alpha with mo_objective(p, alpha) <= threshold(C), by bisection.
AlphaResult alpha_star(double p, RankRatio c, double tol = kDefaultBisectionTol,
                       double alpha_ceiling = kAlphaCeiling);

/// The p at which alpha_star(p, C) equals target_alpha.
double crossover_p(double target_alpha, RankRatio c, double tol = kDefaultBisectionTol);

/// exp(tau / sigma) * (2 / (1 - exp(-tau)) - 1).
double closed_form_g(double sigma, double tau);

/// g(sigma, arcsinh(sigma)), the minimum of g over tau.
double closed_form_g_star(double sigma);

/// The sigma with g(sigma, arcsinh(sigma)) = threshold(C).
double sigma_star(RankRatio c, double tol = 1e-12);

/// (1/2) sigma_star(C)^{1/p}.
double alpha_upper_bound(double p, RankRatio c);

/// (1/2) (ln p / ln(threshold(C) (p-1)/(p+1)))^{1/p}, from fixing tau = ln p.
/// Throws std::domain_error where the logarithm in the denominator is <= 0.
double alt_upper_bound(double p, RankRatio c);

struct CurveRow {
  double p;
  RankRatio c;
  double alpha_star;
  double upper_bound;
  /// NaN where the alternate bound is undefined.
  double alt_upper_bound;
};

/// One row per (p, C) in p-major order. Rows are computed in parallel.
std::vector<CurveRow> alpha_curve(std::span<const double> ps, std::span<const RankRatio> cs,
                                  double tol = kDefaultBisectionTol);
/// Serial reference for alpha_curve.
std::vector<CurveRow> alpha_curve_serial(std::span<const double> ps, std::span<const RankRatio> cs,
                                         double tol = kDefaultBisectionTol);

}  // namespace lpbdd
