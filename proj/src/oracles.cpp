#include "lpbdd/oracles.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

namespace lpbdd {

namespace {

bool sparsify_trial(const StBddInstance& inst, const Rng& rng, std::uint64_t k, PrimePolicy policy) {
  Rng stream = rng.split(k);
  SparsifyOutcome out = sparsify_step(inst, policy, stream);
  return is_zero_one_bdd_yes(out.candidate, inst.alpha);
}

MonteCarloResult summarize(std::uint64_t successes, std::uint64_t trials) {
  return {successes, trials, static_cast<double>(successes) / static_cast<double>(trials),
          wilson_interval(successes, trials)};
}

struct SweepPoint {
  NormOrder p;
  unsigned n;
  Rat r;
};

std::vector<SweepPoint> sweep_grid(std::span<const NormOrder> ps, unsigned n_max, const Rat& r_max,
                                   const Rat& r_step) {
  if (r_step <= 0) throw std::invalid_argument("r_step must be positive");
  std::vector<SweepPoint> grid;
  for (const auto& p : ps) {
    if (p.is_infinite()) throw std::invalid_argument("the sweep needs finite p");
    for (unsigned n = 1; n <= n_max; ++n)
      for (Rat r = r_step; r <= r_max; r += r_step) grid.push_back({p, n, r});
  }
  return grid;
}

MoSweepCase evaluate(const SweepPoint& pt) {
  BallQuery q{Magnitude::from_value(pt.p, pt.r), Vector(pt.n, Rat(0)), Boundary::kClosed, false};
  const std::uint64_t c = count(Basis::identity(pt.n), q);
  return {pt.p, pt.n, pt.r, c, mo_bound(pt.p.value(), to_double(pt.r), pt.n)};
}

bool violates(const MoSweepCase& c) { return static_cast<double>(c.count) > c.bound * (1 + 1e-9); }

MoSweepReport fold(const std::vector<MoSweepCase>& cases) {
  MoSweepReport report{cases.size(), 0, std::nullopt};
  for (const auto& c : cases) {
    if (violates(c)) throw MoBoundViolation(c);
    const double ratio = static_cast<double>(c.count) / c.bound;
    if (!report.tightest || ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.tightest = c;
    }
  }
  return report;
}

std::string describe(const MoSweepCase& c) {
  std::ostringstream msg;
  msg << "Mazo-Odlyzko bound violated at p = " << c.p.to_string() << ", n = " << c.n
      << ", r = " << format_rational(c.r) << ": count " << c.count << " > bound " << c.bound;
  return msg.str();
}

}  // namespace

ClosestVector brute_cvp(const Basis& basis, std::span<const Rat> target, NormOrder p) {
  return dist(basis, target, std::move(p));
}

bool check_stbdd_yes(const StBddInstance& inst, double s, std::uint64_t t) {
  const std::size_t n = inst.basis.rank();
  BallQuery shortq{inst.radius, Vector(inst.basis.ambient_dim(), Rat(0)), Boundary::kOpen, true};
  if (static_cast<double>(count(inst.basis, shortq)) > s) return false;
  if (n > 30) throw std::length_error("check_stbdd_yes: rank too large for the binary count");
  return count_binary_close(inst.basis, inst.target, inst.close_radius()) >= t;
}

bool check_bdd_promise(const BddInstance& inst) {
  ClosestVector cv = dist(inst.basis, inst.target, inst.p);
  ShortestVector sv = lambda1(inst.basis, inst.p);
  return cv.distance <= sv.length.scaled(inst.alpha);
}

bool is_zero_one_bdd_yes(const BddCandidate& candidate, const Rat& alpha) {
  const Basis& b = candidate.basis;
  BallQuery shortq{candidate.radius, Vector(b.ambient_dim(), Rat(0)), Boundary::kOpen, true};
  if (any_in_ball(b, shortq)) return false;
  BallQuery closeq{candidate.radius.scaled(alpha), candidate.target, Boundary::kClosed, false};
  return any_in_ball(b, closeq);
}

std::optional<Vector> brute_bdd_solver(const BddInstance& inst) {
  return dist(inst.basis, inst.target, inst.p).vector.point;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  if (successes > trials) throw std::invalid_argument("wilson_interval: more successes than trials");
  if (!(confidence > 0 && confidence < 1)) throw std::invalid_argument("wilson_interval: confidence outside (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2);
  const double n = static_cast<double>(trials), ph = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double center = (ph + z * z / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MonteCarloResult monte_carlo_success(const StBddInstance& inst, std::uint64_t trials, const Rng& rng,
                                     PrimePolicy policy) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_success: trials must be positive");
  std::uint64_t successes = 0;
  std::exception_ptr failure;
  const auto total = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : successes)
  for (std::int64_t k = 0; k < total; ++k) {
    try {
      if (sparsify_trial(inst, rng, static_cast<std::uint64_t>(k), policy)) ++successes;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(successes, trials);
}

MonteCarloResult monte_carlo_success_serial(const StBddInstance& inst, std::uint64_t trials, const Rng& rng,
                                            PrimePolicy policy) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_success: trials must be positive");
  std::uint64_t successes = 0;
  for (std::uint64_t k = 0; k < trials; ++k)
    if (sparsify_trial(inst, rng, k, policy)) ++successes;
  return summarize(successes, trials);
}

MoBoundViolation::MoBoundViolation(const MoSweepCase& c) : std::runtime_error(describe(c)), counterexample(c) {}

MoSweepReport verify_mo_bound_sweep(std::span<const NormOrder> ps, unsigned n_max, const Rat& r_max,
                                    const Rat& r_step) {
  const std::vector<SweepPoint> grid = sweep_grid(ps, n_max, r_max, r_step);
  std::vector<std::optional<MoSweepCase>> cases(grid.size());
  std::exception_ptr failure;
  const auto total = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      cases[static_cast<std::size_t>(i)] = evaluate(grid[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<MoSweepCase> flat;
  flat.reserve(cases.size());
  for (auto& c : cases) flat.push_back(std::move(*c));
  return fold(flat);
}

MoSweepReport verify_mo_bound_sweep_serial(std::span<const NormOrder> ps, unsigned n_max, const Rat& r_max,
                                           const Rat& r_step) {
  std::vector<MoSweepCase> flat;
  for (const auto& pt : sweep_grid(ps, n_max, r_max, r_step)) flat.push_back(evaluate(pt));
  return fold(flat);
}

}  // namespace lpbdd
