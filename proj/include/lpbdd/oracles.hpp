#pragma once

// Brute-force ground truth for the reductions: exact CVP and promise checks
// recomputed from emitted instances, plus Monte-Carlo and sweep harnesses.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lpbdd/lattice.hpp"
#include "lpbdd/reductions.hpp"
#include "lpbdd/rng.hpp"

namespace lpbdd {

/// Closest lattice vector and the exact distance to it.
ClosestVector brute_cvp(const Basis& basis, std::span<const Rat> target, NormOrder p);

/// N°_p(L \ {0}, r, 0) <= S and N_p(B {0,1}^n, alpha r, t) >= T.
bool check_stbdd_yes(const StBddInstance& inst, double s, std::uint64_t t);

/// dist_p(t, L) <= alpha * lambda_1^{(p)}(L).
bool check_bdd_promise(const BddInstance& inst);

/// lambda_1(L) >= r and dist_p(t, L) <= alpha r.
bool is_zero_one_bdd_yes(const BddCandidate& candidate, const Rat& alpha);

/// Honest solver: the exact closest vector.
std::optional<Vector> brute_bdd_solver(const BddInstance& inst);

struct Interval {
  double lo;
  double hi;
};

/// Wilson score interval for a binomial proportion at the given confidence.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

struct MonteCarloResult {
  std::uint64_t successes;
  std::uint64_t trials;
  double rate;
  Interval wilson;
};

/// Trial k runs sparsify_step on rng.split(k) and succeeds when the output is
/// a (0,1)-BDD YES instance. Trials run in parallel.
MonteCarloResult monte_carlo_success(const StBddInstance& inst, std::uint64_t trials, const Rng& rng,
                                     PrimePolicy policy = PrimePolicy::kSmallest);
/// Serial reference for monte_carlo_success; returns identical results.
MonteCarloResult monte_carlo_success_serial(const StBddInstance& inst, std::uint64_t trials, const Rng& rng,
                                            PrimePolicy policy = PrimePolicy::kSmallest);

struct MoSweepCase {
  NormOrder p;
  unsigned n;
  Rat r;
  std::uint64_t count;
  double bound;
};

struct MoSweepReport {
  std::size_t cases;
  double max_ratio;
  std::optional<MoSweepCase> tightest;
};

class MoBoundViolation : public std::runtime_error {
 public:
  explicit MoBoundViolation(const MoSweepCase& c);
  MoSweepCase counterexample;
};

/// Checks N_p(Z^n, r, 0) <= mo_bound(p, r, n) for every p, 1 <= n <= n_max,
/// and r = k * r_step <= r_max. Throws MoBoundViolation on the first failure.
MoSweepReport verify_mo_bound_sweep(std::span<const NormOrder> ps, unsigned n_max, const Rat& r_max,
                                    const Rat& r_step);
MoSweepReport verify_mo_bound_sweep_serial(std::span<const NormOrder> ps, unsigned n_max, const Rat& r_max,
                                           const Rat& r_step);

}  // namespace lpbdd
