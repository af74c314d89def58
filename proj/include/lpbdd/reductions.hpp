#pragma once

// Instance-level reductions GapCVP' -> (S,T)-BDD -> (0,1)-BDD -> BDD.
//
// GapCVP' (threshold 1): YES if some binary x has ||B x - t||_p <= 1, NO if
// dist_p(t, L(B)) > 1.
// (S,T)-BDD: YES if at most S nonzero lattice vectors are shorter than r and
// at least T binary combinations lie within alpha r of t; NO if
// dist_p(t, L(B)) > alpha r.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "lpbdd/lattice.hpp"
#include "lpbdd/norm.hpp"
#include "lpbdd/numerics.hpp"
#include "lpbdd/rng.hpp"
#include "lpbdd/sparsify.hpp"

namespace lpbdd {

/// A parameter choice that would void the reduction's guarantees
/// (alpha at or below the threshold, T < 10 S, ...).
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GapCvpInstance {
  NormOrder p;
  Basis basis;
  Vector target;
};

struct StBddMeta {
  std::optional<double> s_bound;
  bool s_exact = false;
  std::uint64_t t = 0;
  std::size_t n_prime = 0;
  double rank_ratio = 0;
};

struct StBddInstance {
  Basis basis;
  Magnitude radius;
  Vector target;
  Rat alpha;
  StBddMeta meta;

  const NormOrder& order() const { return radius.order(); }
  /// alpha * r.
  Magnitude close_radius() const { return radius.scaled(alpha); }
};

struct BddInstance {
  NormOrder p;
  Basis basis;
  Vector target;
  Rat alpha;
};

/// An instance of (0,1)-BDD: a lattice, short-vector radius r, and target.
struct BddCandidate {
  Basis basis;
  Magnitude radius;
  Vector target;
};

struct ReductionParams {
  NormOrder p;
  /// C = n / n'. Must exceed 1 for finite p and equal 1 for p = inf.
  double rank_ratio;
  Rat alpha;
  PrimePolicy policy = PrimePolicy::kSmallest;
  std::uint64_t seed = 0;
};

/// Fills in alpha automatically when it is not given: 1.01 times the upper
/// end of the alpha*_{p,C} bracket, rounded up to six decimals, or 1/2 for
/// p = inf. Throws ConstraintViolation for parameters outside the theorem.
ReductionParams make_params(NormOrder p, double rank_ratio, std::optional<Rat> alpha,
                            PrimePolicy policy = PrimePolicy::kSmallest, std::uint64_t seed = 0);

/// Checks alpha > alpha*_{p,C} (via the numeric bracket) or (inf, 1, 1/2).
void validate_params(const ReductionParams& params);

/// s_p(n) = (1/2)(n+1)^{1/p}, and 1/2 for p = inf.
Magnitude s_p(std::size_t n, NormOrder p);

/// n = ceil(C n').
std::size_t output_rank(double rank_ratio, std::size_t n_prime);

/// B = [[B'/2, 0], [I_{n'}, 0], [0, I_{n-n'}]], t = (t', 1, 1) / 2, r = s_p(n) / alpha.
StBddInstance direct_sum_transform(const GapCvpInstance& inst, std::size_t n, const Rat& alpha);

struct SBound {
  double value;
  bool exact;
};

/// Ranks up to this size use the exact open count; larger ones the
/// Mazo-Odlyzko bound.
inline constexpr std::size_t kExactShortCountMaxRank = 10;

/// N°_p(Z^n \ {0}, radius, 0), exactly at desk scale, otherwise bounded above.
SBound compute_s_bound(NormOrder p, std::size_t n, const Magnitude& radius);

struct SparsifyOutcome {
  BddCandidate candidate;
  SparsifierDraw draw;
};

/// q = choose_prime(T), then sparsify the lattice and shift the target.
/// Throws ConstraintViolation when the recorded S bound violates T >= 10 S.
SparsifyOutcome sparsify_step(const StBddInstance& inst, PrimePolicy policy, Rng& rng);

struct PaddedInstance {
  BddInstance bdd;
  /// The rational used for the padding axis: r itself when r is rational,
  /// otherwise the least k / 2^40 above it.
  Rat pad;
};

/// B'' = [[B, 0], [0, r]], t'' = (t, 0).
PaddedInstance pad_step(const Basis& basis, const Magnitude& r, std::span<const Rat> target, const Rat& alpha);

/// Appends a zero row to B and the coordinate (r*^p - r^p)^{1/p} to t, so the
/// GapCVP threshold r becomes r*. Throws std::domain_error when that
/// coordinate is irrational.
std::pair<Basis, Vector> normalize_threshold(const Basis& basis, std::span<const Rat> target, const Magnitude& r,
                                             const Magnitude& r_star);

struct PipelineTrace {
  ReductionParams params;
  StBddInstance stbdd;
  SBound s_bound;
  /// Absent for p = inf, where no sparsification happens.
  std::optional<SparsifyOutcome> sparsified;
  Rat pad;
  /// alpha * r: an answer is accepted only this close to the (0,1)-BDD target.
  Magnitude solution_radius;
};

struct PipelineResult {
  BddInstance bdd;
  PipelineTrace trace;

  /// The (0,1)-BDD instance that was padded.
  const Basis& unpadded_basis() const;
  const Vector& unpadded_target() const;
};

/// Direct sum, then (finite p) sparsification, then padding.
PipelineResult full_pipeline(const GapCvpInstance& inst, const ReductionParams& params, Rng& rng);

/// Exact check that a BDD answer lies in the padded lattice and that its
/// unpadded part is within alpha r of the (0,1)-BDD target.
bool verify_bdd_answer(const PipelineResult& result, std::span<const Rat> answer);

using BddSolver = std::function<std::optional<Vector>(const BddInstance&)>;

enum class Verdict { kYes, kNoOrUnlucky };

struct DecideOutcome {
  Verdict verdict;
  std::size_t trials_run;
};

/// Up to `trials` independent pipeline runs (stream k = rng.split(k)); YES on
/// the first verified answer. Never answers YES on a NO instance.
DecideOutcome decide_cvp(const GapCvpInstance& inst, const ReductionParams& params, const BddSolver& solver,
                         std::size_t trials, const Rng& rng);

}  // namespace lpbdd
