#include "lpbdd/reductions.hpp"

#include <cmath>
#include <sstream>

namespace lpbdd {

namespace {

Vector zero_vector(std::size_t n) { return Vector(n, Rat(0)); }

struct Prepared {
  StBddInstance stbdd;
  SBound s_bound;
};

Prepared prepare(const GapCvpInstance& inst, const ReductionParams& params) {
  validate_params(params);
  if (!(inst.p == params.p)) throw std::invalid_argument("instance and parameters use different norms");
  const std::size_t n_prime = inst.basis.rank();
  const std::size_t n = params.p.is_infinite() ? n_prime : output_rank(params.rank_ratio, n_prime);
  StBddInstance st = direct_sum_transform(inst, n, params.alpha);
  st.meta.rank_ratio = params.rank_ratio;
  SBound s = compute_s_bound(params.p, n, st.radius);
  st.meta.s_bound = s.value;
  st.meta.s_exact = s.exact;
  return {std::move(st), s};
}

PipelineResult finish(const Prepared& prep, const ReductionParams& params, Rng& rng) {
  std::optional<SparsifyOutcome> sparsified;
  const Basis* basis = &prep.stbdd.basis;
  const Vector* target = &prep.stbdd.target;
  if (!params.p.is_infinite()) {
    sparsified = sparsify_step(prep.stbdd, params.policy, rng);
    basis = &sparsified->candidate.basis;
    target = &sparsified->candidate.target;
  }
  PaddedInstance padded = pad_step(*basis, prep.stbdd.radius, *target, params.alpha);
  PipelineTrace trace{params, prep.stbdd, prep.s_bound, std::move(sparsified), padded.pad,
                      prep.stbdd.close_radius()};
  return {std::move(padded.bdd), std::move(trace)};
}

}  // namespace

ReductionParams make_params(NormOrder p, double rank_ratio, std::optional<Rat> alpha, PrimePolicy policy,
                            std::uint64_t seed) {
  ReductionParams params{p, rank_ratio, Rat(0), policy, seed};
  if (alpha) {
    params.alpha = *alpha;
  } else if (p.is_infinite()) {
    params.alpha = Rat(1, 2);
  } else {
    if (!(rank_ratio > 1)) throw ConstraintViolation("finite p needs a rank ratio C > 1");
    AlphaResult a = alpha_star(p.value(), RankRatio(rank_ratio));
    params.alpha = ceil_to_decimal(a.bracket_hi * 1.01, 6);
  }
  validate_params(params);
  return params;
}

void validate_params(const ReductionParams& params) {
  if (params.p.is_infinite()) {
    if (params.rank_ratio != 1 || params.alpha != Rat(1, 2))
      throw ConstraintViolation("p = inf requires C = 1 and alpha = 1/2");
    return;
  }
  if (!std::isfinite(params.rank_ratio) || !(params.rank_ratio > 1))
    throw ConstraintViolation("finite p needs a finite rank ratio C > 1");
  AlphaResult a = alpha_star(params.p.value(), RankRatio(params.rank_ratio));
  if (!(to_double(params.alpha) > a.bracket_hi)) {
    std::ostringstream msg;
    msg << "alpha = " << format_decimal_or_rational(params.alpha) << " does not exceed alpha*_{p,C} ~ "
        << a.bracket_hi;
    throw ConstraintViolation(msg.str());
  }
}

Magnitude s_p(std::size_t n, NormOrder p) {
  if (n < 1) throw std::invalid_argument("s_p: n must be positive");
  if (p.is_infinite()) return Magnitude::from_value(p, Rat(1, 2));
  return Magnitude::from_terms(p, {{Rat(n + 1), Rat(1, 2)}});
}

std::size_t output_rank(double rank_ratio, std::size_t n_prime) {
  return static_cast<std::size_t>(std::ceil(rank_ratio * static_cast<double>(n_prime) - 1e-9));
}

StBddInstance direct_sum_transform(const GapCvpInstance& inst, std::size_t n, const Rat& alpha) {
  const std::size_t d = inst.basis.ambient_dim(), np = inst.basis.rank();
  if (inst.target.size() != d) throw std::invalid_argument("direct_sum_transform: target length mismatch");
  if (n < np) throw std::invalid_argument("direct_sum_transform: n must be at least n'");
  if (alpha <= 0) throw std::invalid_argument("direct_sum_transform: alpha must be positive");
  if (n - np > 63) throw std::out_of_range("direct_sum_transform: T = 2^{n-n'} overflows");
  const Rat half(1, 2);
  RatMatrix b(d + n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < np; ++j) b(i, j) = inst.basis.matrix()(i, j) * half;
  for (std::size_t j = 0; j < n; ++j) b(d + j, j) = 1;
  Vector t(d + n, half);
  for (std::size_t i = 0; i < d; ++i) t[i] = inst.target[i] * half;
  StBddMeta meta;
  meta.t = std::uint64_t{1} << (n - np);
  meta.n_prime = np;
  meta.rank_ratio = static_cast<double>(n) / static_cast<double>(np);
  return {Basis(std::move(b)), s_p(n, inst.p).scaled(1 / alpha), std::move(t), alpha, meta};
}

SBound compute_s_bound(NormOrder p, std::size_t n, const Magnitude& radius) {
  if (p.is_infinite()) {
    Rat r = *radius.exact_value();
    if (r <= 0) return {0, true};
    Int k = numerator(r) / denominator(r);
    if (k * denominator(r) != numerator(r)) k += 1;  // ceil
    const double side = 2 * k.convert_to<double>() - 1;
    return {std::pow(side, static_cast<double>(n)) - 1, true};
  }
  if (n <= kExactShortCountMaxRank) {
    BallQuery q{radius, zero_vector(n), Boundary::kOpen, true};
    return {static_cast<double>(count(Basis::identity(n), q)), true};
  }
  const double bound = mo_bound(p.value(), radius.to_double() * (1 + 1e-12), static_cast<unsigned>(n));
  return {std::max(0.0, std::floor(bound) - 1), false};
}

SparsifyOutcome sparsify_step(const StBddInstance& inst, PrimePolicy policy, Rng& rng) {
  if (inst.meta.s_bound && 10 * *inst.meta.s_bound > static_cast<double>(inst.meta.t)) {
    std::ostringstream msg;
    msg << "T = " << inst.meta.t << " is below 10 S with S " << (inst.meta.s_exact ? "= " : "<= ")
        << *inst.meta.s_bound;
    throw ConstraintViolation(msg.str());
  }
  const std::uint64_t q = choose_prime(inst.meta.t, policy, rng);
  SparsifierDraw draw = sample_draw(q, inst.basis.rank(), rng);
  Basis b = sparsify_basis(inst.basis, draw);
  Vector t = shift_target(inst.target, inst.basis, draw);
  return {{std::move(b), inst.radius, std::move(t)}, std::move(draw)};
}

PaddedInstance pad_step(const Basis& basis, const Magnitude& r, std::span<const Rat> target, const Rat& alpha) {
  const std::size_t d = basis.ambient_dim(), n = basis.rank();
  if (target.size() != d) throw std::invalid_argument("pad_step: target length mismatch");
  Rat pad = r.exact_value().value_or(r.rational_upper_bound());
  RatMatrix b(d + 1, n + 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = basis.matrix()(i, j);
  b(d, n) = pad;
  Vector t(target.begin(), target.end());
  t.push_back(Rat(0));
  return {{r.order(), Basis(std::move(b)), std::move(t), alpha}, pad};
}

std::pair<Basis, Vector> normalize_threshold(const Basis& basis, std::span<const Rat> target, const Magnitude& r,
                                             const Magnitude& r_star) {
  const NormOrder& p = r.order();
  if (p.is_infinite() || !(r_star.order() == p))
    throw std::invalid_argument("normalize_threshold: needs two magnitudes of the same finite order");
  if (r > r_star) throw std::invalid_argument("normalize_threshold: r exceeds r_star");
  if (target.size() != basis.ambient_dim()) throw std::invalid_argument("normalize_threshold: target length mismatch");
  auto rp = r.exact_pth_power(), sp = r_star.exact_pth_power();
  if (!rp || !sp) throw std::domain_error("normalize_threshold: threshold powers are irrational");
  auto coord = Magnitude::from_pth_power(p, *sp - *rp).exact_value();
  if (!coord) throw std::domain_error("normalize_threshold: appended coordinate is irrational");
  const std::size_t d = basis.ambient_dim(), n = basis.rank();
  RatMatrix b(d + 1, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = basis.matrix()(i, j);
  Vector t(target.begin(), target.end());
  t.push_back(*coord);
  return {Basis(std::move(b)), std::move(t)};
}

const Basis& PipelineResult::unpadded_basis() const {
  return trace.sparsified ? trace.sparsified->candidate.basis : trace.stbdd.basis;
}

const Vector& PipelineResult::unpadded_target() const {
  return trace.sparsified ? trace.sparsified->candidate.target : trace.stbdd.target;
}

PipelineResult full_pipeline(const GapCvpInstance& inst, const ReductionParams& params, Rng& rng) {
  return finish(prepare(inst, params), params, rng);
}

bool verify_bdd_answer(const PipelineResult& result, std::span<const Rat> answer) {
  const Basis& b = result.bdd.basis;
  if (answer.size() != b.ambient_dim()) return false;
  if (!lattice_coeffs(b, answer)) return false;
  const Vector& t = result.unpadded_target();
  std::span<const Rat> v = answer.first(t.size());
  return compare_norm(subtract(v, t), result.trace.solution_radius) <= 0;
}

DecideOutcome decide_cvp(const GapCvpInstance& inst, const ReductionParams& params, const BddSolver& solver,
                         std::size_t trials, const Rng& rng) {
  if (trials == 0) throw std::invalid_argument("decide_cvp: trials must be positive");
  const Prepared prep = prepare(inst, params);
  const std::size_t runs = params.p.is_infinite() ? 1 : trials;
  for (std::size_t k = 0; k < runs; ++k) {
    Rng trial = rng.split(k);
    PipelineResult result = finish(prep, params, trial);
    std::optional<Vector> answer = solver(result.bdd);
    if (answer && verify_bdd_answer(result, *answer)) return {Verdict::kYes, k + 1};
  }
  return {Verdict::kNoOrUnlucky, runs};
}

}  // namespace lpbdd
