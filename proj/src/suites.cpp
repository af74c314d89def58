#include "lpbdd/suites.hpp"

#include <random>

namespace lpbdd {

namespace {

using nlohmann::json;

Basis random_basis(Rng& rng, std::size_t n_prime, std::size_t d, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  for (;;) {
    RatMatrix m(d, n_prime);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n_prime; ++j) m(i, j) = entry(rng);
    if (rank(m) == n_prime) return Basis(std::move(m));
  }
}

Vector random_offset(Rng& rng, const NormOrder& p, std::size_t d) {
  std::uniform_int_distribution<int> quarter(-4, 4);
  const Magnitude one = Magnitude::from_value(p, Rat(1));
  for (;;) {
    Vector e(d);
    for (auto& x : e) x = Rat(quarter(rng), 4);
    if (compare_norm(e, one) <= 0) return e;
  }
}

CheckResult check(std::string name, bool passed, json detail) { return {std::move(name), passed, std::move(detail)}; }

}  // namespace

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json SuiteReport::to_json() const {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"suite", suite}, {"passed", passed()}, {"checks", arr}};
}

GapStatus gap_status(const GapCvpInstance& inst) {
  const Magnitude one = Magnitude::from_value(inst.p, Rat(1));
  if (count_binary_close(inst.basis, inst.target, one) > 0) return GapStatus::kYes;
  if (dist(inst.basis, inst.target, inst.p).distance > one) return GapStatus::kNo;
  return GapStatus::kNeither;
}

GapCvpInstance random_gapcvp(Rng& rng, NormOrder p, std::size_t n_prime, int bound) {
  std::uniform_int_distribution<std::size_t> extra(0, 1);
  const std::size_t d = n_prime + extra(rng);
  Basis b = random_basis(rng, n_prime, d, bound);
  const int span = 4 * bound * static_cast<int>(n_prime);
  std::uniform_int_distribution<int> coord(-span, span);
  Vector t(d);
  for (auto& x : t) x = Rat(coord(rng), 4);
  return {std::move(p), std::move(b), std::move(t)};
}

GapCvpInstance random_gapcvp_no(Rng& rng, NormOrder p, std::size_t n_prime) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    GapCvpInstance inst = random_gapcvp(rng, p, n_prime, 4);
    if (gap_status(inst) == GapStatus::kNo) return inst;
  }
  throw std::runtime_error("random_gapcvp_no: no NO instance found");
}

GapCvpInstance random_gapcvp_yes(Rng& rng, NormOrder p, std::size_t n_prime) {
  GapCvpInstance inst = random_gapcvp(rng, p, n_prime, 3);
  std::bernoulli_distribution bit;
  IntVector x(n_prime);
  for (auto& xi : x) xi = bit(rng) ? 1 : 0;
  inst.target = add(inst.basis.combine(x), random_offset(rng, p, inst.basis.ambient_dim()));
  return inst;
}

StBddInstance floor_instance() {
  const NormOrder p = NormOrder::finite(2);
  GapCvpInstance inst{p, Basis(RatMatrix::from_rows({{Rat(2)}})), {Rat(1, 2)}};
  StBddInstance st = direct_sum_transform(inst, 4, Rat(112, 100));
  SBound s = compute_s_bound(p, 4, st.radius);
  st.meta.s_bound = s.value;
  st.meta.s_exact = s.exact;
  return st;
}

MoSuiteOptions default_mo_options() {
  MoSuiteOptions o;
  for (const char* p : {"1", "3/2", "2", "3", "5"}) o.ps.push_back(NormOrder::parse(p));
  return o;
}

SuiteReport run_mo_suite(const MoSuiteOptions& options) {
  SuiteReport report{"mo", {}};
  try {
    MoSweepReport r = verify_mo_bound_sweep(options.ps, options.n_max, options.r_max, options.r_step);
    json detail = {{"cases", r.cases}, {"max_ratio", r.max_ratio}};
    if (r.tightest)
      detail["tightest"] = {{"p", r.tightest->p.to_string()},
                            {"n", r.tightest->n},
                            {"r", format_rational(r.tightest->r)},
                            {"count", r.tightest->count},
                            {"bound", r.tightest->bound}};
    report.checks.push_back(check("mo_bound_sweep", true, detail));
  } catch (const MoBoundViolation& e) {
    report.checks.push_back(check("mo_bound_sweep", false, {{"error", e.what()}}));
  }
  return report;
}

SuiteReport run_sparsify_suite(std::uint64_t trials, std::uint64_t seed) {
  SuiteReport report{"sparsify", {}};
  const StBddInstance inst = floor_instance();
  const bool yes = check_stbdd_yes(inst, 0, inst.meta.t);
  report.checks.push_back(check("floor_instance_is_yes", yes, {{"S", 0}, {"T", inst.meta.t}}));
  Rng probe(seed);
  const std::uint64_t q = choose_prime(inst.meta.t, PrimePolicy::kSmallest, probe);
  MonteCarloResult mc = monte_carlo_success(inst, trials, Rng(seed));
  json detail = {{"trials", mc.trials},       {"successes", mc.successes}, {"rate", mc.rate},
                 {"wilson_lo", mc.wilson.lo}, {"wilson_hi", mc.wilson.hi}, {"q", q}};
  report.checks.push_back(check("success_floor", mc.wilson.lo >= 1.0 / 40, detail));
  const double tq = static_cast<double>(inst.meta.t) / static_cast<double>(q);
  const double lo = 1.0 / 20 - 1.0 / 400, hi = 1.0 / 10;
  report.checks.push_back(check("structural_estimate", mc.wilson.hi >= lo && mc.wilson.lo <= hi,
                                {{"T_over_q", tq}, {"range", {lo, hi}}}));
  return report;
}

SuiteReport run_pipeline_suite(std::uint64_t instances, std::uint64_t seed) {
  SuiteReport report{"pipeline", {}};
  const Rng root(seed);

  const ReductionParams finite = make_params(NormOrder::finite(2), 2.0, std::nullopt, PrimePolicy::kSmallest, seed);
  std::uint64_t false_positives = 0;
  bool ranks_ok = true;
  for (std::uint64_t i = 0; i < instances; ++i) {
    Rng rng = root.split(2 * i);
    GapCvpInstance inst = random_gapcvp_no(rng, finite.p, 1 + i % 2);
    PipelineResult result = full_pipeline(inst, finite, rng);
    ranks_ok = ranks_ok && result.bdd.basis.rank() == output_rank(2.0, inst.basis.rank()) + 1;
    if (auto v = brute_bdd_solver(result.bdd); v && verify_bdd_answer(result, *v)) ++false_positives;
  }
  report.checks.push_back(check("finite_p_no_false_positives", false_positives == 0,
                                {{"instances", instances},
                                 {"false_positives", false_positives},
                                 {"alpha", format_decimal_or_rational(finite.alpha)}}));
  report.checks.push_back(check("finite_p_rank", ranks_ok, {{"C", 2}}));

  const ReductionParams inf = make_params(NormOrder::infinity(), 1.0, std::nullopt);
  std::uint64_t solved = 0;
  for (std::uint64_t i = 0; i < instances; ++i) {
    Rng rng = root.split(2 * i + 1);
    GapCvpInstance inst = random_gapcvp_yes(rng, inf.p, 1 + i % 2);
    PipelineResult result = full_pipeline(inst, inf, rng);
    if (check_bdd_promise(result.bdd) && verify_bdd_answer(result, *brute_bdd_solver(result.bdd))) ++solved;
  }
  report.checks.push_back(
      check("inf_yes_within_half_lambda1", solved == instances, {{"instances", instances}, {"solved", solved}}));
  return report;
}

SuiteReport run_transform_suite(std::uint64_t instances, std::uint64_t seed) {
  SuiteReport report{"transform", {}};
  const Rng root(seed);
  const std::vector<NormOrder> ps = {NormOrder::finite(1), NormOrder::finite(2), NormOrder::finite(3),
                                     NormOrder::infinity()};
  const std::vector<Rat> radii = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(5, 2), Rat(3)};
  std::uint64_t item1 = 0, item2 = 0, item3 = 0, yes_seen = 0, no_seen = 0;
  for (std::uint64_t i = 0; i < instances; ++i) {
    Rng rng = root.split(i);
    const NormOrder& p = ps[i % ps.size()];
    std::uniform_int_distribution<std::size_t> rank_pick(1, 3);
    const std::size_t np = rank_pick(rng);
    std::uniform_int_distribution<std::size_t> extra(0, 6 - np > 3 ? 3 : 6 - np);
    const std::size_t n = np + extra(rng);
    GapCvpInstance inst = (i / ps.size()) % 2 == 0 ? random_gapcvp_yes(rng, p, np) : random_gapcvp_no(rng, p, np);
    const StBddInstance st = direct_sum_transform(inst, n, Rat(1));
    const Basis zn = Basis::identity(n);
    for (const Rat& r : radii) {
      const Magnitude rad = Magnitude::from_value(p, r);
      const std::size_t lhs = count(st.basis, {rad, Vector(st.basis.ambient_dim(), Rat(0)), Boundary::kOpen, true});
      const std::size_t rhs = count(zn, {rad, Vector(n, Rat(0)), Boundary::kOpen, true});
      if (lhs > rhs) ++item1;
    }
    const Magnitude s = s_p(n, p);
    switch (gap_status(inst)) {
      case GapStatus::kYes:
        ++yes_seen;
        if (count_binary_close(st.basis, st.target, s) < st.meta.t) ++item2;
        break;
      case GapStatus::kNo:
        ++no_seen;
        if (!(dist(st.basis, st.target, p).distance > s)) ++item3;
        break;
      case GapStatus::kNeither:
        break;
    }
  }
  report.checks.push_back(check("short_vectors_dominated_by_Zn", item1 == 0, {{"violations", item1}}));
  report.checks.push_back(
      check("yes_gives_T_close_binary", item2 == 0, {{"violations", item2}, {"yes_instances", yes_seen}}));
  report.checks.push_back(check("no_stays_far", item3 == 0, {{"violations", item3}, {"no_instances", no_seen}}));
  return report;
}

}  // namespace lpbdd
