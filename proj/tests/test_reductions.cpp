#include <gtest/gtest.h>

#include "lpbdd/oracles.hpp"
#include "lpbdd/reductions.hpp"
#include "lpbdd/suites.hpp"

namespace lpbdd {
namespace {

NormOrder P(const char* s) { return NormOrder::parse(s); }

GapCvpInstance rank_one(const char* p, Rat b, Rat t) {
  return {P(p), Basis(RatMatrix::from_rows({{b}})), {t}};
}

TEST(DirectSum, Shape) {
  GapCvpInstance inst{P("2"), Basis(RatMatrix::from_rows({{Rat(1), Rat(0)}, {Rat(1), Rat(2)}, {Rat(0), Rat(1)}})),
                      {Rat(1), Rat(1), Rat(1)}};
  StBddInstance st = direct_sum_transform(inst, 5, Rat(2));
  EXPECT_EQ(st.basis.ambient_dim(), 3u + 5u);
  EXPECT_EQ(st.basis.rank(), 5u);
  EXPECT_EQ(st.meta.t, 8u);
  EXPECT_EQ(st.meta.n_prime, 2u);
  EXPECT_EQ(st.target, Vector(8, Rat(1, 2)));
  EXPECT_EQ(st.basis.matrix()(1, 1), Rat(1));
  EXPECT_EQ(st.basis.matrix()(3, 0), Rat(1));
  EXPECT_EQ(st.basis.matrix()(7, 4), Rat(1));
  EXPECT_EQ(st.radius, s_p(5, P("2")).scaled(Rat(1, 2)));
  EXPECT_THROW(direct_sum_transform(inst, 1, Rat(2)), std::invalid_argument);
}

TEST(DirectSum, InfinityYesExample) {
  StBddInstance st = direct_sum_transform(rank_one("inf", Rat(2), Rat(1)), 1, Rat(1, 2));
  EXPECT_EQ(dist(st.basis, st.target, P("inf")).distance.exact_value(), Rat(1, 2));
  EXPECT_GE(count_binary_close(st.basis, st.target, s_p(1, P("inf"))), 1u);
  EXPECT_TRUE(check_stbdd_yes(st, 0, 1));
}

TEST(DirectSum, InfinityNoExample) {
  GapCvpInstance inst = rank_one("inf", Rat(3), Rat(3, 2));
  EXPECT_EQ(gap_status(inst), GapStatus::kNo);
  StBddInstance st = direct_sum_transform(inst, 1, Rat(1, 2));
  EXPECT_GT(dist(st.basis, st.target, P("inf")).distance, s_p(1, P("inf")));
}

TEST(SBound, Examples) {
  SBound inf = compute_s_bound(P("inf"), 7, Magnitude::from_value(P("inf"), Rat(1)));
  EXPECT_EQ(inf.value, 0);
  EXPECT_TRUE(inf.exact);
  EXPECT_EQ(compute_s_bound(P("inf"), 2, Magnitude::from_value(P("inf"), Rat(3, 2))).value, 8);
  SBound two = compute_s_bound(P("2"), 2, Magnitude::from_value(P("2"), Rat(6, 5)));
  EXPECT_EQ(two.value, 4);
  EXPECT_TRUE(two.exact);
  SBound big = compute_s_bound(P("2"), 40, Magnitude::from_value(P("2"), Rat(1, 2)));
  EXPECT_FALSE(big.exact);
}

TEST(SBoundProperty, ExactCountBelowMoBound) {
  for (const char* ps : {"1", "3/2", "2", "3"})
    for (std::size_t n = 1; n <= 5; ++n)
      for (int k = 1; k <= 8; ++k) {
        const NormOrder p = P(ps);
        const Magnitude r = Magnitude::from_value(p, Rat(k, 4));
        EXPECT_LE(compute_s_bound(p, n, r).value + 1, mo_bound(p.value(), r.to_double(), n) * (1 + 1e-9));
      }
}

TEST(Params, AutoAlphaAndValidation) {
  ReductionParams p2 = make_params(P("2"), 2.0, std::nullopt);
  EXPECT_EQ(p2.alpha, Rat(1742721, 1000000));
  EXPECT_EQ(make_params(P("inf"), 1.0, std::nullopt).alpha, Rat(1, 2));
  EXPECT_THROW(make_params(P("2"), 2.0, Rat(17, 10)), ConstraintViolation);
  EXPECT_THROW(make_params(P("inf"), 2.0, std::nullopt), ConstraintViolation);
  EXPECT_THROW(make_params(P("inf"), 1.0, Rat(3, 4)), ConstraintViolation);
  EXPECT_THROW(make_params(P("2"), 1.0, std::nullopt), ConstraintViolation);
  EXPECT_EQ(output_rank(2.0, 3), 6u);
  EXPECT_EQ(output_rank(1.5, 3), 5u);
}

TEST(Pad, Lambda1IsMinOfInputAndR) {
  const NormOrder p = P("2");
  const Magnitude one = Magnitude::from_value(p, Rat(1));
  PaddedInstance a = pad_step(Basis::identity(3), one, Vector(3, Rat(1, 3)), Rat(1, 2));
  EXPECT_EQ(a.bdd.basis.rank(), 4u);
  EXPECT_EQ(lambda1(a.bdd.basis, p).length, one);
  Basis twice(RatMatrix::from_rows({{Rat(2), Rat(0)}, {Rat(0), Rat(2)}}));
  PaddedInstance b = pad_step(twice, one, Vector(2), Rat(1, 2));
  EXPECT_EQ(lambda1(b.bdd.basis, p).length, one);
  PaddedInstance c = pad_step(twice, Magnitude::from_value(p, Rat(3)), Vector(2), Rat(1, 2));
  EXPECT_EQ(lambda1(c.bdd.basis, p).length.exact_value(), Rat(2));
  EXPECT_EQ(c.bdd.target.back(), Rat(0));
}

TEST(Pad, IrrationalRadiusUsesUpperEnclosure) {
  const Magnitude r = s_p(4, P("2")).scaled(Rat(100, 112));
  PaddedInstance padded = pad_step(Basis::identity(4), r, Vector(4), Rat(1));
  EXPECT_GE(Magnitude::from_value(P("2"), padded.pad), r);
  EXPECT_EQ(padded.bdd.basis.matrix()(4, 4), padded.pad);
}

TEST(Pad, PromisePreservedAndSolutionStrips) {
  // (0,1)-BDD YES: Z^2, r = 1, target within alpha r = 1/2
  const NormOrder p = P("2");
  Vector t = {Rat(3, 10), Rat(2, 5)};
  PaddedInstance padded = pad_step(Basis::identity(2), Magnitude::from_value(p, Rat(1)), t, Rat(1, 2));
  EXPECT_TRUE(check_bdd_promise(padded.bdd));
  auto v = brute_bdd_solver(padded.bdd);
  ASSERT_TRUE(v);
  Vector stripped(v->begin(), v->begin() + 2);
  EXPECT_TRUE(compare_norm(subtract(stripped, t), Magnitude::from_value(p, Rat(1, 2))) <= 0);
}

TEST(Normalize, Examples) {
  const NormOrder p = P("2");
  auto [b, t] = normalize_threshold(Basis::identity(1), Vector{Rat(0)}, Magnitude::from_value(p, Rat(3)),
                                    Magnitude::from_value(p, Rat(5)));
  EXPECT_EQ(t.back(), Rat(4));
  EXPECT_EQ(b.ambient_dim(), 2u);
  EXPECT_EQ(b.matrix()(1, 0), Rat(0));
  auto same = normalize_threshold(Basis::identity(1), Vector{Rat(1, 3)}, Magnitude::from_value(p, Rat(2)),
                                  Magnitude::from_value(p, Rat(2)));
  EXPECT_EQ(same.second.back(), Rat(0));
  EXPECT_THROW(normalize_threshold(Basis::identity(1), Vector{Rat(0)}, Magnitude::from_value(p, Rat(5)),
                                   Magnitude::from_value(p, Rat(3))),
               std::invalid_argument);
  EXPECT_THROW(normalize_threshold(Basis::identity(1), Vector{Rat(0)}, Magnitude::from_value(p, Rat(1)),
                                   Magnitude::from_value(p, Rat(2))),
               std::domain_error);
}

TEST(Normalize, NoStaysNo) {
  // dist((5/2), 5Z) = 5/2 > r = 3/2 ; threshold 5/2 after the gadget
  const NormOrder p = P("2");
  const Magnitude r = Magnitude::from_value(p, Rat(3, 2)), rs = Magnitude::from_value(p, Rat(5, 2));
  Basis b(RatMatrix::from_rows({{Rat(5)}}));
  auto [b2, t2] = normalize_threshold(b, Vector{Rat(5, 2)}, r, rs);
  EXPECT_GT(dist(b2, t2, p).distance, rs);
}

TEST(Sparsify, RefusesWhenTBelowTenS) {
  StBddInstance st = direct_sum_transform(rank_one("2", Rat(2), Rat(1)), 4, Rat(1, 2));
  st.meta.s_bound = 1;
  Rng rng(1);
  EXPECT_THROW(sparsify_step(st, PrimePolicy::kSmallest, rng), ConstraintViolation);
}

TEST(SparsifyProperty, NoInstancesStayNoForEveryDraw) {
  Rng root(3);
  for (int i = 0; i < 15; ++i) {
    Rng rng = root.split(i);
    GapCvpInstance inst = random_gapcvp_no(rng, P("2"), 1 + i % 2);
    StBddInstance st = direct_sum_transform(inst, 2 * inst.basis.rank(), Rat(1742721, 1000000));
    const Magnitude d0 = dist(st.basis, st.target, P("2")).distance;
    EXPECT_GT(d0, st.close_radius());
    for (int k = 0; k < 5; ++k) {
      SparsifyOutcome out = sparsify_step(st, PrimePolicy::kRandom, rng);
      EXPECT_GE(dist(out.candidate.basis, out.candidate.target, P("2")).distance, d0);
    }
  }
}

TEST(Pipeline, InfinityIsDeterministic) {
  GapCvpInstance inst = rank_one("inf", Rat(2), Rat(1));
  ReductionParams params = make_params(P("inf"), 1.0, std::nullopt);
  Rng a(1), b(999);
  PipelineResult ra = full_pipeline(inst, params, a), rb = full_pipeline(inst, params, b);
  EXPECT_EQ(ra.bdd.basis, rb.bdd.basis);
  EXPECT_EQ(ra.bdd.target, rb.bdd.target);
  EXPECT_EQ(ra.bdd.basis.rank(), 2u);
  EXPECT_FALSE(ra.trace.sparsified);
  EXPECT_TRUE(check_bdd_promise(ra.bdd));
  EXPECT_TRUE(verify_bdd_answer(ra, *brute_bdd_solver(ra.bdd)));
}

TEST(Pipeline, RankGrowthAndSeedDeterminism) {
  GapCvpInstance inst{P("2"), Basis(RatMatrix::from_rows({{Rat(2), Rat(0)}, {Rat(0), Rat(3)}})), {Rat(1), Rat(1)}};
  ReductionParams params = make_params(P("2"), 2.0, std::nullopt);
  Rng a(5), b(5);
  PipelineResult ra = full_pipeline(inst, params, a), rb = full_pipeline(inst, params, b);
  EXPECT_EQ(ra.bdd.basis.rank(), 5u);
  EXPECT_EQ(ra.bdd.basis, rb.bdd.basis);
  EXPECT_EQ(ra.bdd.target, rb.bdd.target);
  ASSERT_TRUE(ra.trace.sparsified);
  EXPECT_EQ(ra.trace.sparsified->draw.q, 41u);
}

TEST(Decide, YesInstanceWithHonestSolver) {
  GapCvpInstance inst = rank_one("2", Rat(2), Rat(1, 2));
  ASSERT_EQ(gap_status(inst), GapStatus::kYes);
  ReductionParams params = make_params(P("2"), 2.0, std::nullopt);
  DecideOutcome out = decide_cvp(inst, params, brute_bdd_solver, 200, Rng(17));
  EXPECT_EQ(out.verdict, Verdict::kYes);
}

TEST(Decide, NoFalsePositivesEvenWithAdversarialSolvers) {
  ReductionParams params = make_params(P("2"), 2.0, std::nullopt);
  const BddSolver target_echo = [](const BddInstance& b) { return std::optional<Vector>(b.target); };
  const BddSolver zero = [](const BddInstance& b) { return std::optional<Vector>(Vector(b.target.size())); };
  Rng root(8);
  for (int i = 0; i < 10; ++i) {
    Rng rng = root.split(i);
    GapCvpInstance inst = random_gapcvp_no(rng, P("2"), 1 + i % 2);
    for (const BddSolver& s : {BddSolver(brute_bdd_solver), target_echo, zero})
      EXPECT_EQ(decide_cvp(inst, params, s, 5, rng).verdict, Verdict::kNoOrUnlucky);
  }
}

TEST(TransformLemma, SmallRandomSample) {
  SuiteReport r = run_transform_suite(24, 77);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail.dump();
}

}  // namespace
}  // namespace lpbdd
