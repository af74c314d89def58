#include <gtest/gtest.h>

#include "lpbdd/oracles.hpp"
#include "lpbdd/suites.hpp"

namespace lpbdd {
namespace {

NormOrder P(const char* s) { return NormOrder::parse(s); }

TEST(BruteCvp, Examples) {
  ClosestVector in = brute_cvp(Basis::identity(2), Vector{Rat(4), Rat(-2)}, P("2"));
  EXPECT_EQ(in.vector.point, (Vector{Rat(4), Rat(-2)}));
  EXPECT_EQ(in.distance.exact_value(), Rat(0));
  ClosestVector cv = brute_cvp(Basis::identity(2), Vector{Rat(2, 5), Rat(7, 10)}, P("2"));
  EXPECT_EQ(cv.vector.point, (Vector{Rat(0), Rat(1)}));
  EXPECT_EQ(cv.distance.exact_value(), Rat(1, 2));
}

TEST(StBddYes, Examples) {
  // Z^3, t = (1/2)1, alpha r = (1/2) 3^{1/2}, r <= 1
  const NormOrder p = P("2");
  StBddInstance st{Basis::identity(3), Magnitude::from_value(p, Rat(1)), Vector(3, Rat(1, 2)), Rat(1, 2), {}};
  st.alpha = Rat(1);
  st.radius = Magnitude::from_pth_power(p, Rat(3, 4));
  EXPECT_TRUE(check_stbdd_yes(st, 0, 8));
  EXPECT_FALSE(check_stbdd_yes(st, 0, 9));
  st.target = Vector(3, Rat(7));
  EXPECT_FALSE(check_stbdd_yes(st, 0, 8));
  EXPECT_TRUE(check_stbdd_yes(floor_instance(), 0, 8));
}

TEST(BddPromise, Examples) {
  const NormOrder p = P("2");
  EXPECT_TRUE(check_bdd_promise({p, Basis::identity(2), Vector{Rat(1), Rat(2)}, Rat(1, 100)}));
  EXPECT_FALSE(check_bdd_promise({p, Basis(RatMatrix::from_rows({{Rat(2)}})), Vector{Rat(1)}, Rat(1, 4)}));
  EXPECT_TRUE(check_bdd_promise({p, Basis(RatMatrix::from_rows({{Rat(2)}})), Vector{Rat(1)}, Rat(1, 2)}));
}

TEST(Wilson, KnownValues) {
  Interval w = wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(w.lo, 0.4038, 1e-3);
  EXPECT_NEAR(w.hi, 0.5962, 1e-3);
  Interval zero = wilson_interval(0, 10);
  EXPECT_NEAR(zero.lo, 0, 1e-12);
  EXPECT_GT(zero.hi, 0);
  EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(3, 2), std::invalid_argument);
}

TEST(MonteCarlo, ParallelMatchesSerial) {
  const StBddInstance inst = floor_instance();
  MonteCarloResult a = monte_carlo_success(inst, 600, Rng(4)), b = monte_carlo_success_serial(inst, 600, Rng(4));
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_GT(a.successes, 0u);
  EXPECT_THROW(monte_carlo_success(inst, 0, Rng(4)), std::invalid_argument);
}

TEST(MoSweep, SmallGridAndSerialAgreement) {
  std::vector<NormOrder> ps = {P("1"), P("2")};
  MoSweepReport a = verify_mo_bound_sweep(ps, 3, Rat(2), Rat(1, 4));
  MoSweepReport b = verify_mo_bound_sweep_serial(ps, 3, Rat(2), Rat(1, 4));
  EXPECT_EQ(a.cases, 2u * 3u * 8u);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_LE(a.max_ratio, 1.0);
}

TEST(Suites, SparsifyAndPipelineSmall) {
  for (const SuiteReport& r : {run_sparsify_suite(2000, 3), run_pipeline_suite(10, 3)})
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << r.suite << "/" << c.name << " " << c.detail.dump();
}

}  // namespace
}  // namespace lpbdd
