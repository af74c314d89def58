// One pass/fail line per acceptance criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "box_oracle.hpp"
#include "lpbdd/hnf.hpp"
#include "lpbdd/numerics.hpp"
#include "lpbdd/oracles.hpp"
#include "lpbdd/sparsify.hpp"
#include "lpbdd/suites.hpp"

namespace {

using namespace lpbdd;

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

Outcome constants() {
  struct Row {
    double p;
    RankRatio c;
    double want;
  };
  const std::vector<Row> rows = {{2, RankRatio::infinite(), 1.05006},
                                 {3, RankRatio(2), 1.1418},
                                 {3, RankRatio(5), 0.917803},
                                 {5, RankRatio::infinite(), 0.672558}};
  bool ok = true;
  std::ostringstream out;
  for (const Row& r : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = alpha_star(r.p, r.c).value;
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = near(a, r.want, 1e-3) && s < 1;
    ok = ok && pass;
    out << "p=" << r.p << ",C=" << r.c.to_string() << ": " << fmt("%.6f (%.3fs) ", a, s);
  }
  return {ok, out.str()};
}

double p1_value = 0;

Outcome crossovers() {
  auto timed = [](double target) {
    const auto t0 = std::chrono::steady_clock::now();
    const double p = crossover_p(target, RankRatio::infinite());
    return std::pair{p, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
  };
  auto [p1, s1] = timed(1 / std::sqrt(2.0));
  auto [p0, s0] = timed(1.0);
  p1_value = p1;
  const bool ok = near(p1, 4.2773, 1e-3) && near(p0, 2.1397, 1e-3) && s1 < 5 && s0 < 5;
  return {ok, fmt("p1=%.6f (%.2fs) p0=%.6f (%.2fs)", p1, s1, p0, s0)};
}

Outcome closed_forms() {
  const double u2 = alpha_upper_bound(2, RankRatio::infinite());
  const double u5 = alpha_upper_bound(5, RankRatio::infinite());
  const double sig = sigma_star(RankRatio::infinite());
  const double p1 = p1_value > 0 ? p1_value : crossover_p(1 / std::sqrt(2.0), RankRatio::infinite());
  const double alt = alt_upper_bound(p1, RankRatio::infinite());
  const double alt_literal = alt_upper_bound(4.2273, RankRatio::infinite());
  const bool ok = near(u2, 1.08078, 1e-4) && near(u5, 0.680575, 1e-4) && near(sig, 4.6723, 5e-4) &&
                  near(alt, 0.7801, 1e-3);
  std::ostringstream out;
  out << fmt("ub(2)=%.6f ub(5)=%.6f sigma*=%.6f ", u2, u5, sig) << fmt("alt(p1=%.4f)=%.6f", p1, alt)
      << fmt(" [info: alt(4.2273)=%.6f]", alt_literal);
  return {ok, out.str()};
}

Outcome curve() {
  std::vector<double> ps;
  for (int k = 0; k <= 178; ++k) ps.push_back(1.1 + 0.05 * k);
  const std::vector<RankRatio> cs = {RankRatio(1.5), RankRatio(2), RankRatio(5), RankRatio::infinite()};
  const std::vector<CurveRow> rows = alpha_curve(ps, cs);
  std::size_t bad_p = 0, bad_c = 0, bad_ub = 0, bad_half = 0, alt_defined = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const CurveRow& r = rows[i * cs.size() + j];
      if (i > 0 && !(r.alpha_star < rows[(i - 1) * cs.size() + j].alpha_star)) ++bad_p;
      if (j > 0 && !(r.alpha_star < rows[i * cs.size() + j - 1].alpha_star)) ++bad_c;
      if (!(r.alpha_star <= r.upper_bound)) ++bad_ub;
      if (!std::isnan(r.alt_upper_bound)) {
        ++alt_defined;
        if (!(r.alpha_star <= r.alt_upper_bound)) ++bad_ub;
      }
      if (!(r.alpha_star > 0.5)) ++bad_half;
    }
  }
  const bool ok = bad_p + bad_c + bad_ub + bad_half == 0;
  std::ostringstream out;
  out << rows.size() << " points, " << alt_defined << " with alt bound; violations: p-monotone " << bad_p
      << ", C-monotone " << bad_c << ", bounds " << bad_ub << ", > 1/2 " << bad_half;
  return {ok, out.str()};
}

Basis random_rational_basis(std::mt19937_64& gen, std::size_t n, std::size_t d) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (;;) {
    RatMatrix m(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(num(gen), den(gen));
    if (rank(m) == n) return Basis(std::move(m));
  }
}

constexpr double kMaxBoxVolume = 2e5;

Outcome counting_oracle() {
  std::mt19937_64 gen(500);
  std::uniform_int_distribution<int> rn(1, 4), extra(0, 1), cnum(-8, 8);
  const std::vector<NormOrder> ps = {NormOrder::parse("1"), NormOrder::parse("2"), NormOrder::parse("3"),
                                     NormOrder::infinity()};
  std::size_t mismatches = 0, points = 0;
  std::size_t redraws = 0;
  for (int trial = 0; trial < 500; ++trial) {
    BallQuery q{Magnitude::from_value(NormOrder::infinity(), Rat(0)), {}};
    Basis b = Basis::identity(1);
    for (;;) {
      const std::size_t n = rn(gen), d = n + extra(gen);
      b = random_rational_basis(gen, n, d);
      Vector center(d);
      for (auto& x : center) x = Rat(cnum(gen), 4);
      // radii up to 4 for low rank, up to 2 at rank 4
      std::uniform_int_distribution<int> rad(1, n <= 2 ? 16 : n == 3 ? 12 : 8);
      const NormOrder& p = ps[trial % ps.size()];
      q = {Magnitude::from_value(p, Rat(rad(gen), 4)), center, trial % 3 == 0 ? Boundary::kOpen : Boundary::kClosed,
           trial % 5 == 0};
      if (testing::coefficient_box(b, q).volume() <= kMaxBoxVolume) break;
      ++redraws;
    }
    std::vector<Vector> got;
    for (const auto& pt : enumerate(b, q)) got.push_back(pt.point);
    std::sort(got.begin(), got.end());
    std::vector<Vector> want = testing::box_scan(b, q);
    std::sort(want.begin(), want.end());
    points += want.size();
    if (got != want || count(b, q) != want.size()) ++mismatches;
  }
  return {mismatches == 0, "500 cases, " + std::to_string(points) + " points, " + std::to_string(mismatches) +
                               " mismatches, " + std::to_string(redraws) + " redrawn for box volume"};
}

Outcome mo_sweep() {
  SuiteReport r = run_mo_suite();
  const auto& d = r.checks.front().detail;
  std::ostringstream out;
  out << d.value("cases", 0) << " cases, max count/bound " << d.value("max_ratio", 0.0);
  if (!r.passed()) out << ", violation " << d.dump();
  return {r.passed(), out.str()};
}

Outcome sparsification_index() {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> rn(1, 5);
  const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 41, 83, 101, 163};
  std::size_t failures = 0, checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rn(gen);
    const std::uint64_t q = primes[trial % primes.size()];
    std::uniform_int_distribution<std::uint64_t> zq(0, q - 1);
    std::vector<std::uint64_t> z(n);
    do
      for (auto& v : z) v = zq(gen);
    while (std::all_of(z.begin(), z.end(), [](std::uint64_t v) { return v == 0; }));
    const IntMatrix sub = coefficient_sublattice(z, q);
    if (abs_determinant(sub) != q) ++failures;
    const Basis lb = Basis::from_integer(sub);
    const Rat box = n <= 3 ? Rat(3) : n == 4 ? Rat(2) : Rat(1);
    for (const auto& pt : enumerate(Basis::identity(n), {Magnitude::from_value(NormOrder::infinity(), box),
                                                         Vector(n, Rat(0)), Boundary::kClosed, false})) {
      Int ip = 0;
      for (std::size_t i = 0; i < n; ++i) ip += Int(z[i]) * pt.coeffs[i];
      Int rem = ip % Int(q);
      const bool in_sub = lattice_coeffs(lb, pt.point).has_value();
      if (in_sub != (rem == 0)) ++failures;
      ++checked;
    }
  }
  return {failures == 0, "200 draws, " + std::to_string(checked) + " membership checks, " +
                             std::to_string(failures) + " failures"};
}

Outcome probability_floor() {
  SuiteReport r = run_sparsify_suite(10000, 1);
  bool floor_ok = false, yes = false;
  nlohmann::json d;
  for (const auto& c : r.checks) {
    if (c.name == "floor_instance_is_yes") yes = c.passed;
    if (c.name == "success_floor") floor_ok = c.passed, d = c.detail;
  }
  std::ostringstream out;
  out << "YES instance " << (yes ? "ok" : "FAILED") << ", q=" << d.value("q", 0) << ", "
      << d.value("successes", 0) << "/" << d.value("trials", 0)
      << fmt(", rate %.4f, 99%% Wilson [%.4f, %.4f], floor 0.025", d.value("rate", 0.0), d.value("wilson_lo", 0.0),
             d.value("wilson_hi", 0.0));
  return {yes && floor_ok, out.str()};
}

std::string summarize(const SuiteReport& r) {
  std::ostringstream out;
  for (const auto& c : r.checks) out << c.name << "=" << (c.passed ? "ok" : "FAIL") << " " << c.detail.dump() << "; ";
  return out.str();
}

Outcome pipeline() {
  SuiteReport r = run_pipeline_suite(100, 1);
  return {r.passed(), summarize(r)};
}

Outcome transform() {
  SuiteReport r = run_transform_suite(200, 1);
  return {r.passed(), summarize(r)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "constants", 4, constants},
      {2, "crossovers", 10, crossovers},
      {3, "closed forms", 1, closed_forms},
      {4, "curve properties", 120, curve},
      {5, "counting oracle equivalence", 300, counting_oracle},
      {6, "Mazo-Odlyzko sweep", 300, mo_sweep},
      {7, "sparsification index", 120, sparsification_index},
      {8, "probability floor", 600, probability_floor},
      {9, "pipeline soundness", 600, pipeline},
      {10, "transform lemma", 300, transform},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.passed && s <= c.budget_s;
    if (!pass) ++failed;
    std::printf("[%s] %2d %-28s %8.2fs / %.0fs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, s, c.budget_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
