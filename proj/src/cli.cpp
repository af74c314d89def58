#include "lpbdd/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpbdd/instance_io.hpp"
#include "lpbdd/numerics.hpp"
#include "lpbdd/oracles.hpp"
#include "lpbdd/reductions.hpp"
#include "lpbdd/suites.hpp"

namespace lpbdd {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x, int digits = 10) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

double parse_p_double(const std::string& text) {
  NormOrder p = NormOrder::infinity();
  try {
    p = NormOrder::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--p: ") + e.what());
  }
  if (p.is_infinite()) throw UsageError("--p: thresholds are defined for finite p only");
  return p.value();
}

RankRatio parse_c(const std::string& text) {
  try {
    return RankRatio::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--C: ") + e.what());
  }
}

/// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f || !(f << text)) throw std::system_error(errno, std::generic_category(), "cannot write " + path);
}

json draw_json(const SparsifierDraw& d) {
  return {{"q", d.q}, {"z", d.z}, {"c", d.c}, {"seed", d.seed}};
}

json trace_json(const PipelineResult& r) {
  const PipelineTrace& t = r.trace;
  json params = {{"p", t.params.p.to_string()},
                 {"C", t.params.rank_ratio},
                 {"alpha", format_decimal_or_rational(t.params.alpha)},
                 {"policy", t.params.policy == PrimePolicy::kSmallest ? "smallest" : "random"},
                 {"seed", t.params.seed},
                 {"n_prime", t.stbdd.meta.n_prime},
                 {"n", t.stbdd.basis.rank()},
                 {"s_p", emit_magnitude(s_p(t.stbdd.basis.rank(), t.params.p))}};
  json doc = {{"params", params},
              {"stbdd", emit_instance(from_stbdd(t.stbdd))},
              {"S", {{"value", t.s_bound.value}, {"exact", t.s_bound.exact}}},
              {"T", t.stbdd.meta.t},
              {"pad", format_rational(t.pad)},
              {"solution_radius", emit_magnitude(t.solution_radius)}};
  if (t.sparsified) {
    doc["draw"] = draw_json(t.sparsified->draw);
    InstanceFile cand{InstanceKind::kStBdd, t.params.p, t.sparsified->candidate.basis.matrix(),
                      t.sparsified->candidate.target, t.sparsified->candidate.radius, t.params.alpha,
                      json{{"stage", "sparsified"}}};
    doc["sparsified"] = emit_instance(cand);
  }
  doc["bdd"] = emit_instance(from_bdd(r.bdd));
  return doc;
}

int cmd_alpha(const std::string& p_text, const std::string& c_text, double tol, std::ostream& out) {
  const double p = parse_p_double(p_text);
  const RankRatio c = parse_c(c_text);
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  AlphaResult a = alpha_star(p, c, tol);
  json doc = {{"p", p},
              {"C", c.to_string()},
              {"alpha_star", a.value},
              {"bracket", {a.bracket_lo, a.bracket_hi}},
              {"tol", a.tol},
              {"threshold", c.threshold()}};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_curve(double p_min, double p_max, double step, const std::vector<std::string>& c_texts, double tol,
              const std::string& path, std::ostream& out) {
  if (!(p_min >= 1)) throw UsageError("--p-min must be at least 1");
  if (!(p_max >= p_min)) throw UsageError("--p-max must be at least --p-min");
  if (!(step > 0)) throw UsageError("--step must be positive");
  std::vector<double> ps;
  const auto steps = static_cast<long>(std::floor((p_max - p_min) / step + 1e-9));
  for (long k = 0; k <= steps; ++k) ps.push_back(p_min + static_cast<double>(k) * step);
  std::vector<RankRatio> cs;
  for (const auto& c : c_texts) cs.push_back(parse_c(c));
  std::ostringstream csv;
  csv << "p,C,alpha_star,upper_bound,alt_upper_bound\n";
  for (const auto& row : alpha_curve(ps, cs, tol)) {
    csv << fmt(row.p) << ',' << row.c.to_string() << ',' << fmt(row.alpha_star) << ',' << fmt(row.upper_bound)
        << ',' << (std::isnan(row.alt_upper_bound) ? std::string("n/a") : fmt(row.alt_upper_bound)) << '\n';
  }
  emit(path, csv.str(), out);
  return kExitOk;
}

struct ReduceOptions {
  std::string in, out, trace, alpha = "auto", policy = "smallest", c;
  std::uint64_t seed = 0;
};

int cmd_reduce(const ReduceOptions& o, std::ostream& out) {
  const GapCvpInstance inst = to_gapcvp(read_instance_file(o.in));
  double c = inst.p.is_infinite() ? 1.0 : 2.0;
  if (!o.c.empty()) {
    try {
      c = std::stod(o.c);
    } catch (const std::exception&) {
      throw UsageError("--C must be a number");
    }
  }
  std::optional<Rat> alpha;
  if (o.alpha != "auto") {
    try {
      alpha = parse_rational(o.alpha);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--alpha: ") + e.what());
    }
  }
  const PrimePolicy policy = o.policy == "random" ? PrimePolicy::kRandom : PrimePolicy::kSmallest;
  const ReductionParams params = make_params(inst.p, c, alpha, policy, o.seed);
  Rng rng(o.seed);
  const PipelineResult result = full_pipeline(inst, params, rng);
  emit(o.out, emit_instance(from_bdd(result.bdd)).dump(2) + "\n", out);
  if (!o.trace.empty()) write_json_file(o.trace, trace_json(result));
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> trials, std::uint64_t seed,
               const std::string& path, std::ostream& out) {
  std::vector<SuiteReport> reports;
  const bool all = suite == "all";
  if (all || suite == "mo") reports.push_back(run_mo_suite());
  if (all || suite == "sparsify") reports.push_back(run_sparsify_suite(trials.value_or(10000), seed));
  if (all || suite == "pipeline") reports.push_back(run_pipeline_suite(trials.value_or(100), seed));
  if (suite == "transform") reports.push_back(run_transform_suite(trials.value_or(200), seed));
  json arr = json::array();
  bool passed = true;
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
    passed = passed && r.passed();
  }
  json doc = {{"passed", passed}, {"seed", seed}, {"suites", arr}};
  emit(path, doc.dump(2) + "\n", out);
  return passed ? kExitOk : kExitVerifiedNo;
}

struct CountOptions {
  std::string lattice = "zn", p, r, r_pow, center = "origin";
  std::size_t n = 0;
  bool open = false;
};

int cmd_count(const CountOptions& o, std::ostream& out) {
  if (o.lattice != "zn") throw UsageError("--lattice: only zn is supported");
  if (o.n == 0) throw UsageError("--n must be positive");
  NormOrder p = NormOrder::infinity();
  Magnitude radius = Magnitude::zero(p);
  try {
    p = NormOrder::parse(o.p);
    if (!o.r_pow.empty()) {
      if (p.is_infinite()) throw UsageError("--r-pow needs a finite p");
      radius = Magnitude::from_pth_power(p, parse_rational(o.r_pow));
    } else {
      radius = Magnitude::from_value(p, parse_rational(o.r));
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const Vector center(o.n, o.center == "half" ? Rat(1, 2) : Rat(0));
  BallQuery q{radius, center, o.open ? Boundary::kOpen : Boundary::kClosed, o.open};
  const std::size_t c = count(Basis::identity(o.n), q);
  json doc = {{"n", o.n},
              {"p", p.to_string()},
              {"r", emit_magnitude(radius)},
              {"center", o.center},
              {"open", o.open},
              {"count", c}};
  if (!p.is_infinite() && o.center == "origin")
    doc["mo_bound"] = mo_bound(p.value(), radius.to_double(), static_cast<unsigned>(o.n));
  else
    doc["mo_bound"] = "n/a";
  out << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reductions from GapCVP' to BDD in l_p norms, with exact verification", "bddtool"};
  app.require_subcommand(1);

  std::string p_text, c_text = "inf";
  double tol = kDefaultBisectionTol;
  auto* alpha = app.add_subcommand("alpha", "alpha*_{p,C} with its bisection bracket, as JSON");
  alpha->add_option("--p", p_text, "norm order p >= 1")->required();
  alpha->add_option("--C", c_text, "rank ratio C > 1 or inf");
  alpha->add_option("--tol", tol, "bisection tolerance");

  double p_min = 1.1, p_max = 10, step = 0.05;
  std::vector<std::string> c_list = {"1.5", "2", "5", "inf"};
  std::string curve_out;
  auto* curve = app.add_subcommand("curve", "CSV of alpha*_{p,C} and its closed-form bounds over a p grid");
  curve->add_option("--p-min", p_min);
  curve->add_option("--p-max", p_max);
  curve->add_option("--step", step);
  curve->add_option("--C", c_list, "rank ratios")->delimiter(',');
  curve->add_option("--tol", tol);
  curve->add_option("--out", curve_out, "CSV path (stdout when omitted)");

  ReduceOptions ro;
  auto* reduce = app.add_subcommand("reduce", "GapCVP' instance file -> BDD instance file");
  reduce->add_option("--in", ro.in)->required();
  reduce->add_option("--C", ro.c, "rank ratio (default 2, or 1 for p = inf)");
  reduce->add_option("--alpha", ro.alpha, "auto or a rational");
  reduce->add_option("--policy", ro.policy)->check(CLI::IsMember({"smallest", "random"}));
  reduce->add_option("--seed", ro.seed);
  reduce->add_option("--out", ro.out, "BDD instance path (stdout when omitted)");
  reduce->add_option("--trace", ro.trace, "trace path");

  std::string suite = "all", verify_out;
  std::optional<std::uint64_t> trials;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "run verification suites; JSON report");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"mo", "sparsify", "pipeline", "transform", "all"}));
  verify->add_option("--trials", trials, "Monte-Carlo trials or instance count");
  verify->add_option("--seed", verify_seed);
  verify->add_option("--out", verify_out);

  CountOptions co;
  auto* countc = app.add_subcommand("count", "exact lattice point count in an l_p ball, with the MO bound");
  countc->add_option("--lattice", co.lattice)->check(CLI::IsMember({"zn"}));
  countc->add_option("--n", co.n)->required();
  countc->add_option("--p", co.p)->required();
  auto* r_opt = countc->add_option("--r", co.r, "radius");
  auto* rp_opt = countc->add_option("--r-pow", co.r_pow, "radius given through r^p");
  r_opt->excludes(rp_opt);
  countc->add_option("--center", co.center)->check(CLI::IsMember({"origin", "half"}));
  countc->add_flag("--open", co.open, "open ball without the origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*alpha) return cmd_alpha(p_text, c_text, tol, out);
    if (*curve) return cmd_curve(p_min, p_max, step, c_list, tol, curve_out, out);
    if (*reduce) return cmd_reduce(ro, out);
    if (*verify) return cmd_verify(suite, trials, verify_seed, verify_out, out);
    if (*countc) {
      if (co.r.empty() && co.r_pow.empty()) throw UsageError("count needs --r or --r-pow");
      return cmd_count(co, out);
    }
  } catch (const ConstraintViolation& e) {
    err << "constraint violation: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lpbdd
