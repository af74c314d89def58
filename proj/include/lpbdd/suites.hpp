#pragma once

// Verification suites shared by `bddtool verify` and the acceptance runner,
// plus the random instance generators they draw from.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpbdd/oracles.hpp"
#include "lpbdd/reductions.hpp"

namespace lpbdd {

struct CheckResult {
  std::string name;
  bool passed;
  nlohmann::json detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

enum class GapStatus { kYes, kNo, kNeither };

/// Classifies a GapCVP' instance by brute force.
GapStatus gap_status(const GapCvpInstance& inst);

/// Random full-rank integer basis with rank n' and d in {n', n'+1}, entries
/// in [-bound, bound], and a target with quarter-integer coordinates.
GapCvpInstance random_gapcvp(Rng& rng, NormOrder p, std::size_t n_prime, int bound = 3);

/// Resamples until the instance is a NO instance (dist > 1).
GapCvpInstance random_gapcvp_no(Rng& rng, NormOrder p, std::size_t n_prime);

/// Plants a binary witness at distance <= 1.
GapCvpInstance random_gapcvp_yes(Rng& rng, NormOrder p, std::size_t n_prime);

/// B' = (2), t' = (1), p = 2, lifted to rank 4 with alpha = 112/100: T = 8,
/// S = 0, and every binary combination is alpha r close.
StBddInstance floor_instance();

struct MoSuiteOptions {
  std::vector<NormOrder> ps;
  unsigned n_max = 6;
  Rat r_max = Rat(5, 2);
  Rat r_step = Rat(1, 10);
};
MoSuiteOptions default_mo_options();

SuiteReport run_mo_suite(const MoSuiteOptions& options = default_mo_options());

/// Monte-Carlo floor on floor_instance(): Wilson lower bound >= 1/40.
SuiteReport run_sparsify_suite(std::uint64_t trials, std::uint64_t seed);

/// Zero false positives on seeded finite-p NO instances (C = 2, p = 2), and
/// the p = inf deterministic pipeline on YES instances.
SuiteReport run_pipeline_suite(std::uint64_t instances, std::uint64_t seed);

/// Direct-sum lemma items 1-3 by paired enumeration.
SuiteReport run_transform_suite(std::uint64_t instances, std::uint64_t seed);

}  // namespace lpbdd
