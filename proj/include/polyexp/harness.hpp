#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polyexp/adversaries.hpp"
#include "polyexp/bandit.hpp"
#include "polyexp/core.hpp"
#include "polyexp/rng.hpp"

namespace polyexp {

/// One Monte Carlo experiment: repeated games of one learner against one
/// adversary under a common master seed.
struct ExperimentSpec {
  GameConfig config;
  Algorithm learner = Algorithm::PolyExp;
  AdversarySpec adversary;
  std::size_t runs = 1;
  /// When set, config.eta / config.gamma are replaced by tuned_parameters.
  bool tuned = true;
  std::size_t threads = 1;
};

struct ExperimentResult {
  double mean_regret = 0.0;
  double stderr_of_mean = 0.0;
  std::vector<double> per_run_regret;
  double bound = 0.0;  // matching theoretical upper bound
  bool bound_satisfied = false;
  std::uint64_t violation_count = 0;
  double wall_time_seconds = 0.0;
  double eta = 0.0;    // effective parameters after tuning
  double gamma = 0.0;
};

/// One full-information game. The adversary draws round t seeing only the
/// actions of rounds 1..t-1; the learner is fed the full loss vector.
GameRecord play_full_information(const GameConfig& config, Algorithm learner,
                                 Adversary& adversary, RngStream& learner_rng,
                                 RngStream& adversary_rng);

/// One bandit game. Per round: build P_t from the learner's current means
/// and gamma, draw the mixed action, observe only the scalar incurred loss,
/// estimate, update. The learner-update path receives nothing but
/// (scalar, action, P_t).
GameRecord play_bandit(const GameConfig& config, Algorithm learner, Adversary& adversary,
                       RngStream& learner_rng, RngStream& adversary_rng);

/// Runs `spec.runs` independent games on per-run derived streams and
/// aggregates. Results are a pure function of (spec, seed): neither the
/// thread count nor scheduling order can change any field except wall time.
ExperimentResult monte_carlo_regret(const ExperimentSpec& spec);

/// Closed-form regret upper bound for the (algorithm, feedback) pair at
/// tuned parameters:
///   PolyExp full:   2 n sqrt(T log 2)        PolyExp bandit: 4 n^1.5 sqrt(6 T log 2)
///   Exp2    full:   2 n^1.5 sqrt(T log 2)    Exp2    bandit: 6 n^2   sqrt(T log 2)
double theoretical_bound(std::size_t n, std::size_t horizon, Algorithm algorithm,
                         Feedback feedback);

/// Exact reference value realized by the matching lower-bound adversary:
/// full information: expected_max_linear_gain(n, T) (needs the even-T form);
/// bandit: eps n T (1/2 - eps sqrt(T/n)) at eps = default_gap_epsilon(n, T).
double lower_bound_reference(std::size_t n, std::size_t horizon, Feedback feedback);

/// --- verification suites (shared by the CLI and the acceptance tests) ---

struct DistributionDeviation {
  double joint = 0.0;     // max over histories, rounds, vertices
  double marginal = 0.0;  // max over histories, rounds, coordinates
};

/// Feeds `histories` random bounded loss histories to a fresh Exp2 table and
/// a fresh PolyExp state in lockstep and measures how far the Exp2 vertex
/// probabilities stray from the PolyExp product probabilities (and the
/// marginals from the means), checking after every round.
/// `inject_fault` perturbs one PolyExp update by 1e-6 so suite sensitivity
/// can be tested.
DistributionDeviation max_exp2_polyexp_deviation(std::size_t n, std::size_t horizon,
                                                 std::size_t histories, double eta,
                                                 std::uint64_t seed, bool inject_fault = false);

/// Max per-coordinate gap between omd_step and the PolyExp mean-space step
/// over random (x, estimate, eta) triples with dimensions cycling 1..max_n.
double max_omd_step_deviation(std::size_t max_n, std::size_t trials, std::uint64_t seed);

/// Max |product-form - enumerated| log-partition gap over random histories,
/// evaluated after every round.
double max_partition_identity_deviation(std::size_t n, std::size_t horizon,
                                        std::size_t histories, double eta, std::uint64_t seed);

}  // namespace polyexp
