#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyexp/algorithms.hpp"
#include "polyexp/core.hpp"

namespace polyexp {
namespace oracle {

/// All 2^n vertices, ordered by index (coordinate i of vertex k is bit i of k).
std::vector<CubePoint> enumerate_cube(std::size_t n);  // n <= 20

/// Explicit probability table over {0,1}^n.
struct ExactDistribution {
  std::size_t n = 0;
  std::vector<double> probabilities;  // indexed by vertex, sums to 1
};

/// Exact exponential-weights distribution after an estimate history,
/// built by direct enumeration (independent of Exp2Distribution's
/// incremental updates). n <= 12.
ExactDistribution exp2_exact_distribution(std::span<const LossVector> history, double eta,
                                          std::size_t n);

/// P(X_i = 1) under exp2_exact_distribution. Equal to the PolyExp means of
/// the same history; that equality is what the test suites verify.
MeanVector exp2_exact_marginals(std::span<const LossVector> history, double eta, std::size_t n);

/// The partition function of the exponential-weights distribution computed
/// two ways: as the coordinate-factorized product sum_i log(1 + exp(-theta_i))
/// and as a log-sum-exp over all 2^n vertices. The two must agree; their gap
/// is what equivalence checks measure. n <= 12.
struct LogPartitionValues {
  double product_form = 0.0;
  double enumerated = 0.0;
};
LogPartitionValues log_partition_values(std::span<const LossVector> history, double eta,
                                        std::size_t n);

/// Exact E[estimate] of the bandit loss estimator under the mixed sampling
/// law q(X) = (1-gamma) prod x_i^X_i (1-x_i)^(1-X_i) + gamma 2^-n, by
/// enumeration of all 2^n outcomes. Equals the true loss l. n <= 8.
LossVector exact_estimator_expectation(const MeanVector& x, double gamma, const LossVector& loss);

/// E|Y_1 + ... + Y_T| for i.i.d. +-1 signs. Even T = 2k uses the closed form
/// (2k / 4^k) C(2k, k): exact integer arithmetic while C(2k, k) fits a
/// double, log-gamma beyond. Odd T is enumerated exactly up to T <= 24 and
/// refused above that (no closed form is trusted for the odd case).
double expected_abs_rademacher_sum(std::size_t T);

/// Exact E[max_X sum_t l_t . X] for i.i.d. Rademacher losses:
/// (n / 2) * expected_abs_rademacher_sum(T). This is the expected-regret
/// floor the Rademacher adversary realizes.
double expected_max_linear_gain(std::size_t n, std::size_t T);

}  // namespace oracle
}  // namespace polyexp
