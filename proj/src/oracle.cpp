#include "polyexp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "polyexp/bandit.hpp"

namespace polyexp {
namespace oracle {
namespace {

constexpr std::size_t kEnumerationCap = 20;
constexpr std::size_t kPartitionCap = 12;
constexpr std::size_t kEstimatorCap = 8;
constexpr std::size_t kOddEnumerationCap = 24;

void require_dim(std::size_t n, std::size_t cap, const char* what) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (n > cap) {
    throw std::invalid_argument(std::string(what) + " enumerates 2^n vertices; refusing n = " +
                                std::to_string(n) + " > " + std::to_string(cap));
  }
}

/// eta * (coordinate-wise sum of the history).
std::vector<double> scaled_totals(std::span<const LossVector> history, double eta, std::size_t n) {
  std::vector<double> theta(n, 0.0);
  for (const LossVector& estimate : history) {
    if (estimate.dim() != n) throw std::invalid_argument("history dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) theta[i] += eta * estimate[i];
  }
  return theta;
}

/// log weight of vertex k: -sum_{i in k} theta_i.
double vertex_log_weight(std::uint64_t k, const std::vector<double>& theta) {
  double dot = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if ((k >> i) & 1ULL) dot += theta[i];
  }
  return -dot;
}

}  // namespace

std::vector<CubePoint> enumerate_cube(std::size_t n) {
  require_dim(n, kEnumerationCap, "enumerate_cube");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<CubePoint> points;
  points.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) points.push_back(cube_point_from_index(k, n));
  return points;
}

ExactDistribution exp2_exact_distribution(std::span<const LossVector> history, double eta,
                                          std::size_t n) {
  require_dim(n, kPartitionCap, "exp2_exact_distribution");
  const std::vector<double> theta = scaled_totals(history, eta, n);
  const std::uint64_t count = std::uint64_t{1} << n;

  std::vector<double> log_w(count);
  for (std::uint64_t k = 0; k < count; ++k) log_w[k] = vertex_log_weight(k, theta);
  const double shift = *std::max_element(log_w.begin(), log_w.end());
  double total = 0.0;
  for (double& lw : log_w) {
    lw = std::exp(lw - shift);
    total += lw;
  }
  for (double& p : log_w) p /= total;
  return {n, std::move(log_w)};
}

MeanVector exp2_exact_marginals(std::span<const LossVector> history, double eta, std::size_t n) {
  const ExactDistribution dist = exp2_exact_distribution(history, eta, n);
  std::vector<double> marginals(n, 0.0);
  for (std::uint64_t k = 0; k < dist.probabilities.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((k >> i) & 1ULL) marginals[i] += dist.probabilities[k];
    }
  }
  for (double& m : marginals) m = std::min(m, 1.0);
  return MeanVector(std::move(marginals));
}

LogPartitionValues log_partition_values(std::span<const LossVector> history, double eta,
                                        std::size_t n) {
  require_dim(n, kPartitionCap, "log_partition_values");
  const std::vector<double> theta = scaled_totals(history, eta, n);

  LogPartitionValues values;
  for (double t : theta) values.product_form += softplus(-t);

  const std::uint64_t count = std::uint64_t{1} << n;
  double shift = 0.0;
  for (std::uint64_t k = 0; k < count; ++k) shift = std::max(shift, vertex_log_weight(k, theta));
  double total = 0.0;
  for (std::uint64_t k = 0; k < count; ++k) total += std::exp(vertex_log_weight(k, theta) - shift);
  values.enumerated = shift + std::log(total);
  return values;
}

LossVector exact_estimator_expectation(const MeanVector& x, double gamma, const LossVector& loss) {
  const std::size_t n = x.dim();
  require_dim(n, kEstimatorCap, "exact_estimator_expectation");
  if (loss.dim() != n) throw std::invalid_argument("loss dimension mismatch");
  const MomentMatrix P = mixing_matrix(x, gamma);
  const double uniform_mass = std::ldexp(1.0, -static_cast<int>(n));  // 2^-n

  std::vector<double> expectation(n, 0.0);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < count; ++k) {
    const CubePoint vertex = cube_point_from_index(k, n);
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) product *= vertex[i] != 0 ? x[i] : 1.0 - x[i];
    const double q = (1.0 - gamma) * product + gamma * uniform_mass;
    const LossVector estimate = estimate_loss(P, vertex, linear_loss(vertex, loss));
    for (std::size_t i = 0; i < n; ++i) expectation[i] += q * estimate[i];
  }
  return LossVector::estimate(std::move(expectation));
}

double expected_abs_rademacher_sum(std::size_t T) {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (T % 2 == 0) {
    const std::size_t k = T / 2;
    if (T <= 50) {
      // C(2k, i+1) = C(2k, i) (2k - i) / (i + 1): every intermediate is an
      // exact integer below 2^53, so the result is exact.
      double binom = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        binom = binom * static_cast<double>(2 * k - i) / static_cast<double>(i + 1);
      }
      return std::ldexp(static_cast<double>(2 * k) * binom, -2 * static_cast<int>(k));
    }
    const double tk = static_cast<double>(k);
    const double log_value = std::log(2.0 * tk) + std::lgamma(2.0 * tk + 1.0) -
                             2.0 * std::lgamma(tk + 1.0) -
                             2.0 * tk * 0.6931471805599453;
    return std::exp(log_value);
  }
  if (T > kOddEnumerationCap) {
    throw std::invalid_argument("expected_abs_rademacher_sum: odd T > " +
                                std::to_string(kOddEnumerationCap) +
                                " is not supported (only the even closed form is exact)");
  }
  // Exact enumeration of all 2^T sign vectors; |sum| = |2 popcount(mask) - T|.
  std::uint64_t total = 0;
  const std::uint64_t count = std::uint64_t{1} << T;
  const auto t = static_cast<std::int64_t>(T);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const std::int64_t sum = 2 * static_cast<std::int64_t>(std::popcount(mask)) - t;
    total += static_cast<std::uint64_t>(sum < 0 ? -sum : sum);
  }
  return std::ldexp(static_cast<double>(total), -static_cast<int>(T));
}

double expected_max_linear_gain(std::size_t n, std::size_t T) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  return 0.5 * static_cast<double>(n) * expected_abs_rademacher_sum(T);
}

}  // namespace oracle
}  // namespace polyexp
