#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyexp/core.hpp"
#include "polyexp/rng.hpp"

namespace polyexp {

/// Numerically stable 1 / (1 + exp(-z)); never overflows.
double logistic(double z);

/// Numerically stable log(1 + exp(z)).
double softplus(double z);

/// Per-coordinate Bernoulli means x in [0,1]^n.
class MeanVector {
 public:
  MeanVector() = default;
  explicit MeanVector(std::vector<double> x);
  static MeanVector half(std::size_t n);  // (1/2, ..., 1/2)

  std::size_t dim() const { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }
  const std::vector<double>& values() const { return x_; }
  bool interior() const;  // all coordinates strictly inside (0, 1)

  friend bool operator==(const MeanVector&, const MeanVector&) = default;

 private:
  std::vector<double> x_;
};

/// PolyExp learner state. Stores theta_i = eta * (cumulative estimate sum),
/// which makes every update exact; means are derived on demand through the
/// stable logistic, so the state never drifts the way repeated multiplicative
/// updates of x would.
class PolyExpState {
 public:
  PolyExpState(std::size_t n, double eta);  // theta = 0, means = (1/2, ...)

  /// Rebuild the state whose means equal x (requires interior x).
  static PolyExpState from_means(const MeanVector& x, double eta);

  std::size_t dim() const { return theta_.size(); }
  double eta() const { return eta_; }
  const std::vector<double>& theta() const { return theta_; }

  /// x_i = 1 / (1 + exp(theta_i)).
  MeanVector means() const;

  /// theta_i += eta * estimate_i.
  void update(const LossVector& estimate);
  PolyExpState updated(const LossVector& estimate) const;

 private:
  std::vector<double> theta_;
  double eta_ = 0.0;
};

/// One PolyExp round in mean space: x_i / (x_i + (1 - x_i) exp(eta l_i)).
/// Requires interior x. This is the same step as PolyExpState::update seen
/// from the means; both forms are kept because their agreement (and the
/// agreement with omd_step) is part of the verified contract.
MeanVector polyexp_step(const MeanVector& x, const LossVector& estimate, double eta);

/// Independent product-Bernoulli draw: coordinate i is 1 with probability x_i.
CubePoint bernoulli_product_sample(const MeanVector& x, RngStream& rng);

/// Exact exponential-weights reference: one log-weight per vertex of {0,1}^n.
/// Exists to verify the PolyExp equivalence at small n; refuses n above the
/// table cap.
class Exp2Distribution {
 public:
  static constexpr std::size_t kMaxDim = 20;

  Exp2Distribution(std::size_t n, double eta);  // uniform: w(X) = 1 for all X

  std::size_t dim() const { return n_; }
  double eta() const { return eta_; }

  /// log w(X) -= eta * X . estimate, for every vertex X.
  void update(const LossVector& estimate);

  const std::vector<double>& log_weights() const { return log_weights_; }

  /// Normalized probabilities, max-shifted so the exponentials cannot overflow.
  std::vector<double> probabilities() const;
  double probability(std::uint64_t vertex_index) const;
  double log_partition() const;

  /// P(X_i = 1) under the current distribution.
  MeanVector marginals() const;

  /// Inverse-CDF draw over the 2^n table.
  CubePoint sample(RngStream& rng) const;

 private:
  std::size_t n_ = 0;
  double eta_ = 0.0;
  std::vector<double> log_weights_;
};

/// Distribution after feeding a whole estimate history to a fresh learner.
Exp2Distribution exp2_distribution(std::span<const LossVector> history, double eta, std::size_t n);

/// Entropic regularizer F(x) = sum_i x_i log x_i + (1-x_i) log(1-x_i),
/// with the 0 log 0 = 0 convention on the boundary.
double entropic_regularizer(const MeanVector& x);

/// grad F(x)_i = log x_i - log(1 - x_i). Throws on boundary coordinates.
std::vector<double> entropic_gradient(const MeanVector& x);

/// Convex conjugate F*(theta) = sum_i log(1 + exp(theta_i)), via softplus.
double entropic_conjugate(std::span<const double> theta);

/// grad F*(theta)_i = 1 / (1 + exp(-theta_i)); inverse of entropic_gradient.
MeanVector entropic_conjugate_gradient(std::span<const double> theta);

/// Mirror-descent step grad F*(grad F(x) - eta * estimate). The image is
/// already inside [0,1]^n, so no projection is applied.
MeanVector omd_step(const MeanVector& x, const LossVector& estimate, double eta);

/// D_F(x || y) = F(x) - F(y) - grad F(y) . (x - y). Requires interior y.
double bregman_divergence(const MeanVector& x, const MeanVector& y);

}  // namespace polyexp
