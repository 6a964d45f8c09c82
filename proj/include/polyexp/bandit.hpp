#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyexp/algorithms.hpp"
#include "polyexp/core.hpp"
#include "polyexp/rng.hpp"

namespace polyexp {

/// Dense symmetric n x n matrix (second moments and their mixtures).
/// Symmetry is enforced by construction: set() writes both triangles.
class MomentMatrix {
 public:
  explicit MomentMatrix(std::size_t n);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);
  const std::vector<double>& data() const { return data_; }  // row-major

  friend bool operator==(const MomentMatrix&, const MomentMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// E[X X^T] for X ~ product Bernoulli(x): diagonal x_i, off-diagonal x_i x_j.
MomentMatrix second_moment_product(const MeanVector& x);

/// E[X X^T] for X uniform on {0,1}^n: (I + 1 1^T) / 4.
MomentMatrix second_moment_uniform(std::size_t n);

/// (1 - gamma) * second_moment_product(x) + gamma * second_moment_uniform(n).
/// The uniform part keeps the smallest eigenvalue at or above gamma / 4.
/// Accepts gamma in (0, 1]; the gamma = 1 limit is the pure uniform moment.
MomentMatrix mixing_matrix(const MeanVector& x, double gamma);

/// Solve P u = v for symmetric positive-definite P (Cholesky). A failed
/// factorization means P is not positive definite, which in a game loop
/// signals gamma misuse; it throws rather than returning garbage.
std::vector<double> spd_solve(const MomentMatrix& P, std::span<const double> v);

/// Smallest eigenvalue of a symmetric matrix (used by conditioning checks).
double min_eigenvalue(const MomentMatrix& m);

/// With probability gamma draw uniformly from {0,1}^n (a Bernoulli(1/2)
/// product), otherwise draw from the product Bernoulli(x).
CubePoint mixed_sample(const MeanVector& x, double gamma, RngStream& rng);

/// Unbiased loss estimate from bandit feedback: observed * P^-1 X, where
/// observed is the scalar X . l seen by the learner.
LossVector estimate_loss(const MomentMatrix& P, const CubePoint& action, double observed);

struct TunedParameters {
  double eta = 0.0;
  double gamma = 0.0;
  Algorithm algorithm = Algorithm::PolyExp;
  Feedback feedback = Feedback::FullInformation;
};

/// Closed-form (eta, gamma) under which the regret guarantees hold:
///   PolyExp full:   eta = sqrt(log 2 / T),            gamma = 0
///   PolyExp bandit: eta = sqrt(3 log 2 / (8 n T)),    gamma = 4 n   eta
///   Exp2    full:   eta = sqrt(log 2 / (n T)),        gamma = 0
///   Exp2    bandit: eta = sqrt(log 2 / (9 n^2 T)),    gamma = 4 n^2 eta
/// Throws "horizon too short" (with the smallest workable T) when the bandit
/// gamma would reach 1.
TunedParameters tuned_parameters(std::size_t n, std::size_t horizon, Algorithm algorithm,
                                 Feedback feedback);

/// Number of coordinates with |eta * estimate_i| > 1. Under tuned bandit
/// parameters and bounded true losses this is always zero; the count is
/// recorded, never clipped away.
std::size_t estimate_magnitude_violations(double eta, const LossVector& estimate);

}  // namespace polyexp
