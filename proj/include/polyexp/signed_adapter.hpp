#pragma once

#include "polyexp/algorithms.hpp"
#include "polyexp/bandit.hpp"
#include "polyexp/core.hpp"
#include "polyexp/rng.hpp"

namespace polyexp {

/// Runs PolyExp on {0,1}^n while playing on {-1,+1}^n: sample X from the
/// inner learner, play Z = 2X - 1, and feed the inner learner 2 * estimate.
/// The signed-cube regret under losses l then equals the inner {0,1}^n
/// regret under losses 2l.
class SignedCubeLearner {
 public:
  SignedCubeLearner(std::size_t n, double eta, Feedback feedback, double gamma = 0.0);

  std::size_t dim() const { return state_.dim(); }
  const PolyExpState& inner() const { return state_; }
  const CubePoint& last_inner_action() const;

  /// Sample the round's action (mixed with uniform exploration in bandit mode).
  SignedCubePoint play(RngStream& rng);

  /// Full information: feeds 2 * loss to the inner learner. Returns the fed
  /// estimate.
  LossVector observe_full(const LossVector& loss);

  /// Bandit: only the scalar observed = Z . l enters. Builds the signed
  /// second-moment matrix E[Z Z^T] of the mixed sampling distribution,
  /// estimates the loss, and feeds 2 * estimate to the inner learner.
  /// Returns the signed-cube estimate (before doubling).
  LossVector observe_bandit(double observed);

 private:
  PolyExpState state_;
  Feedback feedback_;
  double gamma_;
  CubePoint last_action_;
  MeanVector means_at_play_;
  bool pending_ = false;
};

/// E[Z Z^T] for Z = 2X - 1 when X has mixed second moment P and mean x_q:
/// 4 P - 2 (x_q 1^T + 1 x_q^T) + 1 1^T.
MomentMatrix signed_second_moment(const MomentMatrix& P, const std::vector<double>& mean);

}  // namespace polyexp
