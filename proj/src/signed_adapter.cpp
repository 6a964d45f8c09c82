#include "polyexp/signed_adapter.hpp"

#include <stdexcept>
#include <vector>

namespace polyexp {

SignedCubeLearner::SignedCubeLearner(std::size_t n, double eta, Feedback feedback, double gamma)
    : state_(n, eta), feedback_(feedback), gamma_(gamma) {
  if (feedback == Feedback::FullInformation) {
    if (gamma != 0.0) throw std::invalid_argument("full information requires gamma = 0");
  } else if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::invalid_argument("bandit feedback requires gamma in (0, 1)");
  }
}

const CubePoint& SignedCubeLearner::last_inner_action() const {
  if (!pending_ && last_action_.dim() == 0) throw std::logic_error("no action played yet");
  return last_action_;
}

SignedCubePoint SignedCubeLearner::play(RngStream& rng) {
  means_at_play_ = state_.means();
  last_action_ = feedback_ == Feedback::FullInformation
                     ? bernoulli_product_sample(means_at_play_, rng)
                     : mixed_sample(means_at_play_, gamma_, rng);
  pending_ = true;
  return to_signed(last_action_);
}

LossVector SignedCubeLearner::observe_full(const LossVector& loss) {
  if (feedback_ != Feedback::FullInformation) throw std::logic_error("learner is in bandit mode");
  if (loss.dim() != state_.dim()) throw std::invalid_argument("loss dimension mismatch");
  std::vector<double> doubled(loss.dim());
  for (std::size_t i = 0; i < loss.dim(); ++i) doubled[i] = 2.0 * loss[i];
  const LossVector fed = LossVector::estimate(doubled);
  state_.update(fed);
  pending_ = false;
  return fed;
}

LossVector SignedCubeLearner::observe_bandit(double observed) {
  if (feedback_ != Feedback::Bandit) throw std::logic_error("learner is in full-information mode");
  if (!pending_) throw std::logic_error("observe called before play");
  const MomentMatrix cube_moment = mixing_matrix(means_at_play_, gamma_);
  std::vector<double> mixed_mean(state_.dim());
  for (std::size_t i = 0; i < state_.dim(); ++i) {
    mixed_mean[i] = (1.0 - gamma_) * means_at_play_[i] + gamma_ * 0.5;
  }
  const MomentMatrix signed_moment = signed_second_moment(cube_moment, mixed_mean);

  const SignedCubePoint z = to_signed(last_action_);
  std::vector<double> direction(z.entries().begin(), z.entries().end());
  std::vector<double> u = spd_solve(signed_moment, direction);
  for (double& value : u) value *= observed;
  const LossVector signed_estimate = LossVector::estimate(std::move(u));

  std::vector<double> doubled(signed_estimate.dim());
  for (std::size_t i = 0; i < signed_estimate.dim(); ++i) doubled[i] = 2.0 * signed_estimate[i];
  state_.update(LossVector::estimate(std::move(doubled)));
  pending_ = false;
  return signed_estimate;
}

MomentMatrix signed_second_moment(const MomentMatrix& P, const std::vector<double>& mean) {
  if (mean.size() != P.dim()) throw std::invalid_argument("dimension mismatch");
  MomentMatrix m(P.dim());
  for (std::size_t i = 0; i < P.dim(); ++i) {
    for (std::size_t j = i; j < P.dim(); ++j) {
      m.set(i, j, 4.0 * P(i, j) - 2.0 * (mean[i] + mean[j]) + 1.0);
    }
  }
  return m;
}

}  // namespace polyexp
