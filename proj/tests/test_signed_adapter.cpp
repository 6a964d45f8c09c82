#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polyexp/core.hpp"
#include "polyexp/rng.hpp"
#include "polyexp/signed_adapter.hpp"

using namespace polyexp;

namespace {

std::vector<double> random_bounded(RngStream& rng, std::size_t n) {
  std::vector<double> values(n);
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  return values;
}

}  // namespace

TEST_CASE("signed learner plays 2X - 1 and feeds doubled losses") {
  RngStream rng(401);
  SignedCubeLearner learner(3, 0.5, Feedback::FullInformation);

  const SignedCubePoint z = learner.play(rng);
  CHECK(z == to_signed(learner.last_inner_action()));

  const std::vector<double> theta_before = learner.inner().theta();
  const LossVector fed = learner.observe_full(LossVector::bounded({0.0, 0.0, 0.0}));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(fed[i] == 0.0);
    CHECK(learner.inner().theta()[i] == theta_before[i]);  // zero loss leaves the state alone
  }

  learner.play(rng);
  const LossVector loss = LossVector::bounded({0.25, -1.0, 0.5});
  const LossVector fed2 = learner.observe_full(loss);
  for (std::size_t i = 0; i < 3; ++i) CHECK(fed2[i] == 2.0 * loss[i]);
}

TEST_CASE("signed-cube regret equals inner regret on doubled losses") {
  RngStream rng(402);
  for (std::size_t n = 1; n <= 6; ++n) {
    SignedCubeLearner learner(n, 0.3, Feedback::FullInformation);
    std::vector<double> totals(n, 0.0);
    CumulativeLoss doubled_totals(n);
    double signed_total = 0.0;
    double inner_total = 0.0;
    for (int t = 0; t < 20; ++t) {
      const SignedCubePoint z = learner.play(rng);
      const CubePoint x = learner.last_inner_action();
      const LossVector loss = LossVector::bounded(random_bounded(rng, n));
      for (std::size_t i = 0; i < n; ++i) {
        signed_total += loss[i] * z[i];
        totals[i] += loss[i];
      }
      std::vector<double> doubled(n);
      for (std::size_t i = 0; i < n; ++i) doubled[i] = 2.0 * loss[i];
      inner_total += linear_loss(x, LossVector::estimate(doubled));
      doubled_totals.add(LossVector::estimate(doubled));
      learner.observe_full(loss);
    }
    const double signed_regret = signed_total - signed_best_in_hindsight(totals).value;
    const double inner_regret = inner_total - best_in_hindsight(doubled_totals).value;
    CHECK(std::abs(signed_regret - inner_regret) <= 1e-10);
  }
}

TEST_CASE("signed second moment matches enumeration of the mixed law") {
  RngStream rng(403);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 5;
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(0.05, 0.95);
    const MeanVector x(values);
    const double gamma = rng.uniform(0.05, 0.95);

    const MomentMatrix cube_moment = mixing_matrix(x, gamma);
    std::vector<double> mixed_mean(n);
    for (std::size_t i = 0; i < n; ++i) mixed_mean[i] = (1.0 - gamma) * x[i] + gamma * 0.5;
    const MomentMatrix fast = signed_second_moment(cube_moment, mixed_mean);

    MomentMatrix slow(n);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      double mass = 1.0;
      for (std::size_t i = 0; i < n; ++i) mass *= ((k >> i) & 1ULL) ? x[i] : 1.0 - x[i];
      const double q = (1.0 - gamma) * mass + gamma / static_cast<double>(1ULL << n);
      const SignedCubePoint z = to_signed(cube_point_from_index(k, n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) slow.set(i, j, slow(i, j) + q * z[i] * z[j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(fast(i, j) - slow(i, j)) <= 1e-12);
    }
  }
}

TEST_CASE("signed bandit estimator is exactly unbiased by enumeration") {
  RngStream rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 4;
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(0.1, 0.9);
    const MeanVector x(values);
    const double gamma = rng.uniform(0.1, 0.9);
    const LossVector loss = LossVector::bounded(random_bounded(rng, n));

    const MomentMatrix cube_moment = mixing_matrix(x, gamma);
    std::vector<double> mixed_mean(n);
    for (std::size_t i = 0; i < n; ++i) mixed_mean[i] = (1.0 - gamma) * x[i] + gamma * 0.5;
    const MomentMatrix signed_moment = signed_second_moment(cube_moment, mixed_mean);

    std::vector<double> expectation(n, 0.0);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      double mass = 1.0;
      for (std::size_t i = 0; i < n; ++i) mass *= ((k >> i) & 1ULL) ? x[i] : 1.0 - x[i];
      const double q = (1.0 - gamma) * mass + gamma / static_cast<double>(1ULL << n);
      const SignedCubePoint z = to_signed(cube_point_from_index(k, n));
      double observed = 0.0;
      for (std::size_t i = 0; i < n; ++i) observed += z[i] * loss[i];
      std::vector<double> direction(z.entries().begin(), z.entries().end());
      const std::vector<double> u = spd_solve(signed_moment, direction);
      for (std::size_t i = 0; i < n; ++i) expectation[i] += q * observed * u[i];
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(expectation[i] - loss[i]) <= 1e-9);
  }
}

TEST_CASE("signed bandit rounds run end to end") {
  RngStream rng(405);
  SignedCubeLearner learner(4, 0.05, Feedback::Bandit, 0.3);
  for (int t = 0; t < 50; ++t) {
    const SignedCubePoint z = learner.play(rng);
    const LossVector loss = LossVector::bounded(random_bounded(rng, 4));
    double observed = 0.0;
    for (std::size_t i = 0; i < 4; ++i) observed += z[i] * loss[i];
    const LossVector estimate = learner.observe_bandit(observed);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::isfinite(estimate[i]));
  }
  CHECK_THROWS_AS(learner.observe_full(LossVector::bounded({0, 0, 0, 0})), std::logic_error);
}
