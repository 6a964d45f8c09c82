#include <doctest.h>

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "polyexp/adversaries.hpp"
#include "polyexp/algorithms.hpp"
#include "polyexp/core.hpp"
#include "polyexp/oracle.hpp"
#include "polyexp/rng.hpp"

using namespace polyexp;

namespace {

constexpr double kLog2 = 0.6931471805599453;

std::vector<LossVector> random_history(RngStream& rng, std::size_t n, std::size_t rounds) {
  std::vector<LossVector> history;
  history.reserve(rounds);
  for (std::size_t t = 0; t < rounds; ++t) {
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(-1.0, 1.0);
    history.push_back(LossVector::bounded(values));
  }
  return history;
}

// Independent enumeration of E|Y_1 + ... + Y_T| over all 2^T sign vectors.
double enumerated_abs_sign_sum(std::size_t T) {
  std::uint64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << T); ++mask) {
    const std::int64_t sum =
        2 * static_cast<std::int64_t>(std::popcount(mask)) - static_cast<std::int64_t>(T);
    total += static_cast<std::uint64_t>(sum < 0 ? -sum : sum);
  }
  return std::ldexp(static_cast<double>(total), -static_cast<int>(T));
}

}  // namespace

TEST_CASE("cube enumeration") {
  const auto tiny = oracle::enumerate_cube(1);
  REQUIRE(tiny.size() == 2);
  CHECK(tiny[0] == CubePoint({0}));
  CHECK(tiny[1] == CubePoint({1}));

  const auto four = oracle::enumerate_cube(2);
  REQUIRE(four.size() == 4);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) CHECK(!(four[a] == four[b]));
  }

  CHECK(oracle::enumerate_cube(10).size() == 1024);
  CHECK_THROWS_AS(oracle::enumerate_cube(21), std::invalid_argument);
}

TEST_CASE("log-partition identity: product form vs enumeration") {
  const auto empty = oracle::log_partition_values({}, 0.5, 3);
  CHECK(empty.product_form == doctest::Approx(3.0 * kLog2).epsilon(1e-14));
  CHECK(empty.enumerated == doctest::Approx(3.0 * kLog2).epsilon(1e-14));

  const double c = 1.7;
  const double eta = 0.45;
  const std::vector<LossVector> single{LossVector::estimate({c})};
  const auto one = oracle::log_partition_values(single, eta, 1);
  CHECK(one.product_form == doctest::Approx(std::log(1.0 + std::exp(-eta * c))).epsilon(1e-14));
  CHECK(one.enumerated == doctest::Approx(one.product_form).epsilon(1e-14));

  RngStream rng(601);
  for (int trial = 0; trial < 20; ++trial) {
    const auto history = random_history(rng, 8, 30);
    const auto values = oracle::log_partition_values(history, 0.3, 8);
    CHECK(std::abs(values.product_form - values.enumerated) <= 1e-9);
  }

  CHECK_THROWS_AS(oracle::log_partition_values({}, 0.5, 13), std::invalid_argument);
}

TEST_CASE("exact exponential-weights marginals") {
  const MeanVector uniform = oracle::exp2_exact_marginals({}, 0.7, 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(uniform[i] == doctest::Approx(0.5).epsilon(1e-14));

  // A loss on coordinate 1 must leave coordinate 2's marginal untouched.
  const std::vector<LossVector> single{LossVector::bounded({0.6, 0.0})};
  const MeanVector factored = oracle::exp2_exact_marginals(single, 0.9, 2);
  CHECK(factored[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(factored[0] < 0.5);

  RngStream rng(602);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto history = random_history(rng, n, 25);
    const MeanVector exact = oracle::exp2_exact_marginals(history, 0.3, n);
    PolyExpState state(n, 0.3);
    for (const auto& loss : history) state.update(loss);
    const MeanVector means = state.means();
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(exact[i] - means[i]) <= 1e-9);
  }
}

TEST_CASE("exact distribution normalizes") {
  RngStream rng(603);
  const auto history = random_history(rng, 6, 12);
  const auto dist = oracle::exp2_exact_distribution(history, 0.4, 6);
  double total = 0.0;
  for (double p : dist.probabilities) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("exact estimator expectation") {
  const MeanVector x({0.5});
  const LossVector zero = LossVector::bounded({0.0});
  CHECK(oracle::exact_estimator_expectation(x, 0.2, zero)[0] == 0.0);

  const double c = 0.37;
  const LossVector hand = oracle::exact_estimator_expectation(x, 0.2, LossVector::bounded({c}));
  CHECK(hand[0] == doctest::Approx(c).epsilon(1e-12));

  RngStream rng(604);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 6;
    std::vector<double> means(n);
    for (double& v : means) v = rng.uniform(0.02, 0.98);
    std::vector<double> loss(n);
    for (double& v : loss) v = rng.uniform(-1.0, 1.0);
    const double gamma = rng.uniform(0.05, 0.95);
    const LossVector expectation =
        oracle::exact_estimator_expectation(MeanVector(means), gamma, LossVector::bounded(loss));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(expectation[i] - loss[i]) <= 1e-9);
  }

  CHECK_THROWS_AS(
      oracle::exact_estimator_expectation(MeanVector::half(9), 0.5,
                                          LossVector::estimate(std::vector<double>(9, 0.0))),
      std::invalid_argument);
}

TEST_CASE("expected absolute sign sum") {
  CHECK(oracle::expected_abs_rademacher_sum(2) == 1.0);    // (2/4) C(2,1) = 1
  CHECK(oracle::expected_abs_rademacher_sum(4) == 1.5);    // (4/16) C(4,2) = 1.5
  CHECK(oracle::expected_abs_rademacher_sum(1) == 1.0);    // odd, enumerated
  CHECK(oracle::expected_abs_rademacher_sum(3) == 1.5);    // odd, enumerated

  // The closed form is bit-exact against enumeration for small even T.
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(oracle::expected_abs_rademacher_sum(2 * k) == enumerated_abs_sign_sum(2 * k));
  }

  // Growth scan: value / sqrt(T) stays in [1/2, 1] all the way up.
  for (std::size_t T = 2; T <= 1000; T += 2) {
    const double ratio = oracle::expected_abs_rademacher_sum(T) / std::sqrt(static_cast<double>(T));
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 1.0);
  }

  // The integer path and the log-gamma path agree where they meet.
  const double exact_50 = oracle::expected_abs_rademacher_sum(50) / std::sqrt(50.0);
  const double lgamma_52 = oracle::expected_abs_rademacher_sum(52) / std::sqrt(52.0);
  CHECK(std::abs(exact_50 - lgamma_52) < 1e-3);

  CHECK_THROWS_AS(oracle::expected_abs_rademacher_sum(25), std::invalid_argument);
  CHECK_THROWS_AS(oracle::expected_abs_rademacher_sum(0), std::invalid_argument);
}

TEST_CASE("expected max linear gain") {
  CHECK(oracle::expected_max_linear_gain(1, 2) == 0.5);
  CHECK(oracle::expected_max_linear_gain(6, 4) == doctest::Approx(4.5));

  // Monte Carlo cross-check: mean of max_X sum_t l_t . X over Rademacher
  // games matches the exact value within 3 standard errors.
  const std::size_t n = 4;
  const std::size_t horizon = 8;
  const std::size_t games = 100000;
  RngStream rng(605);
  double mean = 0.0;
  double squares = 0.0;
  for (std::size_t g = 0; g < games; ++g) {
    CumulativeLoss totals(n);
    for (std::size_t t = 0; t < horizon; ++t) totals.add(rademacher_loss(n, rng));
    const double gain = -best_in_hindsight(totals).value;
    mean += gain;
    squares += gain * gain;
  }
  mean /= static_cast<double>(games);
  const double variance = squares / static_cast<double>(games) - mean * mean;
  const double stderr_of_mean = std::sqrt(variance / static_cast<double>(games));
  const double exact = oracle::expected_max_linear_gain(n, horizon);
  CHECK(std::abs(mean - exact) <= 3.0 * stderr_of_mean);
}
