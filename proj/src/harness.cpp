#include "polyexp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <stdexcept>
#include <thread>
#include <utility>

#include "polyexp/algorithms.hpp"
#include "polyexp/oracle.hpp"

namespace polyexp {
namespace {

constexpr double kLog2 = 0.6931471805599453;

/// What the game loop needs from a learner; hides PolyExp vs the exact
/// exponential-size reference.
class GameLearner {
 public:
  virtual ~GameLearner() = default;
  virtual CubePoint sample_full(RngStream& rng) const = 0;
  virtual CubePoint sample_mixed(double gamma, RngStream& rng) const = 0;
  virtual MomentMatrix mixed_second_moment(double gamma) const = 0;
  virtual void update(const LossVector& estimate) = 0;
  virtual MeanVector means() const = 0;
};

class PolyExpGameLearner final : public GameLearner {
 public:
  PolyExpGameLearner(std::size_t n, double eta) : state_(n, eta) {}

  CubePoint sample_full(RngStream& rng) const override {
    return bernoulli_product_sample(state_.means(), rng);
  }
  CubePoint sample_mixed(double gamma, RngStream& rng) const override {
    return mixed_sample(state_.means(), gamma, rng);
  }
  MomentMatrix mixed_second_moment(double gamma) const override {
    return mixing_matrix(state_.means(), gamma);
  }
  void update(const LossVector& estimate) override { state_.update(estimate); }
  MeanVector means() const override { return state_.means(); }

 private:
  PolyExpState state_;
};

class Exp2GameLearner final : public GameLearner {
 public:
  Exp2GameLearner(std::size_t n, double eta) : dist_(n, eta) {}

  CubePoint sample_full(RngStream& rng) const override { return dist_.sample(rng); }

  CubePoint sample_mixed(double gamma, RngStream& rng) const override {
    // Same branch draw as mixed_sample, but the exploit branch samples the
    // exact joint table instead of a Bernoulli product.
    if (rng.uniform01() < gamma) {
      return bernoulli_product_sample(MeanVector::half(dist_.dim()), rng);
    }
    return dist_.sample(rng);
  }

  MomentMatrix mixed_second_moment(double gamma) const override {
    const std::size_t n = dist_.dim();
    const std::vector<double> p = dist_.probabilities();
    MomentMatrix moment(n);
    for (std::uint64_t k = 0; k < p.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (((k >> i) & 1ULL) == 0) continue;
        for (std::size_t j = i; j < n; ++j) {
          if ((k >> j) & 1ULL) moment.set(i, j, moment(i, j) + p[k]);
        }
      }
    }
    const MomentMatrix uniform = second_moment_uniform(n);
    MomentMatrix mixed(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        mixed.set(i, j, (1.0 - gamma) * moment(i, j) + gamma * uniform(i, j));
      }
    }
    return mixed;
  }

  void update(const LossVector& estimate) override { dist_.update(estimate); }
  MeanVector means() const override { return dist_.marginals(); }

 private:
  Exp2Distribution dist_;
};

std::unique_ptr<GameLearner> make_game_learner(Algorithm algorithm, const GameConfig& config) {
  if (algorithm == Algorithm::PolyExp) {
    return std::make_unique<PolyExpGameLearner>(config.n, config.eta);
  }
  return std::make_unique<Exp2GameLearner>(config.n, config.eta);
}

void check_dimensions(const GameConfig& config, const Adversary& adversary) {
  if (adversary.dim() != config.n) {
    throw std::invalid_argument("adversary dimension " + std::to_string(adversary.dim()) +
                                " does not match game dimension " + std::to_string(config.n));
  }
}

}  // namespace

GameRecord play_full_information(const GameConfig& config, Algorithm learner,
                                 Adversary& adversary, RngStream& learner_rng,
                                 RngStream& adversary_rng) {
  config.validate();
  if (config.feedback != Feedback::FullInformation) {
    throw std::invalid_argument("config is not a full-information game");
  }
  check_dimensions(config, adversary);

  auto state = make_game_learner(learner, config);
  GameRecord record;
  record.config = config;
  record.actions.reserve(config.horizon);
  record.losses.reserve(config.horizon);
  record.estimates.reserve(config.horizon);
  record.incurred.reserve(config.horizon);

  for (std::size_t t = 0; t < config.horizon; ++t) {
    const LossVector loss =
        adversary.next_loss({record.actions.data(), record.actions.size()}, adversary_rng);
    const CubePoint action = state->sample_full(learner_rng);
    record.incurred.push_back(linear_loss(action, loss));
    if (estimate_magnitude_violations(config.eta, loss) > 0) ++record.violation_count;
    state->update(loss);
    record.actions.push_back(action);
    record.losses.push_back(loss);
    record.estimates.push_back(loss);
  }
  record.regret = realized_regret(record);
  return record;
}

GameRecord play_bandit(const GameConfig& config, Algorithm learner, Adversary& adversary,
                       RngStream& learner_rng, RngStream& adversary_rng) {
  config.validate();
  if (config.feedback != Feedback::Bandit) throw std::invalid_argument("config is not a bandit game");
  check_dimensions(config, adversary);

  auto state = make_game_learner(learner, config);
  GameRecord record;
  record.config = config;
  record.actions.reserve(config.horizon);
  record.losses.reserve(config.horizon);
  record.estimates.reserve(config.horizon);
  record.incurred.reserve(config.horizon);

  for (std::size_t t = 0; t < config.horizon; ++t) {
    const LossVector loss =
        adversary.next_loss({record.actions.data(), record.actions.size()}, adversary_rng);
    const MomentMatrix moment = state->mixed_second_moment(config.gamma);
    const CubePoint action = state->sample_mixed(config.gamma, learner_rng);
    const double observed = linear_loss(action, loss);
    // From here on the update path sees only (observed, action, moment).
    const LossVector estimate = estimate_loss(moment, action, observed);
    if (estimate_magnitude_violations(config.eta, estimate) > 0) ++record.violation_count;
    state->update(estimate);
    record.actions.push_back(action);
    record.losses.push_back(loss);
    record.estimates.push_back(estimate);
    record.incurred.push_back(observed);
  }
  record.regret = realized_regret(record);
  return record;
}

ExperimentResult monte_carlo_regret(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");

  GameConfig config = spec.config;
  if (spec.tuned) {
    const TunedParameters tuned =
        tuned_parameters(config.n, config.horizon, spec.learner, config.feedback);
    config.eta = tuned.eta;
    config.gamma = tuned.gamma;
  }
  config.validate();

  std::vector<double> regrets(spec.runs, 0.0);
  std::vector<std::uint64_t> violations(spec.runs, 0);

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t run = begin; run < end; ++run) {
      RngStream setup_rng = make_stream(config.seed, run, Substream::Setup);
      const auto adversary = make_adversary(spec.adversary, config.n, config.horizon, setup_rng);
      RngStream learner_rng = make_stream(config.seed, run, Substream::Learner);
      RngStream adversary_rng = make_stream(config.seed, run, Substream::Adversary);
      const GameRecord record =
          config.feedback == Feedback::FullInformation
              ? play_full_information(config, spec.learner, *adversary, learner_rng, adversary_rng)
              : play_bandit(config, spec.learner, *adversary, learner_rng, adversary_rng);
      regrets[run] = record.regret;
      violations[run] = record.violation_count;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(spec.threads, 1, spec.runs);
  if (workers == 1) {
    run_range(0, spec.runs);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (spec.runs + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(spec.runs, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& worker : pool) worker.join();
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  // Aggregation reads the per-run vector in index order, so the statistics
  // cannot depend on thread scheduling.
  ExperimentResult result;
  result.per_run_regret = std::move(regrets);
  double total = 0.0;
  for (double r : result.per_run_regret) total += r;
  result.mean_regret = total / static_cast<double>(spec.runs);
  if (spec.runs > 1) {
    double squares = 0.0;
    for (double r : result.per_run_regret) {
      const double d = r - result.mean_regret;
      squares += d * d;
    }
    const double variance = squares / static_cast<double>(spec.runs - 1);
    result.stderr_of_mean = std::sqrt(variance / static_cast<double>(spec.runs));
  }
  for (std::uint64_t v : violations) result.violation_count += v;
  result.bound = theoretical_bound(config.n, config.horizon, spec.learner, config.feedback);
  result.bound_satisfied = result.mean_regret <= result.bound;
  result.eta = config.eta;
  result.gamma = config.gamma;
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double theoretical_bound(std::size_t n, std::size_t horizon, Algorithm algorithm,
                         Feedback feedback) {
  if (n < 1 || horizon < 1) throw std::invalid_argument("n and T must be >= 1");
  const auto nd = static_cast<double>(n);
  const auto td = static_cast<double>(horizon);
  if (algorithm == Algorithm::PolyExp) {
    if (feedback == Feedback::FullInformation) return 2.0 * nd * std::sqrt(td * kLog2);
    return 4.0 * nd * std::sqrt(nd) * std::sqrt(6.0 * td * kLog2);
  }
  if (feedback == Feedback::FullInformation) return 2.0 * nd * std::sqrt(nd) * std::sqrt(td * kLog2);
  return 6.0 * nd * nd * std::sqrt(td * kLog2);
}

double lower_bound_reference(std::size_t n, std::size_t horizon, Feedback feedback) {
  if (n < 1 || horizon < 1) throw std::invalid_argument("n and T must be >= 1");
  if (feedback == Feedback::FullInformation) {
    return oracle::expected_max_linear_gain(n, horizon);
  }
  const auto nd = static_cast<double>(n);
  const auto td = static_cast<double>(horizon);
  const double epsilon = default_gap_epsilon(n, horizon);
  return epsilon * nd * td * (0.5 - epsilon * std::sqrt(td / nd));
}

DistributionDeviation max_exp2_polyexp_deviation(std::size_t n, std::size_t horizon,
                                                 std::size_t histories, double eta,
                                                 std::uint64_t seed, bool inject_fault) {
  DistributionDeviation deviation;
  for (std::size_t h = 0; h < histories; ++h) {
    RngStream rng = make_stream(seed, h, Substream::Adversary);
    PolyExpState state(n, eta);
    Exp2Distribution dist(n, eta);
    for (std::size_t t = 0; t < horizon; ++t) {
      std::vector<double> values(n);
      for (double& v : values) v = rng.uniform(-1.0, 1.0);
      const LossVector loss = LossVector::bounded(values);
      state.update(loss);
      dist.update(loss);
      if (inject_fault && h == 0 && t == horizon / 2) {
        std::vector<double> nudge(n, 0.0);
        nudge[0] = 1e-6 / eta;  // shifts theta_0 by exactly 1e-6
        state.update(LossVector::estimate(nudge));
      }

      const MeanVector x = state.means();
      const std::vector<double> p = dist.probabilities();
      std::vector<double> marginal(n, 0.0);
      for (std::uint64_t k = 0; k < p.size(); ++k) {
        double product = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          product *= ((k >> i) & 1ULL) ? x[i] : 1.0 - x[i];
          if ((k >> i) & 1ULL) marginal[i] += p[k];
        }
        deviation.joint = std::max(deviation.joint, std::abs(p[k] - product));
      }
      for (std::size_t i = 0; i < n; ++i) {
        deviation.marginal = std::max(deviation.marginal, std::abs(marginal[i] - x[i]));
      }
    }
  }
  return deviation;
}

double max_omd_step_deviation(std::size_t max_n, std::size_t trials, std::uint64_t seed) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  RngStream rng(derive_seed(seed, 0, 1001));
  double deviation = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = 1 + trial % max_n;
    std::vector<double> x(n);
    std::vector<double> estimate(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.uniform(1e-6, 1.0 - 1e-6);
      estimate[i] = rng.uniform(-5.0, 5.0);
    }
    const double eta = rng.uniform(0.01, 2.0);
    const MeanVector means(x);
    const LossVector loss = LossVector::estimate(estimate);
    const MeanVector via_mirror = omd_step(means, loss, eta);
    const MeanVector via_polyexp = polyexp_step(means, loss, eta);
    for (std::size_t i = 0; i < n; ++i) {
      deviation = std::max(deviation, std::abs(via_mirror[i] - via_polyexp[i]));
    }
  }
  return deviation;
}

double max_partition_identity_deviation(std::size_t n, std::size_t horizon,
                                        std::size_t histories, double eta, std::uint64_t seed) {
  double deviation = 0.0;
  for (std::size_t h = 0; h < histories; ++h) {
    RngStream rng = make_stream(seed, h, Substream::Adversary);
    std::vector<LossVector> history;
    history.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
      std::vector<double> values(n);
      for (double& v : values) v = rng.uniform(-1.0, 1.0);
      history.push_back(LossVector::bounded(values));
      const auto values_pair = oracle::log_partition_values(history, eta, n);
      deviation =
          std::max(deviation, std::abs(values_pair.product_form - values_pair.enumerated));
    }
  }
  return deviation;
}

}  // namespace polyexp
