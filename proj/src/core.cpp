#include "polyexp/core.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace polyexp {

std::string to_string(Feedback feedback) {
  return feedback == Feedback::FullInformation ? "full" : "bandit";
}

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::PolyExp ? "polyexp" : "exp2";
}

CubePoint::CubePoint(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) throw std::invalid_argument("CubePoint entries must be 0 or 1");
  }
}

CubePoint CubePoint::zeros(std::size_t n) {
  return CubePoint(std::vector<std::uint8_t>(n, 0));
}

CubePoint CubePoint::ones(std::size_t n) {
  return CubePoint(std::vector<std::uint8_t>(n, 1));
}

SignedCubePoint::SignedCubePoint(std::vector<std::int8_t> entries) : entries_(std::move(entries)) {
  for (std::int8_t e : entries_) {
    if (e != -1 && e != 1) throw std::invalid_argument("SignedCubePoint entries must be -1 or +1");
  }
}

LossVector::LossVector(std::vector<double> values, bool bounded)
    : values_(std::move(values)), bounded_(bounded) {}

LossVector LossVector::bounded(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kLossBoundSlack) {
      throw std::invalid_argument("bounded loss coordinate " + std::to_string(i) + " is " +
                                  std::to_string(v) + ", outside [-1, 1]");
    }
  }
  return LossVector(std::move(values), true);
}

LossVector LossVector::estimate(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("loss estimate must be finite");
  }
  return LossVector(std::move(values), false);
}

CumulativeLoss::CumulativeLoss(std::size_t n) : totals_(n, 0.0) {
  if (n == 0) throw std::invalid_argument("dimension must be >= 1");
}

void CumulativeLoss::add(const LossVector& loss) {
  if (loss.dim() != totals_.size()) throw std::invalid_argument("cumulative loss dimension mismatch");
  for (std::size_t i = 0; i < totals_.size(); ++i) totals_[i] += loss[i];
  ++rounds_seen_;
}

void GameConfig::validate() const {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon T must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("learning rate eta must be > 0");
  if (feedback == Feedback::FullInformation) {
    if (gamma != 0.0) throw std::invalid_argument("full information requires gamma = 0");
  } else {
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
      throw std::invalid_argument("bandit feedback requires gamma in (0, 1)");
    }
  }
}

bool GameRecord::complete() const {
  const std::size_t t = config.horizon;
  return actions.size() == t && losses.size() == t && estimates.size() == t &&
         incurred.size() == t;
}

double linear_loss(const CubePoint& action, const LossVector& loss) {
  if (action.dim() != loss.dim()) throw std::invalid_argument("linear_loss dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < action.dim(); ++i) {
    if (action[i] != 0) total += loss[i];
  }
  return total;
}

BestAction best_in_hindsight(const CumulativeLoss& cumulative) {
  const auto& totals = cumulative.totals();
  std::vector<std::uint8_t> bits(totals.size(), 0);
  double value = 0.0;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (totals[i] < 0.0) {
      bits[i] = 1;
      value += totals[i];
    }
  }
  return {CubePoint(std::move(bits)), value};
}

SignedBestAction signed_best_in_hindsight(const std::vector<double>& totals) {
  std::vector<std::int8_t> entries(totals.size(), -1);
  double value = 0.0;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (totals[i] < 0.0) entries[i] = 1;
    value -= std::abs(totals[i]);
  }
  return {SignedCubePoint(std::move(entries)), value};
}

double realized_regret(const GameRecord& record) {
  if (!record.complete()) throw std::invalid_argument("game record is incomplete");
  CumulativeLoss cumulative(record.config.n);
  double incurred_total = 0.0;
  for (std::size_t t = 0; t < record.config.horizon; ++t) {
    incurred_total += linear_loss(record.actions[t], record.losses[t]);
    cumulative.add(record.losses[t]);
  }
  return incurred_total - best_in_hindsight(cumulative).value;
}

SignedCubePoint to_signed(const CubePoint& point) {
  std::vector<std::int8_t> entries(point.dim());
  for (std::size_t i = 0; i < point.dim(); ++i) {
    entries[i] = static_cast<std::int8_t>(2 * point[i] - 1);
  }
  return SignedCubePoint(std::move(entries));
}

CubePoint from_signed(const SignedCubePoint& point) {
  std::vector<std::uint8_t> bits(point.dim());
  for (std::size_t i = 0; i < point.dim(); ++i) {
    bits[i] = static_cast<std::uint8_t>((point[i] + 1) / 2);
  }
  return CubePoint(std::move(bits));
}

CubePoint cube_point_from_index(std::uint64_t index, std::size_t n) {
  if (n > 63) throw std::invalid_argument("vertex indexing supports n <= 63");
  if (n < 63 && index >= (std::uint64_t{1} << n)) {
    throw std::invalid_argument("vertex index out of range");
  }
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((index >> i) & 1ULL);
  return CubePoint(std::move(bits));
}

std::uint64_t cube_index(const CubePoint& point) {
  if (point.dim() > 63) throw std::invalid_argument("vertex indexing supports n <= 63");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < point.dim(); ++i) {
    if (point[i] != 0) index |= (std::uint64_t{1} << i);
  }
  return index;
}

}  // namespace polyexp
