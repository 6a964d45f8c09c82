#include "polyexp/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace polyexp {

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

MeanVector::MeanVector(std::vector<double> x) : x_(std::move(x)) {
  for (double v : x_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("mean coordinates must lie in [0, 1]");
  }
}

MeanVector MeanVector::half(std::size_t n) {
  return MeanVector(std::vector<double>(n, 0.5));
}

bool MeanVector::interior() const {
  return std::all_of(x_.begin(), x_.end(), [](double v) { return v > 0.0 && v < 1.0; });
}

PolyExpState::PolyExpState(std::size_t n, double eta) : theta_(n, 0.0), eta_(eta) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be > 0");
}

PolyExpState PolyExpState::from_means(const MeanVector& x, double eta) {
  if (!x.interior()) throw std::domain_error("means must be strictly inside (0, 1)");
  PolyExpState state(x.dim(), eta);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    state.theta_[i] = std::log1p(-x[i]) - std::log(x[i]);
  }
  return state;
}

MeanVector PolyExpState::means() const {
  std::vector<double> x(theta_.size());
  for (std::size_t i = 0; i < theta_.size(); ++i) x[i] = logistic(-theta_[i]);
  return MeanVector(std::move(x));
}

void PolyExpState::update(const LossVector& estimate) {
  if (estimate.dim() != theta_.size()) throw std::invalid_argument("estimate dimension mismatch");
  for (std::size_t i = 0; i < theta_.size(); ++i) theta_[i] += eta_ * estimate[i];
}

PolyExpState PolyExpState::updated(const LossVector& estimate) const {
  PolyExpState next = *this;
  next.update(estimate);
  return next;
}

MeanVector polyexp_step(const MeanVector& x, const LossVector& estimate, double eta) {
  if (estimate.dim() != x.dim()) throw std::invalid_argument("estimate dimension mismatch");
  if (!x.interior()) throw std::domain_error("polyexp_step requires interior means");
  std::vector<double> next(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    next[i] = x[i] / (x[i] + (1.0 - x[i]) * std::exp(eta * estimate[i]));
  }
  return MeanVector(std::move(next));
}

CubePoint bernoulli_product_sample(const MeanVector& x, RngStream& rng) {
  std::vector<std::uint8_t> bits(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) bits[i] = rng.bernoulli(x[i]) ? 1 : 0;
  return CubePoint(std::move(bits));
}

Exp2Distribution::Exp2Distribution(std::size_t n, double eta) : n_(n), eta_(eta) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (n > kMaxDim) {
    throw std::invalid_argument("Exp2 is a reference implementation only; refusing n = " +
                                std::to_string(n) + " > " + std::to_string(kMaxDim));
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be > 0");
  log_weights_.assign(std::size_t{1} << n, 0.0);
}

void Exp2Distribution::update(const LossVector& estimate) {
  if (estimate.dim() != n_) throw std::invalid_argument("estimate dimension mismatch");
  for (std::uint64_t k = 0; k < log_weights_.size(); ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if ((k >> i) & 1ULL) dot += estimate[i];
    }
    log_weights_[k] -= eta_ * dot;
  }
}

std::vector<double> Exp2Distribution::probabilities() const {
  const double shift = *std::max_element(log_weights_.begin(), log_weights_.end());
  std::vector<double> p(log_weights_.size());
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::exp(log_weights_[k] - shift);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

double Exp2Distribution::probability(std::uint64_t vertex_index) const {
  if (vertex_index >= log_weights_.size()) throw std::invalid_argument("vertex index out of range");
  return std::exp(log_weights_[vertex_index] - log_partition());
}

double Exp2Distribution::log_partition() const {
  const double shift = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (double lw : log_weights_) total += std::exp(lw - shift);
  return shift + std::log(total);
}

MeanVector Exp2Distribution::marginals() const {
  const std::vector<double> p = probabilities();
  std::vector<double> marg(n_, 0.0);
  for (std::uint64_t k = 0; k < p.size(); ++k) {
    for (std::size_t i = 0; i < n_; ++i) {
      if ((k >> i) & 1ULL) marg[i] += p[k];
    }
  }
  for (double& v : marg) v = std::min(v, 1.0);
  return MeanVector(std::move(marg));
}

CubePoint Exp2Distribution::sample(RngStream& rng) const {
  const std::vector<double> p = probabilities();
  const double u = rng.uniform01();
  double cdf = 0.0;
  for (std::uint64_t k = 0; k < p.size(); ++k) {
    cdf += p[k];
    if (u < cdf) return cube_point_from_index(k, n_);
  }
  return cube_point_from_index(p.size() - 1, n_);
}

Exp2Distribution exp2_distribution(std::span<const LossVector> history, double eta, std::size_t n) {
  Exp2Distribution dist(n, eta);
  for (const LossVector& estimate : history) dist.update(estimate);
  return dist;
}

double entropic_regularizer(const MeanVector& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double v = x[i];
    if (v > 0.0) total += v * std::log(v);
    if (v < 1.0) total += (1.0 - v) * std::log1p(-v);
  }
  return total;
}

std::vector<double> entropic_gradient(const MeanVector& x) {
  std::vector<double> grad(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double v = x[i];
    if (v <= 0.0 || v >= 1.0) {
      throw std::domain_error("entropic gradient undefined at boundary coordinate " +
                              std::to_string(i));
    }
    grad[i] = std::log(v) - std::log1p(-v);
  }
  return grad;
}

double entropic_conjugate(std::span<const double> theta) {
  double total = 0.0;
  for (double t : theta) total += softplus(t);
  return total;
}

MeanVector entropic_conjugate_gradient(std::span<const double> theta) {
  std::vector<double> x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) x[i] = logistic(theta[i]);
  return MeanVector(std::move(x));
}

MeanVector omd_step(const MeanVector& x, const LossVector& estimate, double eta) {
  if (estimate.dim() != x.dim()) throw std::invalid_argument("estimate dimension mismatch");
  std::vector<double> dual = entropic_gradient(x);
  for (std::size_t i = 0; i < dual.size(); ++i) dual[i] -= eta * estimate[i];
  return entropic_conjugate_gradient(dual);
}

double bregman_divergence(const MeanVector& x, const MeanVector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  const std::vector<double> grad_y = entropic_gradient(y);  // rejects boundary y
  double value = entropic_regularizer(x) - entropic_regularizer(y);
  for (std::size_t i = 0; i < x.dim(); ++i) value -= grad_y[i] * (x[i] - y[i]);
  return value;
}

}  // namespace polyexp
