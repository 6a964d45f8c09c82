#include "polyexp/bandit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace polyexp {
namespace {

constexpr double kLog2 = 0.6931471805599453;

Eigen::Map<const Eigen::MatrixXd> as_eigen(const MomentMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  return {m.data().data(), n, n};
}

}  // namespace

MomentMatrix::MomentMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
}

void MomentMatrix::set(std::size_t i, std::size_t j, double value) {
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

MomentMatrix second_moment_product(const MeanVector& x) {
  MomentMatrix m(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    m.set(i, i, x[i]);
    for (std::size_t j = i + 1; j < x.dim(); ++j) m.set(i, j, x[i] * x[j]);
  }
  return m;
}

MomentMatrix second_moment_uniform(std::size_t n) {
  MomentMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, 0.5);
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, 0.25);
  }
  return m;
}

MomentMatrix mixing_matrix(const MeanVector& x, double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("mixing coefficient gamma must lie in (0, 1]");
  }
  MomentMatrix m = second_moment_product(x);
  const MomentMatrix uniform = second_moment_uniform(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = i; j < x.dim(); ++j) {
      m.set(i, j, (1.0 - gamma) * m(i, j) + gamma * uniform(i, j));
    }
  }
  return m;
}

std::vector<double> spd_solve(const MomentMatrix& P, std::span<const double> v) {
  if (v.size() != P.dim()) throw std::invalid_argument("spd_solve dimension mismatch");
  const Eigen::LLT<Eigen::MatrixXd> llt(as_eigen(P));
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("spd_solve: matrix is not positive definite (gamma misuse?)");
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(v.data(), static_cast<Eigen::Index>(v.size()));
  const Eigen::VectorXd u = llt.solve(rhs);
  return {u.data(), u.data() + u.size()};
}

double min_eigenvalue(const MomentMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(as_eigen(m),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
  return solver.eigenvalues().minCoeff();
}

CubePoint mixed_sample(const MeanVector& x, double gamma, RngStream& rng) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("mixing coefficient gamma must lie in (0, 1]");
  }
  if (rng.uniform01() < gamma) {
    return bernoulli_product_sample(MeanVector::half(x.dim()), rng);
  }
  return bernoulli_product_sample(x, rng);
}

LossVector estimate_loss(const MomentMatrix& P, const CubePoint& action, double observed) {
  if (action.dim() != P.dim()) throw std::invalid_argument("estimate_loss dimension mismatch");
  if (observed == 0.0) return LossVector::estimate(std::vector<double>(P.dim(), 0.0));
  std::vector<double> direction(action.bits().begin(), action.bits().end());
  std::vector<double> u = spd_solve(P, direction);
  for (double& value : u) value *= observed;
  return LossVector::estimate(std::move(u));
}

TunedParameters tuned_parameters(std::size_t n, std::size_t horizon, Algorithm algorithm,
                                 Feedback feedback) {
  if (n < 1 || horizon < 1) throw std::invalid_argument("n and T must be >= 1");
  const auto nd = static_cast<double>(n);
  const auto td = static_cast<double>(horizon);

  TunedParameters params;
  params.algorithm = algorithm;
  params.feedback = feedback;
  if (feedback == Feedback::FullInformation) {
    params.eta = algorithm == Algorithm::PolyExp ? std::sqrt(kLog2 / td)
                                                 : std::sqrt(kLog2 / (nd * td));
    params.gamma = 0.0;
    return params;
  }

  const auto bandit_gamma = [&](double t) {
    if (algorithm == Algorithm::PolyExp) return 4.0 * nd * std::sqrt(3.0 * kLog2 / (8.0 * nd * t));
    return 4.0 * nd * nd * std::sqrt(kLog2 / (9.0 * nd * nd * t));
  };
  params.eta = algorithm == Algorithm::PolyExp ? std::sqrt(3.0 * kLog2 / (8.0 * nd * td))
                                               : std::sqrt(kLog2 / (9.0 * nd * nd * td));
  params.gamma = algorithm == Algorithm::PolyExp ? 4.0 * nd * params.eta
                                                 : 4.0 * nd * nd * params.eta;
  if (params.gamma >= 1.0) {
    // gamma scales as 1/sqrt(T); find the smallest horizon with gamma < 1.
    const double boundary = algorithm == Algorithm::PolyExp ? 6.0 * nd * kLog2
                                                            : 16.0 * nd * nd * kLog2 / 9.0;
    auto minimal = static_cast<std::size_t>(std::floor(boundary)) + 1;
    while (bandit_gamma(static_cast<double>(minimal)) >= 1.0) ++minimal;
    while (minimal > 1 && bandit_gamma(static_cast<double>(minimal - 1)) < 1.0) --minimal;
    throw std::invalid_argument(
        "horizon too short for bandit tuning: gamma = " + std::to_string(params.gamma) +
        " >= 1; smallest workable T for n = " + std::to_string(n) + " is " +
        std::to_string(minimal));
  }
  return params;
}

std::size_t estimate_magnitude_violations(double eta, const LossVector& estimate) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < estimate.dim(); ++i) {
    if (std::abs(eta * estimate[i]) > 1.0) ++count;
  }
  return count;
}

}  // namespace polyexp
