#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace polyexp {

enum class Feedback { FullInformation, Bandit };
enum class Algorithm { PolyExp, Exp2Reference };

std::string to_string(Feedback feedback);
std::string to_string(Algorithm algorithm);

/// Slack accepted on the |l_i| <= 1 bounded-loss contract before a value is
/// rejected. Out-of-range values are errors, never clipped: clipping would
/// corrupt the regret accounting downstream.
inline constexpr double kLossBoundSlack = 1e-12;

/// A vertex of {0,1}^n: the action played in one round.
class CubePoint {
 public:
  CubePoint() = default;
  explicit CubePoint(std::vector<std::uint8_t> bits);
  static CubePoint zeros(std::size_t n);
  static CubePoint ones(std::size_t n);

  std::size_t dim() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const CubePoint&, const CubePoint&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// A vertex of {-1,+1}^n, the signed-cube action Z = 2X - 1.
class SignedCubePoint {
 public:
  SignedCubePoint() = default;
  explicit SignedCubePoint(std::vector<std::int8_t> entries);

  std::size_t dim() const { return entries_.size(); }
  std::int8_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::int8_t>& entries() const { return entries_; }

  friend bool operator==(const SignedCubePoint&, const SignedCubePoint&) = default;

 private:
  std::vector<std::int8_t> entries_;
};

/// A per-round loss vector. `bounded` vectors carry the L-infinity <= 1
/// contract (true adversary losses); `estimate` vectors are unconstrained
/// (bandit loss estimates can be large).
class LossVector {
 public:
  LossVector() = default;
  static LossVector bounded(std::vector<double> values);
  static LossVector estimate(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  bool is_bounded() const { return bounded_; }

  friend bool operator==(const LossVector&, const LossVector&) = default;

 private:
  LossVector(std::vector<double> values, bool bounded);

  std::vector<double> values_;
  bool bounded_ = false;
};

/// Coordinate-wise running sum of loss vectors.
class CumulativeLoss {
 public:
  explicit CumulativeLoss(std::size_t n);

  void add(const LossVector& loss);
  std::size_t dim() const { return totals_.size(); }
  const std::vector<double>& totals() const { return totals_; }
  std::size_t rounds_seen() const { return rounds_seen_; }

 private:
  std::vector<double> totals_;
  std::size_t rounds_seen_ = 0;
};

/// Parameters of one learner-vs-adversary game.
struct GameConfig {
  std::size_t n = 1;
  std::size_t horizon = 1;  // T
  double eta = 1.0;
  double gamma = 0.0;  // exploration mass; must be 0 in full information
  Feedback feedback = Feedback::FullInformation;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Full trajectory of one game: everything needed to audit the regret.
struct GameRecord {
  GameConfig config;
  std::vector<CubePoint> actions;
  std::vector<LossVector> losses;     // true adversary losses
  std::vector<LossVector> estimates;  // what the learner was fed
  std::vector<double> incurred;       // actions[t] . losses[t]
  double regret = 0.0;
  std::size_t violation_count = 0;  // rounds with some |eta * estimate_i| > 1

  bool complete() const;
};

/// X . l. Throws on dimension mismatch.
double linear_loss(const CubePoint& action, const LossVector& loss);

struct BestAction {
  CubePoint action;
  double value = 0.0;
};

/// Best fixed vertex in hindsight. The objective is coordinate-separable on
/// the full cube, so the minimum over 2^n vertices is taken coordinate-wise:
/// X*_i = 1 iff totals_i < 0 (ties resolve to 0), value = sum_i min(0, totals_i).
BestAction best_in_hindsight(const CumulativeLoss& cumulative);

struct SignedBestAction {
  SignedCubePoint action;
  double value = 0.0;
};

/// Same minimization over {-1,+1}^n: Z*_i = -sign(totals_i), value = -sum_i |totals_i|.
/// Ties at 0 resolve to -1, matching the {0,1} tie-break under Z = 2X - 1.
SignedBestAction signed_best_in_hindsight(const std::vector<double>& totals);

/// Total incurred loss minus the best fixed vertex on the TRUE losses.
/// Throws if the record is incomplete.
double realized_regret(const GameRecord& record);

SignedCubePoint to_signed(const CubePoint& point);  // Z = 2X - 1
CubePoint from_signed(const SignedCubePoint& point);

/// Vertex indexing shared by all exhaustive code: coordinate i of the vertex
/// with index k is bit i of k.
CubePoint cube_point_from_index(std::uint64_t index, std::size_t n);
std::uint64_t cube_index(const CubePoint& point);

}  // namespace polyexp
