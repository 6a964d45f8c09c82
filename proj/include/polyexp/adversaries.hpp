#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyexp/core.hpp"
#include "polyexp/rng.hpp"

namespace polyexp {

enum class AdversaryKind { Rademacher, GapStochastic, FixedSequence };

std::string to_string(AdversaryKind kind);

/// How to build a per-game opponent.
struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::Rademacher;
  /// GapStochastic only. Unset means default_gap_epsilon(n, T).
  std::optional<double> epsilon;
  /// GapStochastic only. Unset means one uniform draw per game.
  std::optional<CubePoint> hidden_vertex;
  /// FixedSequence only: CSV with T rows of n comma-separated values in [-1, 1].
  std::string sequence_path;
};

/// One game's opponent. next_loss is called once per round, in order, and
/// only ever sees the learner's past actions; round-t randomness of the
/// learner is invisible by construction.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::size_t dim() const = 0;
  virtual LossVector next_loss(std::span<const CubePoint> past_actions, RngStream& rng) = 0;
};

/// i.i.d. +-1 coordinates with probability 1/2 each.
LossVector rademacher_loss(std::size_t n, RngStream& rng);

/// Probability that a gap-adversary coordinate comes up +1:
/// 1/2 when the hidden bit is 0, 1/2 - epsilon when it is 1.
double gap_plus_probability(std::uint8_t hidden_bit, double epsilon);

/// Coordinates are +-1; coordinates of the hidden vertex are biased toward -1
/// by epsilon, so the hidden vertex is the best action in expectation.
LossVector gap_loss(const CubePoint& hidden_vertex, double epsilon, RngStream& rng);

/// min(sqrt(n / T) / 4, 1/2): maximizer of the regret floor
/// epsilon * n * T * (1/2 - epsilon * sqrt(T / n)), clipped to validity.
double default_gap_epsilon(std::size_t n, std::size_t horizon);

/// Parse a fixed-sequence CSV (no header, one round per row, n columns of
/// decimals in [-1, 1]). Parse and range errors report row and column.
std::vector<LossVector> load_loss_rows(const std::string& path, std::size_t n);

class RademacherAdversary final : public Adversary {
 public:
  explicit RademacherAdversary(std::size_t n);
  std::size_t dim() const override { return n_; }
  LossVector next_loss(std::span<const CubePoint> past_actions, RngStream& rng) override;

 private:
  std::size_t n_;
};

class GapAdversary final : public Adversary {
 public:
  GapAdversary(CubePoint hidden_vertex, double epsilon);
  std::size_t dim() const override { return hidden_.dim(); }
  const CubePoint& hidden_vertex() const { return hidden_; }
  double epsilon() const { return epsilon_; }
  LossVector next_loss(std::span<const CubePoint> past_actions, RngStream& rng) override;

 private:
  CubePoint hidden_;
  double epsilon_;
};

/// Replays a pre-recorded loss sequence; throws once the source is exhausted.
class FixedSequenceAdversary final : public Adversary {
 public:
  explicit FixedSequenceAdversary(std::vector<LossVector> rows);
  std::size_t dim() const override;
  LossVector next_loss(std::span<const CubePoint> past_actions, RngStream& rng) override;

 private:
  std::vector<LossVector> rows_;
  std::size_t cursor_ = 0;
};

/// Instantiate the per-game adversary. The setup stream covers one-time
/// randomness (the gap adversary's hidden vertex); per-round draws use the
/// stream passed to next_loss.
std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, std::size_t n,
                                          std::size_t horizon, RngStream& setup_rng);

}  // namespace polyexp
