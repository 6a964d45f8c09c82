#include "polyexp/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace polyexp {

std::string to_string(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::Rademacher: return "rademacher";
    case AdversaryKind::GapStochastic: return "gap";
    case AdversaryKind::FixedSequence: return "fixed";
  }
  return "unknown";
}

LossVector rademacher_loss(std::size_t n, RngStream& rng) {
  std::vector<double> values(n);
  for (double& v : values) v = rng.rademacher();
  return LossVector::bounded(std::move(values));
}

double gap_plus_probability(std::uint8_t hidden_bit, double epsilon) {
  return hidden_bit != 0 ? 0.5 - epsilon : 0.5;
}

LossVector gap_loss(const CubePoint& hidden_vertex, double epsilon, RngStream& rng) {
  if (!(epsilon >= 0.0) || epsilon > 0.5) {
    throw std::invalid_argument("gap epsilon must lie in [0, 1/2]");
  }
  std::vector<double> values(hidden_vertex.dim());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = rng.bernoulli(gap_plus_probability(hidden_vertex[i], epsilon)) ? 1.0 : -1.0;
  }
  return LossVector::bounded(std::move(values));
}

double default_gap_epsilon(std::size_t n, std::size_t horizon) {
  if (n < 1 || horizon < 1) throw std::invalid_argument("n and T must be >= 1");
  const double maximizer = 0.25 * std::sqrt(static_cast<double>(n) / static_cast<double>(horizon));
  return std::min(maximizer, 0.5);
}

std::vector<LossVector> load_loss_rows(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sequence file: " + path);
  std::vector<LossVector> rows;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> values;
    values.reserve(n);
    std::stringstream fields(line);
    std::string field;
    std::size_t column = 0;
    while (std::getline(fields, field, ',')) {
      ++column;
      const std::string where =
          "sequence file " + path + ", row " + std::to_string(row) + ", column " +
          std::to_string(column);
      std::size_t consumed = 0;
      double value = 0.0;
      try {
        value = std::stod(field, &consumed);
      } catch (const std::exception&) {
        throw std::runtime_error(where + ": not a number: '" + field + "'");
      }
      while (consumed < field.size() && std::isspace(static_cast<unsigned char>(field[consumed]))) {
        ++consumed;
      }
      if (consumed != field.size()) {
        throw std::runtime_error(where + ": not a number: '" + field + "'");
      }
      if (!std::isfinite(value) || std::abs(value) > 1.0 + kLossBoundSlack) {
        throw std::runtime_error(where + ": value " + field + " outside [-1, 1]");
      }
      values.push_back(value);
    }
    if (values.size() != n) {
      throw std::runtime_error("sequence file " + path + ", row " + std::to_string(row) + ": has " +
                               std::to_string(values.size()) + " columns, expected " +
                               std::to_string(n));
    }
    rows.push_back(LossVector::bounded(std::move(values)));
  }
  return rows;
}

RademacherAdversary::RademacherAdversary(std::size_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
}

LossVector RademacherAdversary::next_loss(std::span<const CubePoint>, RngStream& rng) {
  return rademacher_loss(n_, rng);
}

GapAdversary::GapAdversary(CubePoint hidden_vertex, double epsilon)
    : hidden_(std::move(hidden_vertex)), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.5) {
    throw std::invalid_argument("gap epsilon must lie in (0, 1/2]");
  }
}

LossVector GapAdversary::next_loss(std::span<const CubePoint>, RngStream& rng) {
  return gap_loss(hidden_, epsilon_, rng);
}

FixedSequenceAdversary::FixedSequenceAdversary(std::vector<LossVector> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("fixed sequence must have at least one row");
}

std::size_t FixedSequenceAdversary::dim() const { return rows_.front().dim(); }

LossVector FixedSequenceAdversary::next_loss(std::span<const CubePoint>, RngStream&) {
  if (cursor_ >= rows_.size()) {
    throw std::out_of_range("fixed sequence exhausted after " + std::to_string(rows_.size()) +
                            " rounds");
  }
  return rows_[cursor_++];
}

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, std::size_t n,
                                          std::size_t horizon, RngStream& setup_rng) {
  switch (spec.kind) {
    case AdversaryKind::Rademacher:
      return std::make_unique<RademacherAdversary>(n);
    case AdversaryKind::GapStochastic: {
      const double epsilon = spec.epsilon.value_or(default_gap_epsilon(n, horizon));
      CubePoint hidden = spec.hidden_vertex.value_or(CubePoint());
      if (hidden.dim() == 0) {
        // One uniform draw per game.
        std::vector<std::uint8_t> bits(n);
        for (auto& b : bits) b = setup_rng.bernoulli(0.5) ? 1 : 0;
        hidden = CubePoint(std::move(bits));
      }
      if (hidden.dim() != n) throw std::invalid_argument("hidden vertex dimension mismatch");
      return std::make_unique<GapAdversary>(std::move(hidden), epsilon);
    }
    case AdversaryKind::FixedSequence: {
      auto rows = load_loss_rows(spec.sequence_path, n);
      if (rows.size() < horizon) {
        throw std::runtime_error("sequence file " + spec.sequence_path + " has " +
                                 std::to_string(rows.size()) + " rows, need " +
                                 std::to_string(horizon));
      }
      return std::make_unique<FixedSequenceAdversary>(std::move(rows));
    }
  }
  throw std::invalid_argument("unknown adversary kind");
}

}  // namespace polyexp
