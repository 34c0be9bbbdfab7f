#include "core/distribution.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "core/errors.hpp"

namespace respkit {

ProbDist::ProbDist(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) {
    throw InvalidArgument("ProbDist: labels and probs must have equal length");
  }
  if (probs_.size() < 2) {
    throw InvalidArgument("ProbDist: at least 2 categories required");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw InvalidArgument("ProbDist: probabilities must lie in [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg << "ProbDist: probabilities sum to " << total
        << ", expected 1 within " << kMassTolerance;
    throw InvalidArgument(msg.str());
  }
}

ProbDist ProbDist::normalized(std::vector<std::string> labels,
                              std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidArgument("ProbDist: weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw InvalidArgument("ProbDist: total weight must be positive");
  }
  for (double& w : weights) w /= total;
  return ProbDist(std::move(labels), std::move(weights));
}

double ProbDist::prob(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return probs_[i];
  }
  throw InvalidArgument("ProbDist: unknown label \"" + std::string(label) +
                        "\"");
}

ProbDist make_signal_noise_dist(double p_signal) {
  return ProbDist({kSignalLabel, kNoiseLabel}, {p_signal, 1.0 - p_signal});
}

}  // namespace respkit
