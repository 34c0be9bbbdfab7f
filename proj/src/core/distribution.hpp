#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace respkit {

// Normalization slack accepted when validating a probability vector.
inline constexpr double kMassTolerance = 1e-9;

// A discrete probability distribution over named categories.
//
// Invariants (enforced at construction):
//   - at least 2 categories,
//   - every mass in [0, 1],
//   - masses sum to 1 within kMassTolerance.
//
// Values are immutable after construction; instances may be shared freely
// across threads.
class ProbDist {
 public:
  ProbDist(std::vector<std::string> labels, std::vector<double> probs);

  // Builds a distribution from nonnegative weights, rescaling them to unit
  // mass. This is the only place rescaling happens; the plain constructor
  // rejects unnormalized input instead of silently fixing it.
  static ProbDist normalized(std::vector<std::string> labels,
                             std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_.at(i); }
  // Mass of a named category; throws InvalidArgument for unknown labels.
  double prob(std::string_view label) const;

  bool same_labels(const ProbDist& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

// The canonical binary state distribution used by the SDT specialization.
ProbDist make_signal_noise_dist(double p_signal);

inline constexpr const char* kSignalLabel = "signal";
inline constexpr const char* kNoiseLabel = "noise";

}  // namespace respkit
