#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "core/distribution.hpp"

namespace respkit {

// Equal-variance Gaussian SDT model of the human and of the binary
// classification system. Noise evidence is distributed N(0, 1) and signal
// evidence N(d', 1); observed values are expressed in these standardized
// units. All functions are pure.

// Payoffs the human associates with each (action, true state) combination.
// FP/FN payoffs are normally negative; the invariants only require that the
// correct response strictly beats the wrong one given the true state.
struct PayoffMatrix {
  double v_tp = 0.0;
  double v_tn = 0.0;
  double v_fp = 0.0;
  double v_fn = 0.0;

  // Throws InvalidArgument unless v_tp > v_fn and v_tn > v_fp (all finite).
  void validate() const;
};

struct ConfusionRates {
  double p_tp = 0.0;
  double p_fn = 0.0;
  double p_fp = 0.0;
  double p_tn = 0.0;
};

enum class SystemOutput { kNoise = 0, kSignal = 1 };

SystemOutput system_output_from_string(std::string_view s);
const char* to_string(SystemOutput output);

// Environment + human + system parameters for one setting.
// system_beta empty means "optimal": the criterion that maximizes expected
// payoff at this prior and payoff matrix, resolved via optimal_beta().
struct Scenario {
  double prior_signal = 0.0;
  double d_prime_human = 0.0;
  double d_prime_system = 0.0;
  std::optional<double> system_beta;
  PayoffMatrix payoffs;
  double softmax_temperature = 1.0;

  void validate() const;
  double resolved_beta() const;

  // Strict JSON: required keys prior_signal, d_prime_human, d_prime_system,
  // system_beta (number or "optimal"), payoffs{v_tp, v_tn, v_fp, v_fn};
  // optional softmax_temperature. Unknown keys are rejected by name.
  static Scenario from_json(std::string_view text);
  static Scenario from_file(const std::string& path);
  std::string to_json(bool resolve_beta = false) const;
};

// Density of the observed value under the signal or noise hypothesis.
double gaussian_density(double e, bool is_signal, double d_prime);

// The expected-payoff-maximizing likelihood-ratio criterion
// ((1 - P_s) / P_s) * ((V_TN - V_FP) / (V_TP - V_FN)).
double optimal_beta(double prior_signal, const PayoffMatrix& payoffs);

// Evidence-axis criterion where the signal/noise likelihood ratio equals
// beta: x_c = ln(beta) / d' + d' / 2.
double beta_to_threshold(double beta, double d_prime);

// Confusion rates of a detector with sensitivity d_prime responding
// "signal" above `threshold` on the evidence axis.
ConfusionRates confusion_rates(double d_prime, double threshold);

// Rates of the scenario's classification system at its resolved criterion.
ConfusionRates system_rates(const Scenario& scenario);

// Binary Bayes update over (signal, noise) from per-state likelihoods.
// Throws DomainError when the total posterior mass is zero.
ProbDist bayes_signal_noise(double prior_signal, double like_signal,
                            double like_noise);

// Posterior over (signal, noise) using only the system's classification,
// only the human's observed value, or both combined (the two evidence
// sources are conditionally independent given the state).
ProbDist posterior_system_only(const Scenario& scenario, SystemOutput output);
ProbDist posterior_human_only(const Scenario& scenario, double observed);
ProbDist posterior_combined(const Scenario& scenario, SystemOutput output,
                            double observed);

}  // namespace respkit
