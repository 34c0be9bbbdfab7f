#pragma once

#include <cstdint>
#include <string>

#include "core/event_log.hpp"
#include "core/sdt.hpp"

namespace respkit {

enum class HumanPolicy {
  kMaximizeEv = 0,    // deterministic argmax of expected value
  kSoftmaxSample = 1  // sample the action from the SoftMax probabilities
};

HumanPolicy human_policy_from_string(std::string_view s);
const char* to_string(HumanPolicy policy);

struct SimConfig {
  Scenario scenario;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  HumanPolicy policy = HumanPolicy::kMaximizeEv;

  void validate() const;
  // Resolved configuration (numeric beta included), written as the
  // provenance sidecar next to simulated logs.
  std::string to_json() const;
};

// Seeded Monte-Carlo generation of interaction logs under the SDT model.
//
// Per trial, in this fixed draw order:
//   1. state ~ Bernoulli(prior_signal)            (one uniform)
//   2. system evidence ~ N(d'_system * state, 1); alert when the evidence
//      exceeds the system's criterion             (one normal)
//   3. observed value e ~ N(d'_human * state, 1), independent of the
//      system's evidence                          (one normal)
//   4. z = argmax expected value, or a SoftMax draw (one extra uniform)
//      under kSoftmaxSample; x_s = z (the human dictates implementation)
//
// RNG: std::mt19937_64 (single stream per run). Uniforms are
// (engine() >> 11 + 0.5) * 2^-53, in the open interval (0, 1); normals are
// normal_quantile(uniform), one draw per variate. Identical (config, seed)
// pairs reproduce identical logs.
EventLog simulate(const SimConfig& config);

void simulate_to_csv(const SimConfig& config, const std::string& csv_path,
                     const std::string& sidecar_path);

// Closed-form-free oracle for the average responsibility of a simulated
// log: P(z | alert, state) is obtained by adaptive Gauss-Kronrod
// integration of the decision rule against the observed-value density
// (absolute tolerance 1e-9 per cell), then H(Z | alert) / H(Z) is computed
// from the resulting joint probabilities. Throws DomainError with
// diagnostics when the quadrature cannot reach tolerance, and propagates
// the degenerate-outcome error when H(Z) = 0.
double analytic_resp_z(const Scenario& scenario, HumanPolicy policy);

// The integration building block, exposed for verification: probability
// that the human accepts, given the system output and the true state.
double accept_probability(const Scenario& scenario, SystemOutput output,
                          bool state_is_signal, HumanPolicy policy);

}  // namespace respkit
