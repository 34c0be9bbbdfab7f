#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/distribution.hpp"
#include "core/joint_table.hpp"
#include "core/sdt.hpp"

namespace respkit {

// The three retrospective responsibility measures:
//   - resp_average:     share of outcome uncertainty not explained by the
//                       system variables, over repeated interactions,
//   - resp_information: the human's unique share in forming the combined
//                       posterior in a single event,
//   - reasonability:    how defensible the chosen action was, as a SoftMax
//                       probability ratio against the best action.

// Named actions with their expected utilities. Order is preserved and used
// for all derived outputs.
struct ActionSet {
  std::vector<std::string> actions;
  std::vector<double> utilities;

  void validate() const;
  std::size_t index_of(std::string_view action) const;
};

// Result of an average-responsibility computation over a joint table.
struct RespAverage {
  double resp = 0.0;           // H(Z | conditions) / H(Z), in [0, 1]
  double h_outcome = 0.0;      // H(Z), bits
  double h_conditional = 0.0;  // H(Z | conditions), bits
};

// H(outcome | conditions) / H(outcome). 1 when the outcome is independent
// of the conditions, 0 when the conditions determine it. Throws
// DomainError("degenerate outcome distribution: Resp(Z) undefined") when
// the outcome marginal carries no uncertainty.
RespAverage resp_average(const JointTable& table);

// Distances below this are indistinguishable from round-off; when both
// distances in the information-share ratio fall under it the inputs are
// treated as coincident.
inline constexpr double kCoincidenceEps = 1e-12;

struct InformationShare {
  double d_to_system = 0.0;  // JS distance D(x_a, x_a_system_only)
  double d_to_human = 0.0;   // JS distance D(x_a, x_a_human_only)
  double resp = 0.0;         // d_to_system / (d_to_system + d_to_human)
  // Set when all three distributions coincide (both distances below
  // kCoincidenceEps); resp is then 0.5 by the equal-contribution convention.
  bool coincident = false;
};

// The single-event information measure. Reports the two distances alongside
// the ratio, since a small ratio with two near-zero distances reads very
// differently from a small ratio with large distances.
InformationShare resp_information(const ProbDist& x_a,
                                  const ProbDist& x_a_system_only,
                                  const ProbDist& x_a_human_only);

// SoftMax action probabilities exp(U/T) / sum exp(U'/T), computed with
// max-subtraction so large utilities cannot overflow. Aligned with
// action_set.actions.
std::vector<double> softmax_probs(const ActionSet& action_set,
                                  double temperature);

// p(chosen) / max p = exp((U(chosen) - U*) / T). Exactly 1 for every
// maximizer (ties included), and in (0, 1] everywhere.
double reasonability(const ActionSet& action_set, std::string_view chosen,
                     double temperature);

// Expected values of accepting and rejecting under a binary
// (signal, noise) posterior:
//   EV_accept = P_s * V_TP + (1 - P_s) * V_FP
//   EV_reject = P_s * V_FN + (1 - P_s) * V_TN
ActionSet expected_values(const ProbDist& x_a, const PayoffMatrix& payoffs);

// Everything computed for one event, in one bundle.
struct AnalysisReport {
  ProbDist x_a;
  ProbDist x_a_system_only;
  ProbDist x_a_human_only;
  double d_system = 0.0;
  double d_human = 0.0;
  double resp_information = 0.0;
  std::map<std::string, double> expected_values;
  std::map<std::string, double> softmax;
  std::map<std::string, double> reasonability;
  std::vector<std::string> flags;

  // Fixed-key JSON: x_a, x_a_system_only, x_a_human_only, d_system, d_human,
  // resp_information, expected_values, softmax, reasonability, flags.
  std::string to_json() const;
};

inline constexpr const char* kActionAccept = "accept";
inline constexpr const char* kActionReject = "reject";
inline constexpr const char* kFlagCoincident = "coincident_distributions";

// Runs the full single-event pipeline: the three posteriors, the two JS
// distances with their ratio, expected values, SoftMax probabilities and
// per-action reasonability. `chosen` must name a valid action; the report
// itself covers all actions, so the caller reads the chosen action's entry.
AnalysisReport analyze_event(const Scenario& scenario, SystemOutput output,
                             double observed, std::string_view chosen);

// Same pipeline without a chosen action (used by sweeps).
AnalysisReport analyze_event(const Scenario& scenario, SystemOutput output,
                             double observed);

}  // namespace respkit
