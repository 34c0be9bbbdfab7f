#include "core/responsibility.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/info_metrics.hpp"

namespace respkit {

namespace {

using json = nlohmann::ordered_json;

json dist_to_json(const ProbDist& d) {
  json obj;
  for (std::size_t i = 0; i < d.size(); ++i) {
    obj[d.labels()[i]] = d.probs()[i];
  }
  return obj;
}

json map_to_json(const std::map<std::string, double>& m) {
  json obj;
  for (const auto& [k, v] : m) obj[k] = v;
  return obj;
}

}  // namespace

void ActionSet::validate() const {
  if (actions.size() != utilities.size()) {
    throw InvalidArgument("ActionSet: actions and utilities must align");
  }
  if (actions.size() < 2) {
    throw InvalidArgument("ActionSet: at least 2 actions required");
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!std::isfinite(utilities[i])) {
      throw InvalidArgument("ActionSet: utility of \"" + actions[i] +
                            "\" must be finite");
    }
    for (std::size_t j = i + 1; j < actions.size(); ++j) {
      if (actions[i] == actions[j]) {
        throw InvalidArgument("ActionSet: duplicate action \"" + actions[i] +
                              "\"");
      }
    }
  }
}

std::size_t ActionSet::index_of(std::string_view action) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] == action) return i;
  }
  throw InvalidArgument("unknown action \"" + std::string(action) + "\"");
}

RespAverage resp_average(const JointTable& table) {
  RespAverage out;
  out.h_outcome = outcome_entropy(table);
  if (out.h_outcome == 0.0) {
    throw DomainError("degenerate outcome distribution: Resp(Z) undefined");
  }
  out.h_conditional = conditional_entropy(table);
  out.resp = std::clamp(out.h_conditional / out.h_outcome, 0.0, 1.0);
  return out;
}

InformationShare resp_information(const ProbDist& x_a,
                                  const ProbDist& x_a_system_only,
                                  const ProbDist& x_a_human_only) {
  InformationShare share;
  share.d_to_system = js_distance(x_a, x_a_system_only);
  share.d_to_human = js_distance(x_a, x_a_human_only);
  if (share.d_to_system <= kCoincidenceEps &&
      share.d_to_human <= kCoincidenceEps) {
    share.resp = 0.5;
    share.coincident = true;
    return share;
  }
  share.resp = share.d_to_system / (share.d_to_system + share.d_to_human);
  return share;
}

std::vector<double> softmax_probs(const ActionSet& action_set,
                                  double temperature) {
  action_set.validate();
  if (!(std::isfinite(temperature) && temperature > 0.0)) {
    throw InvalidArgument("softmax: temperature must be > 0");
  }
  double u_max =
      *std::max_element(action_set.utilities.begin(),
                        action_set.utilities.end());
  std::vector<double> probs(action_set.utilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::exp((action_set.utilities[i] - u_max) / temperature);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

double reasonability(const ActionSet& action_set, std::string_view chosen,
                     double temperature) {
  action_set.validate();
  if (!(std::isfinite(temperature) && temperature > 0.0)) {
    throw InvalidArgument("reasonability: temperature must be > 0");
  }
  std::size_t idx = action_set.index_of(chosen);
  double u_max =
      *std::max_element(action_set.utilities.begin(),
                        action_set.utilities.end());
  // exp((U - U*) / T) is the SoftMax ratio p(chosen) / p*; maximizers give
  // exp(0) = 1 exactly, ties included.
  return std::exp((action_set.utilities[idx] - u_max) / temperature);
}

ActionSet expected_values(const ProbDist& x_a, const PayoffMatrix& payoffs) {
  payoffs.validate();
  if (x_a.size() != 2 || x_a.labels()[0] != kSignalLabel ||
      x_a.labels()[1] != kNoiseLabel) {
    throw InvalidArgument(
        "expected_values: posterior must be over (signal, noise)");
  }
  double p_signal = x_a.prob(0);
  double p_noise = x_a.prob(1);
  ActionSet ev;
  ev.actions = {kActionAccept, kActionReject};
  ev.utilities = {p_signal * payoffs.v_tp + p_noise * payoffs.v_fp,
                  p_signal * payoffs.v_fn + p_noise * payoffs.v_tn};
  return ev;
}

std::string AnalysisReport::to_json() const {
  json root;
  root["x_a"] = dist_to_json(x_a);
  root["x_a_system_only"] = dist_to_json(x_a_system_only);
  root["x_a_human_only"] = dist_to_json(x_a_human_only);
  root["d_system"] = d_system;
  root["d_human"] = d_human;
  root["resp_information"] = resp_information;
  root["expected_values"] = map_to_json(expected_values);
  root["softmax"] = map_to_json(softmax);
  root["reasonability"] = map_to_json(reasonability);
  root["flags"] = flags;
  return root.dump();
}

AnalysisReport analyze_event(const Scenario& scenario, SystemOutput output,
                             double observed) {
  scenario.validate();

  ProbDist x_a = posterior_combined(scenario, output, observed);
  ProbDist x_a_system = posterior_system_only(scenario, output);
  ProbDist x_a_human = posterior_human_only(scenario, observed);

  InformationShare share = resp_information(x_a, x_a_system, x_a_human);
  ActionSet ev = expected_values(x_a, scenario.payoffs);
  std::vector<double> probs = softmax_probs(ev, scenario.softmax_temperature);

  AnalysisReport report{std::move(x_a),
                        std::move(x_a_system),
                        std::move(x_a_human),
                        share.d_to_system,
                        share.d_to_human,
                        share.resp,
                        {},
                        {},
                        {},
                        {}};
  for (std::size_t i = 0; i < ev.actions.size(); ++i) {
    report.expected_values[ev.actions[i]] = ev.utilities[i];
    report.softmax[ev.actions[i]] = probs[i];
    report.reasonability[ev.actions[i]] =
        reasonability(ev, ev.actions[i], scenario.softmax_temperature);
  }
  if (share.coincident) {
    report.flags.push_back(kFlagCoincident);
  }
  return report;
}

AnalysisReport analyze_event(const Scenario& scenario, SystemOutput output,
                             double observed, std::string_view chosen) {
  if (chosen != kActionAccept && chosen != kActionReject) {
    throw InvalidArgument("unknown action \"" + std::string(chosen) +
                          "\": expected \"accept\" or \"reject\"");
  }
  return analyze_event(scenario, output, observed);
}

}  // namespace respkit
