#include "respkit/respkit.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/distribution.hpp"
#include "core/errors.hpp"
#include "core/event_log.hpp"
#include "core/info_metrics.hpp"
#include "core/joint_table.hpp"
#include "core/responsibility.hpp"
#include "core/sdt.hpp"
#include "core/simulator.hpp"
#include "core/sweep.hpp"

struct respkit_scenario {
  respkit::Scenario scenario;
};

struct respkit_report {
  respkit::AnalysisReport report;
};

struct respkit_log {
  respkit::EventLog log;
};

namespace {

thread_local std::string g_last_error;

respkit_status fail(respkit_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating core exceptions into status codes.
template <typename F>
respkit_status guarded(F&& body) {
  try {
    return body();
  } catch (const respkit::InvalidArgument& e) {
    return fail(RESPKIT_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const respkit::DomainError& e) {
    return fail(RESPKIT_ERROR_DOMAIN, e.what());
  } catch (const respkit::ParseError& e) {
    return fail(RESPKIT_ERROR_PARSE, e.what());
  } catch (const respkit::IoError& e) {
    return fail(RESPKIT_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(RESPKIT_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(RESPKIT_ERROR_INTERNAL, "unknown error");
  }
}

respkit_status require(bool ok, const char* message) {
  return ok ? RESPKIT_OK : fail(RESPKIT_ERROR_INVALID_ARGUMENT, message);
}

// Unnamed labels for raw probability vectors coming through the C API.
respkit::ProbDist dist_from_array(const double* probs, size_t n) {
  std::vector<std::string> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
  return respkit::ProbDist(labels, std::vector<double>(probs, probs + n));
}

respkit::SystemOutput output_from_int(int system_output) {
  if (system_output != RESPKIT_OUTPUT_NOISE &&
      system_output != RESPKIT_OUTPUT_SIGNAL) {
    throw respkit::InvalidArgument(
        "system_output must be RESPKIT_OUTPUT_NOISE or "
        "RESPKIT_OUTPUT_SIGNAL");
  }
  return system_output == RESPKIT_OUTPUT_SIGNAL
             ? respkit::SystemOutput::kSignal
             : respkit::SystemOutput::kNoise;
}

respkit::HumanPolicy policy_from_int(int policy) {
  if (policy != RESPKIT_POLICY_MAXIMIZE_EV &&
      policy != RESPKIT_POLICY_SOFTMAX_SAMPLE) {
    throw respkit::InvalidArgument(
        "policy must be RESPKIT_POLICY_MAXIMIZE_EV or "
        "RESPKIT_POLICY_SOFTMAX_SAMPLE");
  }
  return policy == RESPKIT_POLICY_MAXIMIZE_EV
             ? respkit::HumanPolicy::kMaximizeEv
             : respkit::HumanPolicy::kSoftmaxSample;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

respkit::SweepSpec spec_from_c(const respkit_sweep_spec* spec) {
  respkit::SweepSpec out;
  out.d_human = {spec->d_human_min, spec->d_human_max, spec->d_human_steps};
  out.d_system = {spec->d_system_min, spec->d_system_max,
                  spec->d_system_steps};
  if (spec->e_values == nullptr || spec->n_e_values == 0) {
    throw respkit::InvalidArgument("sweep spec: e_values must be provided");
  }
  out.e_values.assign(spec->e_values, spec->e_values + spec->n_e_values);
  out.system_output = output_from_int(spec->system_output);
  return out;
}

}  // namespace

extern "C" {

const double RESPKIT_SWEEP_DEFAULT_E_VALUES[5] = {-1.5, 0.0, 1.5, 3.0, 4.5};

const char* respkit_version(void) { return "0.1.0"; }

const char* respkit_status_name(respkit_status status) {
  switch (status) {
    case RESPKIT_OK:
      return "ok";
    case RESPKIT_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case RESPKIT_ERROR_DOMAIN:
      return "domain error";
    case RESPKIT_ERROR_PARSE:
      return "parse error";
    case RESPKIT_ERROR_IO:
      return "io error";
    case RESPKIT_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* respkit_last_error(void) { return g_last_error.c_str(); }

void respkit_string_free(char* s) { delete[] s; }

/* ----------------------------- metrics -------------------------------- */

respkit_status respkit_entropy(const double* probs, size_t n, double* out) {
  if (auto s = require(probs && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::entropy(dist_from_array(probs, n));
    return RESPKIT_OK;
  });
}

respkit_status respkit_kl_divergence(const double* p, const double* q,
                                     size_t n, double* out) {
  if (auto s = require(p && q && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::kl_divergence(dist_from_array(p, n),
                                  dist_from_array(q, n));
    return RESPKIT_OK;
  });
}

respkit_status respkit_js_divergence(const double* p, const double* q,
                                     size_t n, double* out) {
  if (auto s = require(p && q && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::js_divergence(dist_from_array(p, n),
                                  dist_from_array(q, n));
    return RESPKIT_OK;
  });
}

respkit_status respkit_js_distance(const double* p, const double* q, size_t n,
                                   double* out) {
  if (auto s = require(p && q && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::js_distance(dist_from_array(p, n), dist_from_array(q, n));
    return RESPKIT_OK;
  });
}

/* ------------------------------- SDT ---------------------------------- */

respkit_status respkit_optimal_beta(double prior_signal, double v_tp,
                                    double v_tn, double v_fp, double v_fn,
                                    double* out) {
  if (auto s = require(out != nullptr, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::optimal_beta(prior_signal,
                                 respkit::PayoffMatrix{v_tp, v_tn, v_fp, v_fn});
    return RESPKIT_OK;
  });
}

respkit_status respkit_beta_to_threshold(double beta, double d_prime,
                                         double* out) {
  if (auto s = require(out != nullptr, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::beta_to_threshold(beta, d_prime);
    return RESPKIT_OK;
  });
}

respkit_status respkit_confusion_rates(double d_prime, double threshold,
                                       double out_rates[4]) {
  if (auto s = require(out_rates != nullptr, "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    respkit::ConfusionRates r = respkit::confusion_rates(d_prime, threshold);
    out_rates[0] = r.p_tp;
    out_rates[1] = r.p_fn;
    out_rates[2] = r.p_fp;
    out_rates[3] = r.p_tn;
    return RESPKIT_OK;
  });
}

/* ----------------------------- scenario ------------------------------- */

respkit_status respkit_scenario_from_json(const char* json_text,
                                          respkit_scenario** out) {
  if (auto s = require(json_text && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = new respkit_scenario{respkit::Scenario::from_json(json_text)};
    return RESPKIT_OK;
  });
}

respkit_status respkit_scenario_from_file(const char* path,
                                          respkit_scenario** out) {
  if (auto s = require(path && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = new respkit_scenario{respkit::Scenario::from_file(path)};
    return RESPKIT_OK;
  });
}

void respkit_scenario_free(respkit_scenario* scenario) { delete scenario; }

respkit_status respkit_scenario_resolved_beta(
    const respkit_scenario* scenario, double* out) {
  if (auto s = require(scenario && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = scenario->scenario.resolved_beta();
    return RESPKIT_OK;
  });
}

respkit_status respkit_posteriors(const respkit_scenario* scenario,
                                  int system_output, double observed,
                                  double out_system[2], double out_human[2],
                                  double out_combined[2]) {
  if (auto s = require(scenario != nullptr, "null pointer argument")) return s;
  return guarded([&] {
    respkit::SystemOutput output = output_from_int(system_output);
    if (out_system) {
      respkit::ProbDist d =
          respkit::posterior_system_only(scenario->scenario, output);
      out_system[0] = d.prob(0);
      out_system[1] = d.prob(1);
    }
    if (out_human) {
      respkit::ProbDist d =
          respkit::posterior_human_only(scenario->scenario, observed);
      out_human[0] = d.prob(0);
      out_human[1] = d.prob(1);
    }
    if (out_combined) {
      respkit::ProbDist d =
          respkit::posterior_combined(scenario->scenario, output, observed);
      out_combined[0] = d.prob(0);
      out_combined[1] = d.prob(1);
    }
    return RESPKIT_OK;
  });
}

/* ------------------------- single-event measures ----------------------- */

respkit_status respkit_resp_information(const double* x_a,
                                        const double* x_a_system,
                                        const double* x_a_human, size_t n,
                                        double* out_resp, double* out_d_system,
                                        double* out_d_human,
                                        int* out_coincident) {
  if (auto s = require(x_a && x_a_system && x_a_human && out_resp,
                       "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    respkit::InformationShare share = respkit::resp_information(
        dist_from_array(x_a, n), dist_from_array(x_a_system, n),
        dist_from_array(x_a_human, n));
    *out_resp = share.resp;
    if (out_d_system) *out_d_system = share.d_to_system;
    if (out_d_human) *out_d_human = share.d_to_human;
    if (out_coincident) *out_coincident = share.coincident ? 1 : 0;
    return RESPKIT_OK;
  });
}

respkit_status respkit_softmax(const double* utilities, size_t n,
                               double temperature, double* out_probs) {
  if (auto s = require(utilities && out_probs, "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    respkit::ActionSet actions;
    for (size_t i = 0; i < n; ++i) {
      actions.actions.push_back("a" + std::to_string(i));
      actions.utilities.push_back(utilities[i]);
    }
    std::vector<double> probs = respkit::softmax_probs(actions, temperature);
    for (size_t i = 0; i < n; ++i) out_probs[i] = probs[i];
    return RESPKIT_OK;
  });
}

respkit_status respkit_reasonability(const double* utilities, size_t n,
                                     size_t chosen, double temperature,
                                     double* out) {
  if (auto s = require(utilities && out, "null pointer argument")) return s;
  return guarded([&] {
    if (chosen >= n) {
      throw respkit::InvalidArgument("chosen action index out of range");
    }
    respkit::ActionSet actions;
    for (size_t i = 0; i < n; ++i) {
      actions.actions.push_back("a" + std::to_string(i));
      actions.utilities.push_back(utilities[i]);
    }
    *out = respkit::reasonability(actions, actions.actions[chosen],
                                  temperature);
    return RESPKIT_OK;
  });
}

respkit_status respkit_analyze_event(const respkit_scenario* scenario,
                                     int system_output, double observed,
                                     const char* chosen_action,
                                     respkit_report** out) {
  if (auto s = require(scenario && chosen_action && out,
                       "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    *out = new respkit_report{
        respkit::analyze_event(scenario->scenario,
                               output_from_int(system_output), observed,
                               chosen_action)};
    return RESPKIT_OK;
  });
}

void respkit_report_free(respkit_report* report) { delete report; }

respkit_status respkit_report_get(const respkit_report* report,
                                  respkit_report_values* out) {
  if (auto s = require(report && out, "null pointer argument")) return s;
  return guarded([&] {
    const respkit::AnalysisReport& r = report->report;
    out->x_a[0] = r.x_a.prob(0);
    out->x_a[1] = r.x_a.prob(1);
    out->x_a_system[0] = r.x_a_system_only.prob(0);
    out->x_a_system[1] = r.x_a_system_only.prob(1);
    out->x_a_human[0] = r.x_a_human_only.prob(0);
    out->x_a_human[1] = r.x_a_human_only.prob(1);
    out->d_system = r.d_system;
    out->d_human = r.d_human;
    out->resp_information = r.resp_information;
    out->ev_accept = r.expected_values.at(respkit::kActionAccept);
    out->ev_reject = r.expected_values.at(respkit::kActionReject);
    out->softmax_accept = r.softmax.at(respkit::kActionAccept);
    out->softmax_reject = r.softmax.at(respkit::kActionReject);
    out->rsnble_accept = r.reasonability.at(respkit::kActionAccept);
    out->rsnble_reject = r.reasonability.at(respkit::kActionReject);
    out->flags = 0;
    for (const std::string& flag : r.flags) {
      if (flag == respkit::kFlagCoincident) {
        out->flags |= RESPKIT_FLAG_COINCIDENT;
      }
    }
    return RESPKIT_OK;
  });
}

respkit_status respkit_report_json(const respkit_report* report,
                                   char** out_json) {
  if (auto s = require(report && out_json, "null pointer argument")) return s;
  return guarded([&] {
    *out_json = copy_string(report->report.to_json());
    return RESPKIT_OK;
  });
}

/* ------------------------------ event logs ----------------------------- */

respkit_status respkit_log_load_csv(const char* path, respkit_log** out) {
  if (auto s = require(path && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = new respkit_log{respkit::load_events(path)};
    return RESPKIT_OK;
  });
}

void respkit_log_free(respkit_log* log) { delete log; }

size_t respkit_log_size(const respkit_log* log) {
  return log ? log->log.size() : 0;
}

respkit_status respkit_log_resp(const respkit_log* log, size_t burn_in,
                                double alpha, respkit_resp_summary* out) {
  if (auto s = require(log && out, "null pointer argument")) return s;
  return guarded([&] {
    respkit::LogRespReport r = respkit::resp_from_log(log->log, burn_in,
                                                      alpha);
    *out = respkit_resp_summary{r.resp_z, r.h_z_bits, r.h_z_given_y_bits,
                                r.n_events};
    return RESPKIT_OK;
  });
}

respkit_status respkit_log_resp_series(const respkit_log* log, size_t burn_in,
                                       size_t window_size, size_t stride,
                                       double alpha,
                                       respkit_series_point** out_points,
                                       size_t* out_n) {
  if (auto s = require(log && out_points && out_n, "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    std::vector<respkit::SeriesPoint> series =
        respkit::resp_series(log->log, burn_in, window_size, stride, alpha);
    auto* points = new respkit_series_point[series.size()];
    for (size_t i = 0; i < series.size(); ++i) {
      points[i].start = series[i].start;
      points[i].resp_z = series[i].resp.value_or(0.0);
      points[i].has_value = series[i].resp.has_value() ? 1 : 0;
    }
    *out_points = points;
    *out_n = series.size();
    return RESPKIT_OK;
  });
}

void respkit_series_free(respkit_series_point* points) { delete[] points; }

respkit_status respkit_log_report_json(const respkit_log* log, size_t burn_in,
                                       size_t window_size, size_t stride,
                                       double alpha, char** out_json) {
  if (auto s = require(log && out_json, "null pointer argument")) return s;
  return guarded([&] {
    std::optional<respkit::WindowSpec> window;
    if (window_size > 0) {
      window = respkit::WindowSpec{window_size, stride};
    }
    *out_json = copy_string(
        respkit::log_report_json(log->log, burn_in, window, alpha));
    return RESPKIT_OK;
  });
}

respkit_status respkit_resp_average(const int* y_codes, const int* z_codes,
                                    size_t n_events, double alpha,
                                    respkit_resp_summary* out) {
  if (auto s = require(y_codes && z_codes && out, "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    if (n_events == 0) {
      throw respkit::DomainError("empty joint table");
    }
    respkit::JointTable table({"y"}, "z");
    for (size_t i = 0; i < n_events; ++i) {
      table.add({std::to_string(y_codes[i])}, std::to_string(z_codes[i]));
    }
    if (alpha > 0.0) table = respkit::add_alpha_smoothing(table, alpha);
    respkit::RespAverage r = respkit::resp_average(table);
    *out = respkit_resp_summary{r.resp, r.h_outcome, r.h_conditional,
                                n_events};
    return RESPKIT_OK;
  });
}

/* ------------------------------ simulation ----------------------------- */

respkit_status respkit_simulate_to_csv(const respkit_scenario* scenario,
                                       uint64_t n_trials, uint64_t seed,
                                       int policy, const char* csv_path,
                                       const char* sidecar_json_path) {
  if (auto s = require(scenario && csv_path, "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    respkit::SimConfig config{scenario->scenario, n_trials, seed,
                              policy_from_int(policy)};
    respkit::simulate_to_csv(config, csv_path,
                             sidecar_json_path ? sidecar_json_path : "");
    return RESPKIT_OK;
  });
}

respkit_status respkit_analytic_resp_z(const respkit_scenario* scenario,
                                       int policy, double* out) {
  if (auto s = require(scenario && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::analytic_resp_z(scenario->scenario,
                                    policy_from_int(policy));
    return RESPKIT_OK;
  });
}

respkit_status respkit_accept_probability(const respkit_scenario* scenario,
                                          int system_output,
                                          int state_is_signal, int policy,
                                          double* out) {
  if (auto s = require(scenario && out, "null pointer argument")) return s;
  return guarded([&] {
    *out = respkit::accept_probability(
        scenario->scenario, output_from_int(system_output),
        state_is_signal != 0, policy_from_int(policy));
    return RESPKIT_OK;
  });
}

/* -------------------------------- sweeps ------------------------------- */

void respkit_sweep_spec_defaults(respkit_sweep_spec* spec) {
  if (spec == nullptr) return;
  spec->d_human_min = 0.6;
  spec->d_human_max = 3.0;
  spec->d_human_steps = 61;
  spec->d_system_min = 0.6;
  spec->d_system_max = 3.0;
  spec->d_system_steps = 61;
  spec->e_values = RESPKIT_SWEEP_DEFAULT_E_VALUES;
  spec->n_e_values = 5;
  spec->system_output = RESPKIT_OUTPUT_SIGNAL;
}

respkit_status respkit_sweep_to_csv(const respkit_scenario* scenario,
                                    const respkit_sweep_spec* spec,
                                    const char* path) {
  if (auto s = require(scenario && spec && path, "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    respkit::write_sweep_csv(
        respkit::sweep(scenario->scenario, spec_from_c(spec)), path);
    return RESPKIT_OK;
  });
}

respkit_status respkit_sweep_to_svg(const respkit_scenario* scenario,
                                    const respkit_sweep_spec* spec,
                                    const char* path_prefix) {
  if (auto s = require(scenario && spec && path_prefix,
                       "null pointer argument")) {
    return s;
  }
  return guarded([&] {
    respkit::write_sweep_svg(
        respkit::sweep(scenario->scenario, spec_from_c(spec)), path_prefix);
    return RESPKIT_OK;
  });
}

} /* extern "C" */
