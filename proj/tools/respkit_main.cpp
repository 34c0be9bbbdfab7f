// respkit command-line front end. Everything goes through the shared
// library's C API; this file only parses flags and formats output.
//
// Exit codes: 0 success, 1 flag/usage error, 2 data or domain error.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "respkit/respkit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kExitUsage;
}

int data_error() {
  std::cerr << "error: " << respkit_last_error() << '\n';
  return kExitData;
}

bool parse_double_strict(const std::string& text, double& out) {
  auto [p, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && p == text.data() + text.size();
}

// "min:max:steps"
bool parse_range(const std::string& text, double& min, double& max,
                 size_t& steps) {
  auto first = text.find(':');
  auto second = text.find(':', first == std::string::npos ? first
                                                          : first + 1);
  if (first == std::string::npos || second == std::string::npos) return false;
  double steps_d = 0.0;
  if (!parse_double_strict(text.substr(0, first), min) ||
      !parse_double_strict(text.substr(first + 1, second - first - 1), max) ||
      !parse_double_strict(text.substr(second + 1), steps_d)) {
    return false;
  }
  if (steps_d < 2 || steps_d != static_cast<size_t>(steps_d)) return false;
  steps = static_cast<size_t>(steps_d);
  return true;
}

bool parse_double_list(const std::string& text, std::vector<double>& out) {
  out.clear();
  std::string::size_type start = 0;
  while (true) {
    auto pos = text.find(',', start);
    std::string field = pos == std::string::npos
                            ? text.substr(start)
                            : text.substr(start, pos - start);
    double v = 0.0;
    if (!parse_double_strict(field, v)) return false;
    out.push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return !out.empty();
}

class ScenarioHandle {
 public:
  ~ScenarioHandle() { respkit_scenario_free(handle_); }
  respkit_scenario** out() { return &handle_; }
  const respkit_scenario* get() const { return handle_; }

 private:
  respkit_scenario* handle_ = nullptr;
};

// ---------------------------------------------------------------------
// event
// ---------------------------------------------------------------------

struct EventArgs {
  std::string scenario_path;
  std::string system_output;
  double observed = 0.0;
  std::string action;
  bool json = false;
};

int run_event(const EventArgs& args) {
  if (args.system_output != "signal" && args.system_output != "noise") {
    return usage_error("--system-output must be signal or noise");
  }
  if (args.action != "accept" && args.action != "reject") {
    return usage_error("--action must be accept or reject");
  }
  ScenarioHandle scenario;
  if (respkit_scenario_from_file(args.scenario_path.c_str(),
                                 scenario.out()) != RESPKIT_OK) {
    return data_error();
  }
  int output = args.system_output == "signal" ? RESPKIT_OUTPUT_SIGNAL
                                              : RESPKIT_OUTPUT_NOISE;
  respkit_report* report = nullptr;
  if (respkit_analyze_event(scenario.get(), output, args.observed,
                            args.action.c_str(), &report) != RESPKIT_OK) {
    return data_error();
  }

  if (args.json) {
    char* json = nullptr;
    if (respkit_report_json(report, &json) != RESPKIT_OK) {
      respkit_report_free(report);
      return data_error();
    }
    std::cout << json << '\n';
    respkit_string_free(json);
    respkit_report_free(report);
    return kExitOk;
  }

  respkit_report_values v{};
  if (respkit_report_get(report, &v) != RESPKIT_OK) {
    respkit_report_free(report);
    return data_error();
  }
  respkit_report_free(report);

  std::cout << "posterior x_a (combined):    signal " << fmt6(v.x_a[0])
            << "  noise " << fmt6(v.x_a[1]) << '\n';
  std::cout << "posterior x_a (system only): signal " << fmt6(v.x_a_system[0])
            << "  noise " << fmt6(v.x_a_system[1]) << '\n';
  std::cout << "posterior x_a (human only):  signal " << fmt6(v.x_a_human[0])
            << "  noise " << fmt6(v.x_a_human[1]) << '\n';
  std::cout << "D(x_a, x_a_system) = " << fmt6(v.d_system) << '\n';
  std::cout << "D(x_a, x_a_human)  = " << fmt6(v.d_human) << '\n';
  std::cout << "resp(x_a) = " << fmt6(v.d_system) << " / ("
            << fmt6(v.d_system) << " + " << fmt6(v.d_human) << ") = "
            << fmt6(v.resp_information) << '\n';
  std::cout << "expected value: accept " << fmt6(v.ev_accept) << "  reject "
            << fmt6(v.ev_reject) << '\n';
  std::cout << "softmax:        accept " << fmt6(v.softmax_accept)
            << "  reject " << fmt6(v.softmax_reject) << '\n';
  std::cout << "reasonability:  accept " << fmt6(v.rsnble_accept)
            << "  reject " << fmt6(v.rsnble_reject) << '\n';
  double chosen = args.action == "accept" ? v.rsnble_accept : v.rsnble_reject;
  std::cout << "chosen action " << args.action << ": reasonability = "
            << fmt6(chosen) << '\n';
  if (v.flags & RESPKIT_FLAG_COINCIDENT) {
    std::cout << "note: coincident distributions (x_a = x_a_system = "
                 "x_a_human); resp(x_a) is 0.5 by convention\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------
// log
// ---------------------------------------------------------------------

struct LogArgs {
  std::string input_path;
  size_t burn_in = 0;
  size_t window_size = 0;
  size_t stride = 0;
  double alpha = 0.0;
  bool json = false;
};

int run_log(const LogArgs& args) {
  respkit_log* log = nullptr;
  if (respkit_log_load_csv(args.input_path.c_str(), &log) != RESPKIT_OK) {
    return data_error();
  }
  size_t stride = args.stride == 0 ? args.window_size : args.stride;

  if (args.json) {
    char* json = nullptr;
    if (respkit_log_report_json(log, args.burn_in, args.window_size, stride,
                                args.alpha, &json) != RESPKIT_OK) {
      respkit_log_free(log);
      return data_error();
    }
    std::cout << json << '\n';
    respkit_string_free(json);
    respkit_log_free(log);
    return kExitOk;
  }

  respkit_resp_summary summary{};
  if (respkit_log_resp(log, args.burn_in, args.alpha, &summary) !=
      RESPKIT_OK) {
    respkit_log_free(log);
    return data_error();
  }
  std::cout << "events: " << summary.n_events << " (burn-in " << args.burn_in
            << ")\n";
  std::cout << "H(Z)   = " << fmt6(summary.h_z_bits) << " bits\n";
  std::cout << "H(Z|Y) = " << fmt6(summary.h_z_given_y_bits) << " bits\n";
  std::cout << "resp(Z) = " << fmt6(summary.resp_z) << '\n';

  if (args.window_size > 0) {
    respkit_series_point* points = nullptr;
    size_t n = 0;
    if (respkit_log_resp_series(log, args.burn_in, args.window_size, stride,
                                args.alpha, &points, &n) != RESPKIT_OK) {
      respkit_log_free(log);
      return data_error();
    }
    std::cout << "series (window " << args.window_size << ", stride "
              << stride << "):\n";
    for (size_t i = 0; i < n; ++i) {
      std::cout << "  start " << points[i].start << ": ";
      if (points[i].has_value) {
        std::cout << fmt6(points[i].resp_z) << '\n';
      } else {
        std::cout << "degenerate (constant z)\n";
      }
    }
    respkit_series_free(points);
  }
  respkit_log_free(log);
  return kExitOk;
}

// ---------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------

struct SweepArgs {
  std::string scenario_path;
  std::string d_human = "0.6:3.0:61";
  std::string d_system = "0.6:3.0:61";
  std::string e_list = "-1.5,0,1.5,3,4.5";
  std::string out_path;
  std::string format = "csv";
};

int run_sweep(const SweepArgs& args) {
  respkit_sweep_spec spec;
  respkit_sweep_spec_defaults(&spec);
  if (!parse_range(args.d_human, spec.d_human_min, spec.d_human_max,
                   spec.d_human_steps)) {
    return usage_error("--d-human must be min:max:steps with steps >= 2");
  }
  if (!parse_range(args.d_system, spec.d_system_min, spec.d_system_max,
                   spec.d_system_steps)) {
    return usage_error("--d-system must be min:max:steps with steps >= 2");
  }
  std::vector<double> e_values;
  if (!parse_double_list(args.e_list, e_values)) {
    return usage_error("--e must be a comma-separated list of numbers");
  }
  spec.e_values = e_values.data();
  spec.n_e_values = e_values.size();
  if (args.format != "csv" && args.format != "svg") {
    return usage_error("--format must be csv or svg");
  }

  ScenarioHandle scenario;
  if (respkit_scenario_from_file(args.scenario_path.c_str(),
                                 scenario.out()) != RESPKIT_OK) {
    return data_error();
  }

  if (args.format == "csv") {
    if (respkit_sweep_to_csv(scenario.get(), &spec, args.out_path.c_str()) !=
        RESPKIT_OK) {
      return data_error();
    }
    std::cout << "wrote " << args.out_path << " ("
              << spec.d_human_steps * spec.d_system_steps * spec.n_e_values
              << " cells)\n";
    return kExitOk;
  }

  std::string prefix = args.out_path;
  if (prefix.size() > 4 && prefix.ends_with(".svg")) {
    prefix.resize(prefix.size() - 4);
  }
  if (respkit_sweep_to_svg(scenario.get(), &spec, prefix.c_str()) !=
      RESPKIT_OK) {
    return data_error();
  }
  for (size_t i = 0; i < spec.n_e_values; ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", spec.e_values[i]);
    std::cout << "wrote " << prefix << "_e" << buf << ".svg\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------

struct SimulateArgs {
  std::string scenario_path;
  uint64_t trials = 0;
  uint64_t seed = 0;
  std::string out_path;
  std::string policy = "maximize_ev";
};

int run_simulate(const SimulateArgs& args) {
  if (args.trials < 1) {
    return usage_error("--trials must be >= 1");
  }
  int policy;
  if (args.policy == "maximize_ev") {
    policy = RESPKIT_POLICY_MAXIMIZE_EV;
  } else if (args.policy == "softmax_sample") {
    policy = RESPKIT_POLICY_SOFTMAX_SAMPLE;
  } else {
    return usage_error("--policy must be maximize_ev or softmax_sample");
  }

  ScenarioHandle scenario;
  if (respkit_scenario_from_file(args.scenario_path.c_str(),
                                 scenario.out()) != RESPKIT_OK) {
    return data_error();
  }

  // Sidecar next to the log: events.csv -> events.config.json.
  std::string sidecar = args.out_path;
  if (sidecar.size() > 4 && sidecar.ends_with(".csv")) {
    sidecar.resize(sidecar.size() - 4);
  }
  sidecar += ".config.json";

  if (respkit_simulate_to_csv(scenario.get(), args.trials, args.seed, policy,
                              args.out_path.c_str(),
                              sidecar.c_str()) != RESPKIT_OK) {
    return data_error();
  }
  std::cout << "wrote " << args.out_path << " (" << args.trials
            << " trials)\n";
  std::cout << "wrote " << sidecar << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------
// rates
// ---------------------------------------------------------------------

struct RatesArgs {
  double d_prime = 0.0;
  std::string beta;
  std::optional<double> prior;
  std::string payoffs;
  bool json = false;
};

int run_rates(const RatesArgs& args) {
  if (!(args.d_prime > 0.0)) {
    return usage_error("--d-prime must be > 0");
  }
  double beta = 0.0;
  if (args.beta == "optimal") {
    if (!args.prior || args.payoffs.empty()) {
      return usage_error(
          "--beta optimal requires --prior and --payoffs v_tp,v_tn,v_fp,v_fn");
    }
    std::vector<double> v;
    if (!parse_double_list(args.payoffs, v) || v.size() != 4) {
      return usage_error("--payoffs must be four numbers v_tp,v_tn,v_fp,v_fn");
    }
    if (respkit_optimal_beta(*args.prior, v[0], v[1], v[2], v[3], &beta) !=
        RESPKIT_OK) {
      return data_error();
    }
  } else if (!parse_double_strict(args.beta, beta) || !(beta > 0.0)) {
    return usage_error("--beta must be a positive number or \"optimal\"");
  }

  double threshold = 0.0;
  if (respkit_beta_to_threshold(beta, args.d_prime, &threshold) !=
      RESPKIT_OK) {
    return data_error();
  }
  double rates[4] = {0, 0, 0, 0};
  if (respkit_confusion_rates(args.d_prime, threshold, rates) != RESPKIT_OK) {
    return data_error();
  }

  if (args.json) {
    nlohmann::ordered_json root;
    root["beta"] = beta;
    root["threshold"] = threshold;
    root["p_tp"] = rates[0];
    root["p_fn"] = rates[1];
    root["p_fp"] = rates[2];
    root["p_tn"] = rates[3];
    std::cout << root.dump() << '\n';
    return kExitOk;
  }
  std::cout << "beta = " << fmt6(beta) << "  threshold = " << fmt6(threshold)
            << '\n';
  std::cout << "p_tp = " << fmt6(rates[0]) << "  p_fn = " << fmt6(rates[1])
            << "  p_fp = " << fmt6(rates[2]) << "  p_tn = " << fmt6(rates[3])
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "respkit — retrospective responsibility measures for human "
      "interaction with intelligent decision-support systems"};
  app.require_subcommand(1);

  EventArgs event_args;
  CLI::App* event = app.add_subcommand(
      "event", "Analyze a single event: posteriors, information share, "
               "action reasonability");
  event->add_option("--scenario", event_args.scenario_path,
                    "Scenario JSON file")->required();
  event->add_option("--system-output", event_args.system_output,
                    "System classification: signal or noise")->required();
  event->add_option("--observed", event_args.observed,
                    "Value the human observed (standardized units)")
      ->required();
  event->add_option("--action", event_args.action,
                    "The action the human chose: accept or reject")
      ->required();
  event->add_flag("--json", event_args.json, "Emit the report as JSON");

  LogArgs log_args;
  CLI::App* log_cmd = app.add_subcommand(
      "log", "Average responsibility resp(Z) over an interaction log");
  log_cmd->add_option("--input", log_args.input_path, "Event CSV file")
      ->required();
  log_cmd->add_option("--burn-in", log_args.burn_in,
                      "Records to drop from the start");
  auto* window_opt = log_cmd->add_option(
      "--window-size", log_args.window_size,
      "Sliding-window size for the responsibility series");
  log_cmd->add_option("--stride", log_args.stride,
                      "Window stride (default: window size)")
      ->needs(window_opt);
  log_cmd->add_option("--alpha", log_args.alpha,
                      "Add-alpha smoothing for sparse tables (default 0)");
  log_cmd->add_flag("--json", log_args.json, "Emit the report as JSON");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Grid of resp(x_a) and reasonability over sensitivities "
               "and observed values");
  sweep_cmd->add_option("--scenario", sweep_args.scenario_path,
                        "Scenario JSON file")->required();
  sweep_cmd->add_option("--d-human", sweep_args.d_human,
                        "Human sensitivity grid min:max:steps");
  sweep_cmd->add_option("--d-system", sweep_args.d_system,
                        "System sensitivity grid min:max:steps");
  sweep_cmd->add_option("--e", sweep_args.e_list,
                        "Observed values, comma separated");
  sweep_cmd->add_option("--out", sweep_args.out_path, "Output path")
      ->required();
  sweep_cmd->add_option("--format", sweep_args.format, "csv or svg");

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Generate a seeded Monte-Carlo interaction log");
  sim_cmd->add_option("--scenario", sim_args.scenario_path,
                      "Scenario JSON file")->required();
  sim_cmd->add_option("--trials", sim_args.trials, "Number of trials")
      ->required();
  sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")->required();
  sim_cmd->add_option("--out", sim_args.out_path, "Output CSV path")
      ->required();
  sim_cmd->add_option("--policy", sim_args.policy,
                      "maximize_ev or softmax_sample");

  RatesArgs rates_args;
  CLI::App* rates_cmd = app.add_subcommand(
      "rates", "Confusion rates of an equal-variance Gaussian detector");
  rates_cmd->add_option("--d-prime", rates_args.d_prime,
                        "Detection sensitivity")->required();
  rates_cmd->add_option("--beta", rates_args.beta,
                        "Response criterion (number or \"optimal\")")
      ->required();
  rates_cmd->add_option("--prior", rates_args.prior,
                        "Signal prior (required with --beta optimal)");
  rates_cmd->add_option("--payoffs", rates_args.payoffs,
                        "v_tp,v_tn,v_fp,v_fn (required with --beta optimal)");
  rates_cmd->add_flag("--json", rates_args.json, "Emit the rates as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (event->parsed()) return run_event(event_args);
  if (log_cmd->parsed()) return run_log(log_args);
  if (sweep_cmd->parsed()) return run_sweep(sweep_args);
  if (sim_cmd->parsed()) return run_simulate(sim_args);
  if (rates_cmd->parsed()) return run_rates(rates_args);
  return kExitUsage;
}
