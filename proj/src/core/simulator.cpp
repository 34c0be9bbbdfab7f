#include "core/simulator.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "core/errors.hpp"
#include "core/gaussian.hpp"
#include "core/responsibility.hpp"

namespace respkit {

namespace {

constexpr const char* kAlert = "alert";
constexpr const char* kNoAlert = "noalert";
// Integration window half-width around the evidence mean; the normal mass
// beyond 13 standard deviations is ~6e-39, far below the 1e-9 cell
// tolerance.
constexpr double kTailSigmas = 13.0;
constexpr double kCellTolerance = 1e-9;

// Uniform draw in the open interval (0, 1): 53 random bits, offset by 1/2.
double uniform_open(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

double normal_draw(std::mt19937_64& gen) {
  return normal_quantile(uniform_open(gen));
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
QuadratureResult integrate_cell(F&& f, double lo, double hi) {
  QuadratureResult r;
  if (lo >= hi) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, lo, hi, /*max_depth=*/15, /*tol=*/1e-12, &r.error);
  return r;
}

}  // namespace

HumanPolicy human_policy_from_string(std::string_view s) {
  if (s == "maximize_ev") return HumanPolicy::kMaximizeEv;
  if (s == "softmax_sample") return HumanPolicy::kSoftmaxSample;
  throw InvalidArgument(
      "human policy must be \"maximize_ev\" or \"softmax_sample\", got \"" +
      std::string(s) + "\"");
}

const char* to_string(HumanPolicy policy) {
  return policy == HumanPolicy::kMaximizeEv ? "maximize_ev" : "softmax_sample";
}

void SimConfig::validate() const {
  scenario.validate();
  if (n_trials < 1) {
    throw InvalidArgument("simulation: n_trials must be >= 1");
  }
}

std::string SimConfig::to_json() const {
  nlohmann::ordered_json root;
  root["scenario"] =
      nlohmann::ordered_json::parse(scenario.to_json(/*resolve_beta=*/true));
  root["n_trials"] = n_trials;
  root["seed"] = seed;
  root["human_policy"] = to_string(policy);
  return root.dump();
}

EventLog simulate(const SimConfig& config) {
  config.validate();
  const Scenario& sc = config.scenario;
  const double threshold =
      beta_to_threshold(sc.resolved_beta(), sc.d_prime_system);

  std::mt19937_64 gen(config.seed);
  EventLog log;
  log.y_columns = {"y_alert"};
  log.has_e = true;
  log.has_state = true;
  log.has_x_s = true;
  log.records.reserve(config.n_trials);

  for (std::uint64_t i = 0; i < config.n_trials; ++i) {
    bool is_signal = uniform_open(gen) < sc.prior_signal;
    double system_evidence =
        normal_draw(gen) + (is_signal ? sc.d_prime_system : 0.0);
    bool alert = system_evidence > threshold;
    double e = normal_draw(gen) + (is_signal ? sc.d_prime_human : 0.0);

    SystemOutput output =
        alert ? SystemOutput::kSignal : SystemOutput::kNoise;
    ActionSet ev = expected_values(posterior_combined(sc, output, e),
                                   sc.payoffs);
    bool accept = false;
    if (config.policy == HumanPolicy::kMaximizeEv) {
      accept = ev.utilities[0] > ev.utilities[1];
    } else {
      double p_accept = softmax_probs(ev, sc.softmax_temperature)[0];
      accept = uniform_open(gen) < p_accept;
    }

    EventRecord rec;
    rec.trial = static_cast<long long>(i) + 1;
    rec.y_values = {alert ? kAlert : kNoAlert};
    rec.z = accept ? kActionAccept : kActionReject;
    rec.e = e;
    rec.state = is_signal ? kSignalLabel : kNoiseLabel;
    rec.x_s = rec.z;
    log.records.push_back(std::move(rec));
  }
  return log;
}

void simulate_to_csv(const SimConfig& config, const std::string& csv_path,
                     const std::string& sidecar_path) {
  EventLog log = simulate(config);
  write_events_csv(log, csv_path);
  if (!sidecar_path.empty()) {
    std::ofstream out(sidecar_path, std::ios::binary);
    if (!out) {
      throw IoError("cannot open \"" + sidecar_path + "\" for writing");
    }
    out << config.to_json() << '\n';
    if (!out) {
      throw IoError("failed writing sidecar \"" + sidecar_path + "\"");
    }
  }
}

double accept_probability(const Scenario& scenario, SystemOutput output,
                          bool state_is_signal, HumanPolicy policy) {
  scenario.validate();
  const ConfusionRates rates = system_rates(scenario);
  const double like_signal =
      output == SystemOutput::kSignal ? rates.p_tp : rates.p_fn;
  const double like_noise =
      output == SystemOutput::kSignal ? rates.p_fp : rates.p_tn;
  const double d_h = scenario.d_prime_human;
  const double mean = state_is_signal ? d_h : 0.0;
  const double lo = mean - kTailSigmas;
  const double hi = mean + kTailSigmas;

  QuadratureResult result;
  if (policy == HumanPolicy::kMaximizeEv) {
    // Accept iff the posterior signal odds exceed
    // k = (V_TN - V_FP) / (V_TP - V_FN). The human likelihood ratio
    // exp(d_h e - d_h^2 / 2) is monotone in e, so the rule is a single
    // threshold e*; the integrand is split there and the accept side is
    // integrated against the evidence density.
    const double log_k = std::log((scenario.payoffs.v_tn -
                                   scenario.payoffs.v_fp) /
                                  (scenario.payoffs.v_tp -
                                   scenario.payoffs.v_fn));
    const double log_prior_odds =
        std::log(scenario.prior_signal) - std::log(1.0 - scenario.prior_signal);
    const double log_lr_system =
        std::log(like_signal) - std::log(like_noise);
    const double e_star =
        (log_k - log_prior_odds - log_lr_system + 0.5 * d_h * d_h) / d_h;
    if (e_star == -std::numeric_limits<double>::infinity()) return 1.0;
    if (e_star == std::numeric_limits<double>::infinity()) return 0.0;
    result = integrate_cell([mean](double e) { return normal_pdf(e - mean); },
                            std::max(e_star, lo), hi);
  } else {
    const double prior = scenario.prior_signal;
    const double temperature = scenario.softmax_temperature;
    const PayoffMatrix& payoffs = scenario.payoffs;
    auto integrand = [&](double e) {
      double w_signal = prior * like_signal * normal_pdf(e - d_h);
      double w_noise = (1.0 - prior) * like_noise * normal_pdf(e);
      double p_signal = w_signal / (w_signal + w_noise);
      double ev_accept =
          p_signal * payoffs.v_tp + (1.0 - p_signal) * payoffs.v_fp;
      double ev_reject =
          p_signal * payoffs.v_fn + (1.0 - p_signal) * payoffs.v_tn;
      double m = std::max(ev_accept, ev_reject);
      double wa = std::exp((ev_accept - m) / temperature);
      double wr = std::exp((ev_reject - m) / temperature);
      return wa / (wa + wr) * normal_pdf(e - mean);
    };
    result = integrate_cell(integrand, lo, hi);
  }

  if (!(result.error <= kCellTolerance)) {
    std::ostringstream msg;
    msg << "quadrature failed to converge for cell (state="
        << (state_is_signal ? kSignalLabel : kNoiseLabel)
        << ", output=" << to_string(output)
        << "): estimated error " << result.error << " exceeds "
        << kCellTolerance;
    throw DomainError(msg.str());
  }
  return std::min(1.0, std::max(0.0, result.value));
}

double analytic_resp_z(const Scenario& scenario, HumanPolicy policy) {
  scenario.validate();
  const ConfusionRates rates = system_rates(scenario);

  JointTable table({"y_alert"}, "z");
  for (bool is_signal : {true, false}) {
    double p_state =
        is_signal ? scenario.prior_signal : 1.0 - scenario.prior_signal;
    double p_alert = is_signal ? rates.p_tp : rates.p_fp;
    struct Cell {
      SystemOutput output;
      const char* y;
      double weight;
    };
    for (const Cell& cell :
         {Cell{SystemOutput::kSignal, kAlert, p_state * p_alert},
          Cell{SystemOutput::kNoise, kNoAlert, p_state * (1.0 - p_alert)}}) {
      if (cell.weight <= 0.0) continue;
      double q =
          accept_probability(scenario, cell.output, is_signal, policy);
      table.add({cell.y}, kActionAccept, cell.weight * q);
      table.add({cell.y}, kActionReject, cell.weight * (1.0 - q));
    }
  }
  return resp_average(table).resp;
}

}  // namespace respkit
