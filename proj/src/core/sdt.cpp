#include "core/sdt.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/gaussian.hpp"

namespace respkit {

namespace {

using json = nlohmann::ordered_json;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

double require_number(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw ParseError(std::string("scenario: missing key \"") + key + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ParseError(std::string("scenario: key \"") + key +
                     "\" must be a number");
  }
  return v.get<double>();
}

void reject_unknown_keys(const json& obj,
                         std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ParseError(std::string("scenario: unknown key \"") + item.key() +
                       "\" in " + where);
    }
  }
}

}  // namespace

void PayoffMatrix::validate() const {
  require_finite(v_tp, "v_tp");
  require_finite(v_tn, "v_tn");
  require_finite(v_fp, "v_fp");
  require_finite(v_fn, "v_fn");
  if (!(v_tp > v_fn)) {
    throw InvalidArgument("payoffs: v_tp must exceed v_fn");
  }
  if (!(v_tn > v_fp)) {
    throw InvalidArgument("payoffs: v_tn must exceed v_fp");
  }
}

SystemOutput system_output_from_string(std::string_view s) {
  if (s == "signal") return SystemOutput::kSignal;
  if (s == "noise") return SystemOutput::kNoise;
  throw InvalidArgument("system output must be \"signal\" or \"noise\", got \"" +
                        std::string(s) + "\"");
}

const char* to_string(SystemOutput output) {
  return output == SystemOutput::kSignal ? "signal" : "noise";
}

void Scenario::validate() const {
  require_finite(prior_signal, "prior_signal");
  if (!(prior_signal > 0.0 && prior_signal < 1.0)) {
    throw InvalidArgument("prior_signal must lie strictly in (0, 1)");
  }
  require_finite(d_prime_human, "d_prime_human");
  require_finite(d_prime_system, "d_prime_system");
  if (!(d_prime_human > 0.0)) {
    throw InvalidArgument("d_prime_human must be > 0");
  }
  if (!(d_prime_system > 0.0)) {
    throw InvalidArgument("d_prime_system must be > 0");
  }
  if (system_beta) {
    require_finite(*system_beta, "system_beta");
    if (!(*system_beta > 0.0)) {
      throw InvalidArgument("system_beta must be > 0");
    }
  }
  payoffs.validate();
  require_finite(softmax_temperature, "softmax_temperature");
  if (!(softmax_temperature > 0.0)) {
    throw InvalidArgument("softmax_temperature must be > 0");
  }
}

double Scenario::resolved_beta() const {
  return system_beta ? *system_beta : optimal_beta(prior_signal, payoffs);
}

Scenario Scenario::from_json(std::string_view text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) {
    throw ParseError("scenario: invalid JSON");
  }
  if (!root.is_object()) {
    throw ParseError("scenario: top-level value must be an object");
  }
  reject_unknown_keys(root,
                      {"prior_signal", "d_prime_human", "d_prime_system",
                       "system_beta", "payoffs", "softmax_temperature"},
                      "scenario");

  Scenario s;
  s.prior_signal = require_number(root, "prior_signal");
  s.d_prime_human = require_number(root, "d_prime_human");
  s.d_prime_system = require_number(root, "d_prime_system");

  if (!root.contains("system_beta")) {
    throw ParseError("scenario: missing key \"system_beta\"");
  }
  const json& beta = root.at("system_beta");
  if (beta.is_number()) {
    s.system_beta = beta.get<double>();
  } else if (beta.is_string() && beta.get<std::string>() == "optimal") {
    s.system_beta.reset();
  } else {
    throw ParseError(
        "scenario: key \"system_beta\" must be a number or \"optimal\"");
  }

  if (!root.contains("payoffs") || !root.at("payoffs").is_object()) {
    throw ParseError("scenario: key \"payoffs\" must be an object");
  }
  const json& payoffs = root.at("payoffs");
  reject_unknown_keys(payoffs, {"v_tp", "v_tn", "v_fp", "v_fn"}, "payoffs");
  s.payoffs.v_tp = require_number(payoffs, "v_tp");
  s.payoffs.v_tn = require_number(payoffs, "v_tn");
  s.payoffs.v_fp = require_number(payoffs, "v_fp");
  s.payoffs.v_fn = require_number(payoffs, "v_fn");

  if (root.contains("softmax_temperature")) {
    s.softmax_temperature = require_number(root, "softmax_temperature");
  }

  s.validate();
  return s;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open scenario file \"" + path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string Scenario::to_json(bool resolve_beta) const {
  json root;
  root["prior_signal"] = prior_signal;
  root["d_prime_human"] = d_prime_human;
  root["d_prime_system"] = d_prime_system;
  if (resolve_beta || system_beta) {
    root["system_beta"] = resolved_beta();
  } else {
    root["system_beta"] = "optimal";
  }
  root["payoffs"] = {{"v_tp", payoffs.v_tp},
                     {"v_tn", payoffs.v_tn},
                     {"v_fp", payoffs.v_fp},
                     {"v_fn", payoffs.v_fn}};
  root["softmax_temperature"] = softmax_temperature;
  return root.dump();
}

double gaussian_density(double e, bool is_signal, double d_prime) {
  if (!(std::isfinite(d_prime) && d_prime > 0.0)) {
    throw InvalidArgument("gaussian_density: d_prime must be > 0");
  }
  require_finite(e, "observed value");
  return normal_pdf(e - (is_signal ? d_prime : 0.0));
}

double optimal_beta(double prior_signal, const PayoffMatrix& payoffs) {
  if (!(std::isfinite(prior_signal) && prior_signal > 0.0 &&
        prior_signal < 1.0)) {
    throw InvalidArgument("optimal_beta: prior_signal must lie in (0, 1)");
  }
  payoffs.validate();
  return ((1.0 - prior_signal) / prior_signal) *
         ((payoffs.v_tn - payoffs.v_fp) / (payoffs.v_tp - payoffs.v_fn));
}

double beta_to_threshold(double beta, double d_prime) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw InvalidArgument("beta_to_threshold: beta must be > 0");
  }
  if (!(std::isfinite(d_prime) && d_prime > 0.0)) {
    throw InvalidArgument("beta_to_threshold: d_prime must be > 0");
  }
  return std::log(beta) / d_prime + 0.5 * d_prime;
}

ConfusionRates confusion_rates(double d_prime, double threshold) {
  if (!(std::isfinite(d_prime) && d_prime > 0.0)) {
    throw InvalidArgument("confusion_rates: d_prime must be > 0");
  }
  ConfusionRates r;
  // Survival function keeps small alarm rates at full relative precision.
  r.p_tp = normal_sf(threshold - d_prime);
  r.p_fn = 1.0 - r.p_tp;
  r.p_fp = normal_sf(threshold);
  r.p_tn = 1.0 - r.p_fp;
  return r;
}

ConfusionRates system_rates(const Scenario& scenario) {
  scenario.validate();
  double threshold =
      beta_to_threshold(scenario.resolved_beta(), scenario.d_prime_system);
  return confusion_rates(scenario.d_prime_system, threshold);
}

ProbDist bayes_signal_noise(double prior_signal, double like_signal,
                            double like_noise) {
  if (!(std::isfinite(like_signal) && like_signal >= 0.0) ||
      !(std::isfinite(like_noise) && like_noise >= 0.0)) {
    throw InvalidArgument("bayes update: likelihoods must be finite and >= 0");
  }
  double w_signal = prior_signal * like_signal;
  double w_noise = (1.0 - prior_signal) * like_noise;
  double total = w_signal + w_noise;
  if (!(total > 0.0)) {
    throw DomainError("bayes update: zero posterior mass (degenerate prior "
                      "and likelihoods)");
  }
  return ProbDist({kSignalLabel, kNoiseLabel},
                  {w_signal / total, w_noise / total});
}

ProbDist posterior_system_only(const Scenario& scenario, SystemOutput output) {
  ConfusionRates r = system_rates(scenario);
  double like_signal = output == SystemOutput::kSignal ? r.p_tp : r.p_fn;
  double like_noise = output == SystemOutput::kSignal ? r.p_fp : r.p_tn;
  return bayes_signal_noise(scenario.prior_signal, like_signal, like_noise);
}

ProbDist posterior_human_only(const Scenario& scenario, double observed) {
  scenario.validate();
  return bayes_signal_noise(
      scenario.prior_signal,
      gaussian_density(observed, true, scenario.d_prime_human),
      gaussian_density(observed, false, scenario.d_prime_human));
}

ProbDist posterior_combined(const Scenario& scenario, SystemOutput output,
                            double observed) {
  ConfusionRates r = system_rates(scenario);
  double sys_signal = output == SystemOutput::kSignal ? r.p_tp : r.p_fn;
  double sys_noise = output == SystemOutput::kSignal ? r.p_fp : r.p_tn;
  return bayes_signal_noise(
      scenario.prior_signal,
      sys_signal * gaussian_density(observed, true, scenario.d_prime_human),
      sys_noise * gaussian_density(observed, false, scenario.d_prime_human));
}

}  // namespace respkit
