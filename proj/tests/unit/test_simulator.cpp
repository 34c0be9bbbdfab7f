#include <doctest.h>

#include <cmath>
#include <map>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/event_log.hpp"
#include "core/sdt.hpp"
#include "core/simulator.hpp"
#include "support/oracles.hpp"

using namespace respkit;

namespace {

Scenario paper_scenario() {
  Scenario s;
  s.prior_signal = 0.2;
  s.d_prime_human = 1.5;
  s.d_prime_system = 2.0;
  s.payoffs = PayoffMatrix{10.0, 10.0, -10.0, -20.0};
  return s;
}

oracle::SdtSetup setup_for(const Scenario& s, SystemOutput output) {
  ConfusionRates r = system_rates(s);
  return oracle::SdtSetup{
      s.prior_signal,
      s.d_prime_human,
      output == SystemOutput::kSignal ? r.p_tp : r.p_fn,
      output == SystemOutput::kSignal ? r.p_fp : r.p_tn,
      s.payoffs.v_tp,
      s.payoffs.v_tn,
      s.payoffs.v_fp,
      s.payoffs.v_fn};
}

}  // namespace

TEST_CASE("simulation config validation") {
  SimConfig config{paper_scenario(), 0, 1, HumanPolicy::kMaximizeEv};
  CHECK_THROWS_AS(config.validate(), InvalidArgument);
  CHECK_THROWS_AS(simulate(config), InvalidArgument);
  CHECK_THROWS_AS(human_policy_from_string("greedy"), InvalidArgument);
  CHECK(human_policy_from_string("maximize_ev") == HumanPolicy::kMaximizeEv);
  CHECK(human_policy_from_string("softmax_sample") ==
        HumanPolicy::kSoftmaxSample);
}

TEST_CASE("simulation is deterministic in the seed") {
  SimConfig config{paper_scenario(), 2000, 424242,
                   HumanPolicy::kSoftmaxSample};
  EventLog a = simulate(config);
  EventLog b = simulate(config);
  CHECK(a == b);
  CHECK(events_to_csv(a) == events_to_csv(b));

  SimConfig other = config;
  other.seed = 424243;
  CHECK(!(simulate(other) == a));
}

TEST_CASE("simulated frequencies match the model") {
  Scenario s = paper_scenario();
  const std::uint64_t n = 200000;
  SimConfig config{s, n, 4242, HumanPolicy::kMaximizeEv};
  EventLog log = simulate(config);
  REQUIRE(log.size() == n);

  std::size_t n_signal = 0;
  std::size_t alert_given_signal = 0, alert_given_noise = 0;
  for (const EventRecord& rec : log.records) {
    bool sig = *rec.state == "signal";
    n_signal += sig;
    bool alert = rec.y_values[0] == "alert";
    if (sig) {
      alert_given_signal += alert;
    } else {
      alert_given_noise += alert;
    }
    CHECK(*rec.x_s == rec.z);
  }

  SUBCASE("state frequency within 3 binomial standard errors") {
    double p_hat = static_cast<double>(n_signal) / static_cast<double>(n);
    double se = std::sqrt(0.2 * 0.8 / static_cast<double>(n));
    CHECK(std::abs(p_hat - 0.2) <= 3.0 * se);
  }
  SUBCASE("confusion rates within 3 binomial standard errors") {
    ConfusionRates r = system_rates(s);
    double n_sig = static_cast<double>(n_signal);
    double n_noi = static_cast<double>(n - n_signal);
    double tp_hat = static_cast<double>(alert_given_signal) / n_sig;
    double fp_hat = static_cast<double>(alert_given_noise) / n_noi;
    CHECK(std::abs(tp_hat - r.p_tp) <=
          3.0 * std::sqrt(r.p_tp * r.p_fn / n_sig));
    CHECK(std::abs(fp_hat - r.p_fp) <=
          3.0 * std::sqrt(r.p_fp * r.p_tn / n_noi));
    // The paper's rounded rates, reproduced empirically.
    CHECK(std::abs(tp_hat - 0.69) < 0.012);
    CHECK(std::abs(fp_hat - 0.07) < 0.005);
  }
  SUBCASE("accept probabilities per (state, alert) match the quadrature") {
    std::map<std::pair<bool, bool>, std::pair<double, double>> counts;
    for (const EventRecord& rec : log.records) {
      auto& [total, accepted] =
          counts[{*rec.state == "signal", rec.y_values[0] == "alert"}];
      total += 1.0;
      accepted += rec.z == "accept" ? 1.0 : 0.0;
    }
    for (const auto& [key, pair] : counts) {
      auto [is_signal, alert] = key;
      double q = accept_probability(
          s, alert ? SystemOutput::kSignal : SystemOutput::kNoise, is_signal,
          HumanPolicy::kMaximizeEv);
      double q_hat = pair.second / pair.first;
      double se = std::sqrt(std::max(q * (1.0 - q), 1e-12) / pair.first);
      CHECK(std::abs(q_hat - q) <= 3.0 * se + 1e-9);
    }
  }
}

TEST_CASE("accept_probability agrees with the closed form") {
  Scenario s = paper_scenario();
  for (SystemOutput out : {SystemOutput::kSignal, SystemOutput::kNoise}) {
    for (bool sig : {true, false}) {
      double via_quadrature =
          accept_probability(s, out, sig, HumanPolicy::kMaximizeEv);
      double closed =
          oracle::accept_probability_closed_form(setup_for(s, out), sig);
      CHECK(via_quadrature == doctest::Approx(closed).epsilon(1e-9));
    }
  }
  SUBCASE("and for a skewed scenario") {
    Scenario skew = paper_scenario();
    skew.prior_signal = 0.65;
    skew.d_prime_human = 0.8;
    skew.d_prime_system = 1.1;
    skew.system_beta = 0.5;
    skew.payoffs = PayoffMatrix{4.0, 2.0, -3.0, -8.0};
    for (SystemOutput out : {SystemOutput::kSignal, SystemOutput::kNoise}) {
      for (bool sig : {true, false}) {
        double q = accept_probability(skew, out, sig,
                                      HumanPolicy::kMaximizeEv);
        double closed = oracle::accept_probability_closed_form(
            setup_for(skew, out), sig);
        CHECK(q == doctest::Approx(closed).epsilon(1e-9));
      }
    }
  }
  SUBCASE("softmax policy lies strictly inside the argmax endpoints") {
    double soft = accept_probability(s, SystemOutput::kSignal, true,
                                     HumanPolicy::kSoftmaxSample);
    CHECK(soft > 0.0);
    CHECK(soft < 1.0);
  }
}

TEST_CASE("analytic_resp_z") {
  Scenario s = paper_scenario();
  SUBCASE("paper scenario under the argmax policy") {
    // Frozen from an independent quadrature of the decision rule.
    CHECK(analytic_resp_z(s, HumanPolicy::kMaximizeEv) ==
          doctest::Approx(0.4225213076018355).epsilon(1e-6));
  }
  SUBCASE("paper scenario under the softmax policy") {
    CHECK(analytic_resp_z(s, HumanPolicy::kSoftmaxSample) ==
          doctest::Approx(0.4255695868141996).epsilon(1e-6));
  }
  SUBCASE("an overwhelming system determines the action") {
    Scenario strong = s;
    strong.d_prime_system = 8.0;
    strong.system_beta = 1.0;
    strong.d_prime_human = 0.6;
    CHECK(analytic_resp_z(strong, HumanPolicy::kMaximizeEv) < 1e-9);
  }
  SUBCASE("a useless system leaves everything to the human") {
    Scenario useless = s;
    useless.d_prime_system = 1e-9;
    useless.system_beta = 1.0;
    CHECK(analytic_resp_z(useless, HumanPolicy::kMaximizeEv) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("estimator converges to the quadrature oracle") {
  Scenario s = paper_scenario();
  SimConfig config{s, 200000, 42, HumanPolicy::kMaximizeEv};
  LogRespReport from_log = resp_from_log(simulate(config), 0);
  double analytic = analytic_resp_z(s, HumanPolicy::kMaximizeEv);
  CHECK(std::abs(from_log.resp_z - analytic) < 0.01);

  SUBCASE("also under the softmax policy") {
    SimConfig soft{s, 200000, 43, HumanPolicy::kSoftmaxSample};
    LogRespReport r = resp_from_log(simulate(soft), 0);
    CHECK(std::abs(r.resp_z -
                   analytic_resp_z(s, HumanPolicy::kSoftmaxSample)) < 0.01);
  }
}

TEST_CASE("config sidecar json") {
  SimConfig config{paper_scenario(), 1000, 7, HumanPolicy::kSoftmaxSample};
  nlohmann::json j = nlohmann::json::parse(config.to_json());
  CHECK(j.at("n_trials").get<std::uint64_t>() == 1000);
  CHECK(j.at("seed").get<std::uint64_t>() == 7);
  CHECK(j.at("human_policy").get<std::string>() == "softmax_sample");
  CHECK(j.at("scenario").at("system_beta").get<double>() ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(j.at("scenario").at("softmax_temperature").get<double>() == 1.0);
}
