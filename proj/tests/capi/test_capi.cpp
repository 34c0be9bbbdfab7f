#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "respkit/respkit.h"

namespace {

constexpr const char* kPaperScenario = R"({
  "prior_signal": 0.2,
  "d_prime_human": 1.5,
  "d_prime_system": 2.0,
  "system_beta": "optimal",
  "payoffs": {"v_tp": 10, "v_tn": 10, "v_fp": -10, "v_fn": -20}
})";

struct Scenario {
  respkit_scenario* handle = nullptr;
  Scenario() {
    REQUIRE(respkit_scenario_from_json(kPaperScenario, &handle) == RESPKIT_OK);
  }
  ~Scenario() { respkit_scenario_free(handle); }
};

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(respkit_version() != nullptr);
  CHECK(std::strcmp(respkit_status_name(RESPKIT_OK), "ok") == 0);
  CHECK(std::strcmp(respkit_status_name(RESPKIT_ERROR_DOMAIN),
                    "domain error") == 0);
}

TEST_CASE("entropy through the C surface") {
  double probs[2] = {0.2, 0.8};
  double h = 0.0;
  REQUIRE(respkit_entropy(probs, 2, &h) == RESPKIT_OK);
  CHECK(h == doctest::Approx(0.7219280948873623).epsilon(1e-12));

  CHECK(respkit_entropy(nullptr, 2, &h) == RESPKIT_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(respkit_last_error()) > 0);

  double bad[2] = {0.9, 0.9};
  CHECK(respkit_entropy(bad, 2, &h) == RESPKIT_ERROR_INVALID_ARGUMENT);
  double tiny[1] = {1.0};
  CHECK(respkit_entropy(tiny, 1, &h) == RESPKIT_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("divergences through the C surface") {
  double p[2] = {1.0, 0.0};
  double q[2] = {0.5, 0.5};
  double v = 0.0;
  REQUIRE(respkit_kl_divergence(p, q, 2, &v) == RESPKIT_OK);
  CHECK(v == 1.0);
  // Absolute continuity violation maps to the domain status.
  CHECK(respkit_kl_divergence(q, p, 2, &v) == RESPKIT_ERROR_DOMAIN);
  CHECK(std::string(respkit_last_error()).find("absolute continuity") !=
        std::string::npos);

  double r[2] = {0.0, 1.0};
  REQUIRE(respkit_js_divergence(p, r, 2, &v) == RESPKIT_OK);
  CHECK(v == 1.0);
  REQUIRE(respkit_js_distance(p, r, 2, &v) == RESPKIT_OK);
  CHECK(v == 1.0);
}

TEST_CASE("SDT helpers through the C surface") {
  double beta = 0.0;
  REQUIRE(respkit_optimal_beta(0.2, 10, 10, -10, -20, &beta) == RESPKIT_OK);
  CHECK(beta == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(respkit_optimal_beta(0.0, 10, 10, -10, -20, &beta) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);

  double threshold = 0.0;
  REQUIRE(respkit_beta_to_threshold(beta, 2.0, &threshold) == RESPKIT_OK);
  CHECK(threshold == doctest::Approx(1.4904).epsilon(1e-4));
  CHECK(respkit_beta_to_threshold(beta, 0.0, &threshold) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);

  double rates[4] = {0, 0, 0, 0};
  REQUIRE(respkit_confusion_rates(2.0, threshold, rates) == RESPKIT_OK);
  CHECK(std::abs(rates[0] - 0.69) < 0.005);
  CHECK(std::abs(rates[1] - 0.31) < 0.005);
  CHECK(std::abs(rates[2] - 0.07) < 0.005);
  CHECK(std::abs(rates[3] - 0.93) < 0.005);
}

TEST_CASE("scenario lifecycle and posteriors") {
  Scenario sc;
  double beta = 0.0;
  REQUIRE(respkit_scenario_resolved_beta(sc.handle, &beta) == RESPKIT_OK);
  CHECK(beta == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  double sys[2], hum[2], comb[2];
  REQUIRE(respkit_posteriors(sc.handle, RESPKIT_OUTPUT_SIGNAL, -1.5, sys, hum,
                             comb) == RESPKIT_OK);
  CHECK(std::abs(sys[0] - 0.72) < 0.01);
  CHECK(std::abs(hum[0] - 0.01) < 0.005);
  CHECK(std::abs(comb[0] - 0.08) < 0.01);

  CHECK(respkit_posteriors(sc.handle, 7, 0.0, sys, hum, comb) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);

  respkit_scenario* bad = nullptr;
  CHECK(respkit_scenario_from_json("{\"nope\":1}", &bad) ==
        RESPKIT_ERROR_PARSE);
  CHECK(std::string(respkit_last_error()).find("nope") != std::string::npos);
  CHECK(respkit_scenario_from_file("/nonexistent/path.json", &bad) ==
        RESPKIT_ERROR_IO);
}

TEST_CASE("single-event analysis end to end") {
  Scenario sc;
  respkit_report* report = nullptr;
  REQUIRE(respkit_analyze_event(sc.handle, RESPKIT_OUTPUT_SIGNAL, -1.5,
                                "reject", &report) == RESPKIT_OK);

  respkit_report_values v{};
  REQUIRE(respkit_report_get(report, &v) == RESPKIT_OK);
  CHECK(std::abs(v.resp_information - 0.79) < 0.02);
  CHECK(v.rsnble_reject == 1.0);
  CHECK(v.rsnble_accept < 1e-6);
  CHECK(v.flags == 0);

  char* json = nullptr;
  REQUIRE(respkit_report_json(report, &json) == RESPKIT_OK);
  nlohmann::json j = nlohmann::json::parse(json);
  CHECK(j.at("resp_information").get<double>() == v.resp_information);
  CHECK(j.at("x_a").at("signal").get<double>() == v.x_a[0]);
  CHECK(j.at("reasonability").at("reject").get<double>() == 1.0);
  respkit_string_free(json);
  respkit_report_free(report);

  CHECK(respkit_analyze_event(sc.handle, RESPKIT_OUTPUT_SIGNAL, -1.5, "defer",
                              &report) == RESPKIT_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("information share and softmax helpers") {
  double x_a[2] = {0.0705, 0.9295};
  double x_as[2] = {0.7113, 0.2887};
  double x_ah[2] = {0.00763, 0.99237};
  double resp = 0.0, d_sys = 0.0, d_hum = 0.0;
  int coincident = -1;
  REQUIRE(respkit_resp_information(x_a, x_as, x_ah, 2, &resp, &d_sys, &d_hum,
                                   &coincident) == RESPKIT_OK);
  CHECK(std::abs(resp - 0.78) <= 0.02);
  CHECK(coincident == 0);
  REQUIRE(respkit_resp_information(x_a, x_a, x_a, 2, &resp, &d_sys, &d_hum,
                                   &coincident) == RESPKIT_OK);
  CHECK(resp == 0.5);
  CHECK(coincident == 1);

  double utilities[2] = {-8.4, 7.6};
  double probs[2] = {0, 0};
  REQUIRE(respkit_softmax(utilities, 2, 1.0, probs) == RESPKIT_OK);
  CHECK(probs[0] == doctest::Approx(1.12535162055095e-7).epsilon(1e-9));
  CHECK(respkit_softmax(utilities, 2, 0.0, probs) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);

  double r = 0.0;
  REQUIRE(respkit_reasonability(utilities, 2, 1, 1.0, &r) == RESPKIT_OK);
  CHECK(r == 1.0);
  REQUIRE(respkit_reasonability(utilities, 2, 0, 1.0, &r) == RESPKIT_OK);
  CHECK(r < 1e-6);
  CHECK(respkit_reasonability(utilities, 2, 5, 1.0, &r) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("indexed resp_average") {
  // Outcome copies the condition.
  int y[6] = {0, 1, 0, 1, 0, 1};
  int z_copy[6] = {0, 1, 0, 1, 0, 1};
  respkit_resp_summary summary{};
  REQUIRE(respkit_resp_average(y, z_copy, 6, 0.0, &summary) == RESPKIT_OK);
  CHECK(summary.resp_z == 0.0);

  // Outcome independent of the condition.
  int y_ind[8] = {0, 0, 1, 1, 0, 0, 1, 1};
  int z_ind[8] = {0, 1, 0, 1, 0, 1, 0, 1};
  REQUIRE(respkit_resp_average(y_ind, z_ind, 8, 0.0, &summary) == RESPKIT_OK);
  CHECK(summary.resp_z == 1.0);
  CHECK(summary.n_events == 8);

  // Constant outcome is a domain error.
  int z_const[6] = {1, 1, 1, 1, 1, 1};
  CHECK(respkit_resp_average(y, z_const, 6, 0.0, &summary) ==
        RESPKIT_ERROR_DOMAIN);
  CHECK(respkit_resp_average(y, z_copy, 0, 0.0, &summary) ==
        RESPKIT_ERROR_DOMAIN);
}

TEST_CASE("simulation, logs, and the oracle through the C surface") {
  Scenario sc;
  auto csv = temp_path("respkit_capi_sim.csv");
  auto sidecar = temp_path("respkit_capi_sim.config.json");

  REQUIRE(respkit_simulate_to_csv(sc.handle, 5000, 271828,
                                  RESPKIT_POLICY_MAXIMIZE_EV,
                                  csv.string().c_str(),
                                  sidecar.string().c_str()) == RESPKIT_OK);
  nlohmann::json side = nlohmann::json::parse(slurp(sidecar));
  CHECK(side.at("seed").get<uint64_t>() == 271828);
  CHECK(side.at("scenario").at("system_beta").is_number());

  SUBCASE("identical seeds give byte-identical files") {
    auto csv2 = temp_path("respkit_capi_sim2.csv");
    REQUIRE(respkit_simulate_to_csv(sc.handle, 5000, 271828,
                                    RESPKIT_POLICY_MAXIMIZE_EV,
                                    csv2.string().c_str(),
                                    nullptr) == RESPKIT_OK);
    CHECK(slurp(csv) == slurp(csv2));
    std::filesystem::remove(csv2);
  }

  respkit_log* log = nullptr;
  REQUIRE(respkit_log_load_csv(csv.string().c_str(), &log) == RESPKIT_OK);
  CHECK(respkit_log_size(log) == 5000);

  respkit_resp_summary summary{};
  REQUIRE(respkit_log_resp(log, 0, 0.0, &summary) == RESPKIT_OK);
  CHECK(summary.n_events == 5000);

  double analytic = 0.0;
  REQUIRE(respkit_analytic_resp_z(sc.handle, RESPKIT_POLICY_MAXIMIZE_EV,
                                  &analytic) == RESPKIT_OK);
  CHECK(analytic == doctest::Approx(0.4225213076018355).epsilon(1e-6));
  CHECK(std::abs(summary.resp_z - analytic) < 0.05);

  double q = 0.0;
  REQUIRE(respkit_accept_probability(sc.handle, RESPKIT_OUTPUT_SIGNAL, 1,
                                     RESPKIT_POLICY_MAXIMIZE_EV,
                                     &q) == RESPKIT_OK);
  CHECK(q > 0.9);

  respkit_series_point* points = nullptr;
  size_t n_points = 0;
  REQUIRE(respkit_log_resp_series(log, 0, 1000, 1000, 0.0, &points,
                                  &n_points) == RESPKIT_OK);
  CHECK(n_points == 5);
  CHECK(points[4].start == 4000);
  CHECK(points[0].has_value == 1);
  respkit_series_free(points);

  char* json = nullptr;
  REQUIRE(respkit_log_report_json(log, 100, 1000, 1000, 0.0, &json) ==
          RESPKIT_OK);
  nlohmann::json report = nlohmann::json::parse(json);
  CHECK(report.at("burn_in").get<size_t>() == 100);
  CHECK(report.at("series").is_array());
  respkit_string_free(json);

  respkit_log_free(log);
  std::filesystem::remove(csv);
  std::filesystem::remove(sidecar);

  SUBCASE("policy validation") {
    double out = 0.0;
    CHECK(respkit_analytic_resp_z(sc.handle, 9, &out) ==
          RESPKIT_ERROR_INVALID_ARGUMENT);
  }
}

TEST_CASE("error messages are thread-local") {
  double out = 0.0;
  std::thread other([&] {
    double v = 0.0;
    double bad[2] = {0.9, 0.9};
    CHECK(respkit_entropy(bad, 2, &v) == RESPKIT_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(respkit_last_error()).find("sum to") !=
          std::string::npos);
  });
  double p[2] = {0.5, 0.5};
  double q[2] = {1.0, 0.0};
  CHECK(respkit_kl_divergence(p, q, 2, &out) == RESPKIT_ERROR_DOMAIN);
  other.join();
  // This thread still sees its own KLD failure, not the other thread's.
  CHECK(std::string(respkit_last_error()).find("absolute continuity") !=
        std::string::npos);
}

TEST_CASE("sweeps through the C surface") {
  Scenario sc;
  respkit_sweep_spec spec;
  respkit_sweep_spec_defaults(&spec);
  CHECK(spec.d_human_steps == 61);
  CHECK(spec.n_e_values == 5);

  spec.d_human_steps = 4;
  spec.d_system_steps = 3;
  double e_values[2] = {-1.5, 1.5};
  spec.e_values = e_values;
  spec.n_e_values = 2;

  auto csv = temp_path("respkit_capi_sweep.csv");
  REQUIRE(respkit_sweep_to_csv(sc.handle, &spec, csv.string().c_str()) ==
          RESPKIT_OK);
  std::string text = slurp(csv);
  CHECK(text.rfind("e,d_human,d_system,", 0) == 0);
  size_t lines = static_cast<size_t>(
      std::count(text.begin(), text.end(), '\n'));
  CHECK(lines == 4 * 3 * 2 + 1);
  std::filesystem::remove(csv);

  auto prefix = temp_path("respkit_capi_sweep");
  REQUIRE(respkit_sweep_to_svg(sc.handle, &spec, prefix.string().c_str()) ==
          RESPKIT_OK);
  for (const char* suffix : {"_e-1.5.svg", "_e1.5.svg"}) {
    auto path = prefix.string() + suffix;
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove(path);
  }

  spec.d_human_steps = 1;
  CHECK(respkit_sweep_to_csv(sc.handle, &spec, csv.string().c_str()) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);
  spec.d_human_steps = 4;
  spec.e_values = nullptr;
  CHECK(respkit_sweep_to_csv(sc.handle, &spec, csv.string().c_str()) ==
        RESPKIT_ERROR_INVALID_ARGUMENT);
}
