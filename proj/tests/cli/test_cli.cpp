#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

// RESPKIT_CLI_PATH is injected by the build with the location of the built
// binary.
#ifndef RESPKIT_CLI_PATH
#error "RESPKIT_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr folded away; the tests only assert on stdout and
// the exit code.
RunResult run_cli(const std::string& args) {
  std::string command =
      std::string(RESPKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string write_scenario() {
  auto path = temp_path("respkit_cli_scenario.json");
  std::ofstream out(path);
  out << R"({"prior_signal":0.2,"d_prime_human":1.5,"d_prime_system":2.0,
             "system_beta":"optimal",
             "payoffs":{"v_tp":10,"v_tn":10,"v_fp":-10,"v_fn":-20}})";
  return path.string();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("event subcommand") {
  std::string scenario = write_scenario();
  SUBCASE("human-readable report") {
    RunResult r = run_cli("event --scenario " + scenario +
                          " --system-output signal --observed -1.5 "
                          "--action reject");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("resp(x_a)") != std::string::npos);
    CHECK(r.out.find("0.786") != std::string::npos);
    CHECK(r.out.find("chosen action reject") != std::string::npos);
  }
  SUBCASE("json report carries the worked-example values") {
    RunResult r = run_cli("event --scenario " + scenario +
                          " --system-output signal --observed -1.5 "
                          "--action reject --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);  // single document
    CHECK(std::abs(j.at("resp_information").get<double>() - 0.79) < 0.02);
    CHECK(std::abs(j.at("x_a_system_only").at("signal").get<double>() - 0.72) <
          0.01);
    CHECK(j.at("reasonability").at("reject").get<double>() == 1.0);
    CHECK(j.at("reasonability").at("accept").get<double>() < 1e-6);
  }
  SUBCASE("missing required flag is a usage error") {
    RunResult r = run_cli("event --scenario " + scenario +
                          " --system-output signal --observed -1.5");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("bad flag values are usage errors") {
    CHECK(run_cli("event --scenario " + scenario +
                  " --system-output sideways --observed 0 --action reject")
              .exit_code == 1);
    CHECK(run_cli("event --scenario " + scenario +
                  " --system-output signal --observed 0 --action defer")
              .exit_code == 1);
  }
  SUBCASE("bad scenario files are data errors") {
    auto bad = temp_path("respkit_cli_bad.json");
    std::ofstream(bad) << R"({"prior_signal":0.2,"surprise":1})";
    RunResult r = run_cli("event --scenario " + bad.string() +
                          " --system-output signal --observed 0 "
                          "--action accept");
    CHECK(r.exit_code == 2);
    CHECK(run_cli("event --scenario /nonexistent.json --system-output signal"
                  " --observed 0 --action accept")
              .exit_code == 2);
  }
}

TEST_CASE("rates subcommand") {
  SUBCASE("optimal criterion reproduces the reference rates") {
    RunResult r = run_cli(
        "rates --d-prime 2 --beta optimal --prior 0.2 "
        "--payoffs 10,10,-10,-20 --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("p_tp").get<double>() - 0.69) < 0.005);
    CHECK(std::abs(j.at("p_fn").get<double>() - 0.31) < 0.005);
    CHECK(std::abs(j.at("p_fp").get<double>() - 0.07) < 0.005);
    CHECK(std::abs(j.at("p_tn").get<double>() - 0.93) < 0.005);
    CHECK(j.at("beta").get<double>() == doctest::Approx(8.0 / 3.0));
  }
  SUBCASE("numeric criterion") {
    RunResult r = run_cli("rates --d-prime 1.5 --beta 2.6667 --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("p_tp").get<double>() - 0.538) < 5e-4);
    CHECK(std::abs(j.at("p_fp").get<double>() - 0.080) < 5e-4);
    CHECK(std::abs(j.at("p_tn").get<double>() - 0.920) < 5e-4);
  }
  SUBCASE("usage errors") {
    CHECK(run_cli("rates --d-prime 0 --beta 1").exit_code == 1);
    CHECK(run_cli("rates --d-prime 2 --beta optimal").exit_code == 1);
    CHECK(run_cli("rates --d-prime 2 --beta sometimes").exit_code == 1);
    CHECK(run_cli("rates --d-prime 2 --beta optimal --prior 0.2 "
                  "--payoffs 1,2,3")
              .exit_code == 1);
  }
}

TEST_CASE("simulate and log subcommands") {
  std::string scenario = write_scenario();
  auto csv = temp_path("respkit_cli_events.csv");
  auto sidecar = temp_path("respkit_cli_events.config.json");

  SUBCASE("simulation is reproducible and analyzable") {
    RunResult r = run_cli("simulate --scenario " + scenario +
                          " --trials 20000 --seed 42 --out " + csv.string());
    CHECK(r.exit_code == 0);
    REQUIRE(std::filesystem::exists(csv));
    REQUIRE(std::filesystem::exists(sidecar));
    std::string first = slurp(csv);

    RunResult again = run_cli("simulate --scenario " + scenario +
                              " --trials 20000 --seed 42 --out " +
                              csv.string());
    CHECK(again.exit_code == 0);
    CHECK(slurp(csv) == first);  // byte-identical on the same seed

    nlohmann::json side = nlohmann::json::parse(slurp(sidecar));
    CHECK(side.at("n_trials").get<int>() == 20000);
    CHECK(side.at("human_policy").get<std::string>() == "maximize_ev");

    RunResult log = run_cli("log --input " + csv.string() + " --json");
    CHECK(log.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(log.out);
    CHECK(j.at("n_events").get<int>() == 20000);
    // The quadrature oracle value for this scenario is ~0.4225.
    CHECK(std::abs(j.at("resp_z").get<double>() - 0.4225) < 0.02);
    CHECK(!j.contains("series"));

    RunResult windowed = run_cli("log --input " + csv.string() +
                                 " --burn-in 1000 --window-size 5000 "
                                 "--stride 5000 --json");
    CHECK(windowed.exit_code == 0);
    nlohmann::json w = nlohmann::json::parse(windowed.out);
    CHECK(w.at("series").size() == 3);
    CHECK(w.at("series")[0].at("start").get<int>() == 1000);

    std::filesystem::remove(csv);
    std::filesystem::remove(sidecar);
  }
  SUBCASE("zero trials is a usage error") {
    CHECK(run_cli("simulate --scenario " + scenario +
                  " --trials 0 --seed 1 --out " + csv.string())
              .exit_code == 1);
  }
  SUBCASE("degenerate logs are data errors") {
    auto constant = temp_path("respkit_cli_constant.csv");
    std::ofstream(constant) << "y_a,z\n0,accept\n1,accept\n0,accept\n";
    CHECK(run_cli("log --input " + constant.string()).exit_code == 2);
    std::filesystem::remove(constant);
  }
  SUBCASE("copy logs give zero responsibility") {
    auto copy = temp_path("respkit_cli_copy.csv");
    std::ofstream(copy) << "y_a,z\n0,a\n1,b\n0,a\n1,b\n";
    RunResult r = run_cli("log --input " + copy.string() + " --json");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out).at("resp_z").get<double>() == 0.0);
    std::filesystem::remove(copy);
  }
  SUBCASE("stride without a window is a usage error") {
    std::ofstream(csv) << "y_a,z\n0,a\n1,b\n";
    CHECK(run_cli("log --input " + csv.string() + " --stride 5").exit_code ==
          1);
    std::filesystem::remove(csv);
  }
}

TEST_CASE("sweep subcommand") {
  std::string scenario = write_scenario();
  auto out = temp_path("respkit_cli_sweep.csv");

  SUBCASE("small csv sweep") {
    RunResult r = run_cli("sweep --scenario " + scenario +
                          " --d-human 0.6:3.0:5 --d-system 0.6:3.0:4 "
                          "--e -1.5,1.5 --out " + out.string());
    CHECK(r.exit_code == 0);
    std::string text = slurp(out);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5 * 4 * 2 + 1);
    std::filesystem::remove(out);
  }
  SUBCASE("default grid covers 5 slices of 61x61 cells") {
    RunResult r = run_cli("sweep --scenario " + scenario + " --out " +
                          out.string());
    CHECK(r.exit_code == 0);
    std::string text = slurp(out);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5 * 61 * 61 + 1);
    std::filesystem::remove(out);
  }
  SUBCASE("svg format writes one file per slice") {
    auto prefix = temp_path("respkit_cli_sweep");
    RunResult r = run_cli("sweep --scenario " + scenario +
                          " --d-human 0.6:3.0:4 --d-system 0.6:3.0:4 "
                          "--e -1.5,0 --format svg --out " + prefix.string());
    CHECK(r.exit_code == 0);
    std::string first = slurp(prefix.string() + "_e-1.5.svg");
    RunResult again = run_cli("sweep --scenario " + scenario +
                              " --d-human 0.6:3.0:4 --d-system 0.6:3.0:4 "
                              "--e -1.5,0 --format svg --out " +
                              prefix.string());
    CHECK(again.exit_code == 0);
    CHECK(again.out == r.out);
    CHECK(slurp(prefix.string() + "_e-1.5.svg") == first);  // bit-identical
    for (const char* suffix : {"_e-1.5.svg", "_e0.svg"}) {
      auto path = prefix.string() + suffix;
      CHECK(std::filesystem::exists(path));
      std::filesystem::remove(path);
    }
  }
  SUBCASE("unwritable output paths are data errors") {
    CHECK(run_cli("sweep --scenario " + scenario +
                  " --d-human 0.6:3.0:2 --d-system 0.6:3.0:2 --e 0 "
                  "--out /nonexistent-dir/grid.csv")
              .exit_code == 2);
    CHECK(run_cli("simulate --scenario " + scenario +
                  " --trials 5 --seed 1 --out /nonexistent-dir/events.csv")
              .exit_code == 2);
  }
  SUBCASE("malformed ranges and formats are usage errors") {
    CHECK(run_cli("sweep --scenario " + scenario + " --d-human 0.6:3.0 "
                  "--out " + out.string())
              .exit_code == 1);
    CHECK(run_cli("sweep --scenario " + scenario + " --d-human 3.0:0.6:0 "
                  "--out " + out.string())
              .exit_code == 1);
    CHECK(run_cli("sweep --scenario " + scenario + " --e 1.0,oops --out " +
                  out.string())
              .exit_code == 1);
    CHECK(run_cli("sweep --scenario " + scenario + " --format tiff --out " +
                  out.string())
              .exit_code == 1);
  }
}

TEST_CASE("top-level usage") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("event --help").exit_code == 0);
}
