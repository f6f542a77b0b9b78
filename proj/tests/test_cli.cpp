#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "qep/docio.hpp"

// Exit-status contract and report behavior of the installed CLI binary:
// 0 all-pass, 1 verification failure, 2 input or parse error.

namespace {

const std::string kCli = QEP_CLI_PATH;
const std::string kFixtures = QEP_FIXTURE_DIR;

struct RunResult {
  int status = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_test_stdout.txt";
  const std::string command = kCli + " " + args + " > " + out_path + " 2> cli_test_stderr.txt";
  const int raw = std::system(command.c_str());
  RunResult result;
  result.status = WEXITSTATUS(raw);
  result.stdout_text = qep::docio::read_text(out_path);
  return result;
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run_cli("verify " + kFixtures + "/structure_kd_valid.json --seed 3").status == 0);
  CHECK(run_cli("verify " + kFixtures + "/structure_kd_violation.json --seed 3").status == 1);
  CHECK(run_cli("verify " + kFixtures + "/malformed.json").status == 2);
  CHECK(run_cli("verify no_such_file.json").status == 2);
}

TEST_CASE("verify report carries the violation witness") {
  const RunResult run =
      run_cli("verify " + kFixtures + "/structure_kd_violation.json --seed 3 --samples 20");
  const auto report = qep::docio::Json::parse(run.stdout_text);
  CHECK(report.at("command") == "verify");
  CHECK(report.at("passed") == false);
  const auto& violations = report.at("situations").at(0).at("violations");
  bool found_43 = false;
  for (const auto& v : violations)
    if (v.at("condition") == "4.3" && v.at("domain_index") == 1) found_43 = true;
  CHECK(found_43);
}

TEST_CASE("interactions appear in the verify report") {
  const RunResult run = run_cli("verify " + kFixtures + "/structure_interactions.json");
  CHECK(run.status == 0);
  const auto report = qep::docio::Json::parse(run.stdout_text);
  REQUIRE(report.contains("interactions"));
  CHECK(report.at("interactions").at(0).at("satisfied") == true);
  CHECK(report.at("classification").at("harmonic") == true);
  CHECK(report.at("classification").at("perfect") == true);
  // Most situations in this fixture lack the truth-value projections.
  CHECK(report.at("classification").at("sound") == false);
}

TEST_CASE("channel-check exit codes and fields") {
  const RunResult good = run_cli("channel-check " + kFixtures + "/channel_depolarizing.json");
  CHECK(good.status == 0);
  const auto good_report = qep::docio::Json::parse(good.stdout_text);
  CHECK(good_report.at("kraus_completeness") == true);
  CHECK(good_report.at("trace_preserving") == true);
  CHECK(good_report.at("completely_positive") == true);

  const RunResult incomplete =
      run_cli("channel-check " + kFixtures + "/channel_incomplete.json");
  CHECK(incomplete.status == 1);
  const auto incomplete_report = qep::docio::Json::parse(incomplete.stdout_text);
  CHECK(incomplete_report.at("kraus_completeness") == false);
  CHECK(incomplete_report.at("trace_preserving") == false);

  const RunResult transpose = run_cli("channel-check " + kFixtures + "/channel_transpose.json");
  CHECK(transpose.status == 1);
  const auto transpose_report = qep::docio::Json::parse(transpose.stdout_text);
  CHECK(transpose_report.at("kraus_completeness").is_null());
  CHECK(transpose_report.at("trace_preserving") == true);
  CHECK(transpose_report.at("completely_positive") == false);
  CHECK(transpose_report.at("choi_min_eigenvalue").get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("distance prints twelve significant digits") {
  const RunResult run = run_cli("distance identity hadamard");
  CHECK(run.status == 0);
  CHECK(run.stdout_text == "0.5\n");

  const RunResult self = run_cli("distance identity identity");
  CHECK(self.stdout_text == "0\n");

  const RunResult orthogonal = run_cli("distance identity \"[[[0,0],[1,0]],[[1,0],[0,0]]]\"");
  CHECK(orthogonal.stdout_text == "1\n");

  // Rotation by 0.3 radians: the distance is 0.6/pi, irrational, so the
  // printed value must round-trip to it at 12-digit precision.
  const double c = std::cos(0.3);
  const double s = std::sin(0.3);
  std::ostringstream matrix;
  matrix.precision(17);
  matrix << "\"[[[" << c << ",0],[" << -s << ",0]],[[" << s << ",0],[" << c << ",0]]]\"";
  const RunResult rotated = run_cli("distance identity " + matrix.str());
  CHECK(rotated.status == 0);
  CHECK(std::abs(std::stod(rotated.stdout_text) - 0.6 / 3.14159265358979323846) < 1e-11);

  CHECK(run_cli("distance identity bogus").status == 2);
  CHECK(run_cli("distance identity \"[[[1,0],[1,0]],[[1,0],[1,0]]]\"").status == 2);
}

TEST_CASE("qubit cap env override") {
  // The three-qubit protocol cannot run under a two-qubit cap.
  const std::string out = "cli_env_stdout.txt";
  const int raw = std::system(("QEP_MAX_QUBITS=2 " + kCli + " teleport --a0 1 --a1 0 > " + out +
                               " 2> cli_env_stderr.txt")
                                  .c_str());
  CHECK(WEXITSTATUS(raw) == 2);
}

TEST_CASE("teleport renormalizes slightly-off inputs with a warning") {
  const RunResult run = run_cli("teleport --a0 0.70710678 --a1 0.70710678");
  CHECK(run.status == 0);
  const auto report = qep::docio::Json::parse(run.stdout_text);
  CHECK(report.at("renormalized") == true);
  CHECK(report.at("identity_check") == true);
}

TEST_CASE("teleport sanity and input validation") {
  const RunResult run = run_cli("teleport --a0 1 --a1 0");
  CHECK(run.status == 0);
  const auto report = qep::docio::Json::parse(run.stdout_text);
  CHECK(report.at("identity_check") == true);
  CHECK(report.at("branches").size() == 4);
  for (const auto& branch : report.at("branches"))
    CHECK(branch.at("probability").get<double>() == doctest::Approx(0.25));

  CHECK(run_cli("teleport --a0 1 --a1 1").status == 2);
  CHECK(run_cli("teleport --a0 x --a1 0").status == 2);
}

TEST_CASE("teleport sample mode emits a single branch") {
  const RunResult run = run_cli("teleport --a0 1 --a1 0 --sample-mode --seed 11");
  CHECK(run.status == 0);
  const auto report = qep::docio::Json::parse(run.stdout_text);
  CHECK(!report.contains("branches"));
  REQUIRE(report.contains("sampled_branch"));
  CHECK(report.at("sampled_branch").contains("order"));
}

TEST_CASE("reports are byte-identical across runs with the same seed") {
  const std::string out_a = "cli_det_a.json";
  const std::string out_b = "cli_det_b.json";
  const std::string args = "verify " + kFixtures + "/structure_kd_valid.json --seed 42 --samples 60 --output ";
  REQUIRE(WEXITSTATUS(std::system((kCli + " " + args + out_a).c_str())) == 0);
  REQUIRE(WEXITSTATUS(std::system((kCli + " " + args + out_b).c_str())) == 0);
  CHECK(qep::docio::read_text(out_a) == qep::docio::read_text(out_b));
}
