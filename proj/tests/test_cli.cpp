#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string path = "cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd =
      std::string(MUBSIM_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.code = raw == -1 ? -1 : WEXITSTATUS(raw);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  res.out = buf.str();
  std::remove(path.c_str());
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("witness emits the exact JSON field set in order") {
  const auto res = run_cli("witness --criterion rate-d3 --gamma 1 --eta 0.2");
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::ordered_json::parse(res.out);
  const std::vector<std::string> expected{
      "criterion", "p",   "gamma",   "eta",     "cutoff",         "weighting",
      "renormalized", "lhs", "rhs", "witness", "verdict", "truncated_mass"};
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc.items()) keys.push_back(key);
  CHECK(keys == expected);
  CHECK(doc["criterion"] == "rate-d3");
  CHECK(doc["p"] == 3);
  CHECK(doc["cutoff"] == 10);
  CHECK(doc["weighting"] == "state-norm");
  CHECK(doc["renormalized"] == true);
  CHECK(doc["verdict"] == "entangled");
  CHECK(std::abs(doc["witness"].get<double>() - -0.044971935656026) < 1e-9);
}

TEST_CASE("witness carries a reason when not evaluable") {
  const auto res = run_cli("witness --criterion rate-d3 --gamma 1 --eta 0");
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["verdict"] == "inconclusive");
  CHECK(doc["rhs"].is_null());
  CHECK(doc["witness"].is_null());
  CHECK(doc["reason"].is_string());
  CHECK_FALSE(doc["reason"].get<std::string>().empty());
}

TEST_CASE("mub exports p+1 certified matrices") {
  const auto res = run_cli("mub --p 3");
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["p"] == 3);
  REQUIRE(doc["settings"].size() == 4);
  for (const auto& setting : doc["settings"]) {
    REQUIRE(setting["matrix"].size() == 3);
    for (const auto& row : setting["matrix"]) {
      REQUIRE(row.size() == 3);
      for (const auto& entry : row) REQUIRE(entry.size() == 2);
    }
  }
  CHECK(doc["certification"]["pass"] == true);
  CHECK(doc["certification"]["max_overlap_dev"].get<double>() < 1e-12);
}

TEST_CASE("sweep grid shape, determinism, and monotone sign structure") {
  const std::string grid =
      "sweep --criterion rate-d3 --gamma-min 0.2 --gamma-max 2 --gamma-steps 10 "
      "--eta-min 0.05 --eta-max 1 --eta-steps 10 --cutoff 8";
  const auto serial = run_cli(grid + " --jobs 1");
  const auto parallel = run_cli(grid + " --jobs 4");
  REQUIRE(serial.code == 0);
  REQUIRE(parallel.code == 0);
  CHECK(serial.out == parallel.out);

  const auto rows = lines_of(serial.out);
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == "criterion,p,gamma,eta,cutoff,lhs,rhs,witness,entangled");

  // rows are gamma-major; within each gamma block the verdict flips at most
  // once, from not-entangled to entangled, as eta grows
  for (int block = 0; block < 10; ++block) {
    bool seen_entangled = false;
    for (int i = 0; i < 10; ++i) {
      const auto& row = rows[static_cast<std::size_t>(1 + block * 10 + i)];
      const bool entangled = row.rfind(",true") == row.size() - 5;
      if (seen_entangled) CHECK(entangled);
      seen_entangled = seen_entangled || entangled;
    }
    CHECK(seen_entangled);  // eta = 1 endpoint is always conclusive here
  }
}

TEST_CASE("critical-eta reports thresholds and degenerate reasons as JSON") {
  const auto res = run_cli("critical-eta --criterion intensity-d3 --gamma 1");
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(std::abs(doc[0]["eta_critical"].get<double>() - 0.25) < 0.005);
  CHECK(doc[0]["iterations"].get<int>() > 0);

  const auto never = run_cli("critical-eta --criterion rate-p --gamma 2");
  const auto never_doc = nlohmann::json::parse(never.out);
  CHECK(never_doc[0]["eta_critical"].is_null());
  CHECK(never_doc[0]["reason"].is_string());

  const auto grid = run_cli(
      "critical-eta --criterion intensity-d3 --gamma-min 0.5 --gamma-max 1.5 --gamma-steps 3");
  const auto grid_doc = nlohmann::json::parse(grid.out);
  REQUIRE(grid_doc.size() == 3);
  for (const auto& entry : grid_doc)
    CHECK(std::abs(entry["eta_critical"].get<double>() - 0.25) < 0.005);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("mub --p 4").code == 2);
  CHECK(run_cli("witness --eta 1.5").code == 2);
  CHECK(run_cli("witness --criterion rate-d7").code == 2);
  CHECK(run_cli("sweep --gamma-min 1 --gamma-max 2").code == 2);  // steps missing
  CHECK(run_cli("sweep --gamma 1 --gamma-min 0.5 --gamma-max 2 --gamma-steps 3").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("sweep -o /nonexistent-dir/out.csv --eta-steps 2 --eta-min 0 --eta-max 1").code == 2);
  CHECK(run_cli("witness --p 6").code == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("witness --help").code == 0);
}

TEST_CASE("repeated single-point runs are byte-identical") {
  const std::string cmd = "witness --criterion number-p --p 5 --gamma 0.7 --eta 0.6 --cutoff 6";
  const auto first = run_cli(cmd);
  const auto second = run_cli(cmd);
  CHECK(first.out == second.out);
  CHECK_FALSE(first.out.empty());
}
