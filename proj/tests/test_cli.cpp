#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwalk/cli.hpp"
#include "qwalk/io.hpp"

using qwalk::cli::run;

TEST_SUITE_BEGIN("cli");

namespace {

namespace fs = std::filesystem;

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "qwalk_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string out_path(const std::string& name) { return (test_dir() / name).string(); }

struct CapturedStderr {
  std::ostringstream stream;
  std::streambuf* old;

  CapturedStderr() : old(std::cerr.rdbuf(stream.rdbuf())) {}
  ~CapturedStderr() { std::cerr.rdbuf(old); }
  std::string text() const { return stream.str(); }
};

std::vector<std::string> data_rows(const std::string& content) {
  std::vector<std::string> rows;
  std::stringstream ss(content);
  std::string line;
  bool header_row_seen = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (!header_row_seen) {
      header_row_seen = true;  // column header
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

}  // namespace

TEST_CASE("search-scan: determinism over two sides, odd side rejected") {
  const std::string out1 = out_path("scan1.csv");
  const std::string out2 = out_path("scan2.csv");
  CHECK(run({"search-scan", "--sides", "8,16", "--out", out1}) == 0);
  CHECK(run({"search-scan", "--sides", "8,16", "--out", out2}) == 0);

  const std::string a = qwalk::io::read_text(out1);
  const std::string b = qwalk::io::read_text(out2);
  CHECK(a == b);
  CHECK(data_rows(a).size() == 2);
  CHECK(a.find("# qwalk") == 0);
  CHECK(a.find("config:") != std::string::npos);

  CapturedStderr captured;
  CHECK(run({"search-scan", "--sides", "7", "--out", out_path("scan_bad.csv")}) == 1);
  CHECK(captured.text().find("even") != std::string::npos);
}

TEST_CASE("search-scan requires --out") {
  CapturedStderr captured;
  CHECK(run({"search-scan", "--sides", "8"}) == 1);
}

TEST_CASE("search-scan marks a failed row and exits with the partial code") {
  // no eigenvector reaches overlap 0.99, so the row fails its contract
  const std::string out = out_path("scan_partial.csv");
  CapturedStderr captured;
  CHECK(run({"search-scan", "--sides", "8", "--threshold", "0.99", "--out", out}) == 2);
  const auto rows = data_rows(qwalk::io::read_text(out));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].find("error") != std::string::npos);
}

TEST_CASE("limit-check: defaults give three strictly decreasing error rows") {
  const std::string out = out_path("conv.csv");
  CHECK(run({"limit-check", "--graph", "cycle:8", "--coin", "hadamard", "--tau", "2.0",
             "--s", "0.1,0.05,0.025", "--out", out}) == 0);
  const auto rows = data_rows(qwalk::io::read_text(out));
  REQUIRE(rows.size() == 3);
  std::vector<double> errors;
  for (const auto& row : rows) {
    errors.push_back(std::stod(row.substr(row.rfind(',') + 1)));
  }
  CHECK(errors[0] > errors[1]);
  CHECK(errors[1] > errors[2]);
}

TEST_CASE("limit-check: s = 1 is an O(1) error row") {
  const std::string out = out_path("conv_s1.csv");
  CHECK(run({"limit-check", "--graph", "cycle:8", "--coin", "hadamard", "--tau", "1.0",
             "--s", "1.0", "--out", out}) == 0);
  const auto rows = data_rows(qwalk::io::read_text(out));
  REQUIRE(rows.size() == 1);
  CHECK(std::stod(rows[0].substr(rows[0].rfind(',') + 1)) > 0.01);
}

TEST_CASE("limit-check rejects the DFT coin") {
  CapturedStderr captured;
  CHECK(run({"limit-check", "--graph", "cycle:8", "--coin", "dft", "--out",
             out_path("never.csv")}) == 1);
  CHECK(captured.text().find("unsupported") != std::string::npos);
}

TEST_CASE("search-run writes the curve and the analysis header") {
  const std::string out = out_path("run8.csv");
  CHECK(run({"search-run", "--side", "8", "--marked", "0", "--out", out}) == 0);
  const std::string content = qwalk::io::read_text(out);
  CHECK(content.find("theta_alpha:") != std::string::npos);
  CHECK(content.find("p_peak:") != std::string::npos);
  const auto rows = data_rows(content);
  CHECK(rows.size() > 20);
  CHECK(rows[0].rfind("0,", 0) == 0);  // t = 0 sample first
}

TEST_CASE("evolve: family and ctqw modes run") {
  const std::string out1 = out_path("evolve_family.csv");
  CHECK(run({"evolve", "--graph", "cycle:8", "--coin", "hadamard", "--mode", "family",
             "--steps", "10", "--s", "0.5", "--initial", "basis:0,0", "--out", out1}) == 0);
  CHECK(data_rows(qwalk::io::read_text(out1)).size() == 8);

  const std::string out2 = out_path("evolve_ctqw.csv");
  CHECK(run({"evolve", "--graph", "torus:4", "--coin", "grover", "--marked", "0", "--mode",
             "ctqw-search", "--time", "2.0", "--initial", "uniform", "--out", out2}) == 0);
  CHECK(data_rows(qwalk::io::read_text(out2)).size() == 16);

  CHECK(run({"evolve", "--graph", "cycle:8", "--mode", "warp", "--out",
             out_path("never.csv")}) == 1);
}

TEST_CASE("evolve: distribution sums to one") {
  const std::string out = out_path("evolve.csv");
  CHECK(run({"evolve", "--graph", "cycle:4", "--coin", "hadamard", "--mode", "dtqw",
             "--steps", "3", "--initial", "basis:0,0", "--out", out}) == 0);
  const auto rows = data_rows(qwalk::io::read_text(out));
  REQUIRE(rows.size() == 4);
  double total = 0.0;
  for (const auto& row : rows) {
    total += std::stod(row.substr(row.find(',') + 1));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spectrum writes eigenvalues and optionally the operator") {
  const std::string out = out_path("spec.csv");
  const std::string dump = out_path("h.coo");
  CHECK(run({"spectrum", "--graph", "cycle:4", "--coin", "grover", "--form", "s_minus_f",
             "--dump-operator", dump, "--out", out}) == 0);
  CHECK(data_rows(qwalk::io::read_text(out)).size() == 8);
  CHECK(qwalk::io::read_text(dump).rfind("8 8", 0) == 0);
}

TEST_CASE("quotient: hypercube bit permutations reduce 24 to 6") {
  const std::string out = out_path("quotient.json");
  CHECK(run({"quotient", "--graph", "hypercube:3", "--coin", "grover", "--group",
             "bit-perms", "--out", out}) == 0);
  const auto j = nlohmann::json::parse(qwalk::io::read_text(out));
  CHECK(j.at("orbit_count").get<std::size_t>() == 6);
  CHECK(j.at("group").at("order").get<std::size_t>() == 6);
  CHECK(j.at("equivalence").at("max_deviation").get<double>() <= 1e-9);
  CHECK(j.at("reduced").at("dim").get<std::size_t>() == 6);
}

TEST_CASE("quotient: broken symmetry exits with the precondition code") {
  CapturedStderr captured;
  CHECK(run({"quotient", "--graph", "cycle:4", "--coin", "hadamard", "--group",
             "reflection", "--out", out_path("never.json")}) == 3);
  CHECK(captured.text().find("does not commute") != std::string::npos);
}

TEST_CASE("quotient: the trivial group returns the coined graph") {
  const std::string out = out_path("quotient_trivial.json");
  CHECK(run({"quotient", "--graph", "cycle:4", "--coin", "hadamard", "--group", "trivial",
             "--out", out}) == 0);
  const auto j = nlohmann::json::parse(qwalk::io::read_text(out));
  CHECK(j.at("orbit_count").get<std::size_t>() == 8);
  CHECK(j.at("quotient").at("edges").size() == 8);  // the 8-cycle G'
}

TEST_CASE("quotient: torus quarter-turn about the origin") {
  const std::string out = out_path("quotient_rot.json");
  CHECK(run({"quotient", "--graph", "torus:4", "--coin", "grover", "--group", "rotation4",
             "--out", out}) == 0);
  const auto j = nlohmann::json::parse(qwalk::io::read_text(out));
  CHECK(j.at("group").at("order").get<std::size_t>() == 4);
  CHECK(j.at("equivalence").at("max_deviation").get<double>() <= 1e-9);
  CHECK(j.at("orbit_count").get<std::size_t>() < 64);
}

TEST_CASE("quotient: unknown group tag is a usage error") {
  CapturedStderr captured;
  CHECK(run({"quotient", "--graph", "cycle:4", "--group", "nope", "--out",
             out_path("never.json")}) == 1);
}

TEST_CASE("classical-demo rows") {
  const std::string out = out_path("classical.csv");
  CHECK(run({"classical-demo", "--states", "2", "--tau", "1.0", "--eps", "0.1,0.05",
             "--out", out}) == 0);
  const auto rows = data_rows(qwalk::io::read_text(out));
  REQUIRE(rows.size() == 2);
  const double e1 = std::stod(rows[0].substr(rows[0].rfind(',') + 1));
  const double e2 = std::stod(rows[1].substr(rows[1].rfind(',') + 1));
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("validate: builders pass, a corrupted graph fails with code 3") {
  CHECK(run({"validate", "--graph", "torus:4", "--pairing", "edge_colored"}) == 0);

  // corrupt a cycle: make (0,0) a self-loop
  const std::string good = out_path("graph.json");
  CHECK(run({"validate", "--graph", "cycle:4", "--out", good}) == 0);

  nlohmann::json j;
  j["name"] = "broken";
  j["N"] = 4;
  j["d"] = 2;
  j["mode"] = "edge_colored";
  std::vector<std::size_t> pairing = {1, 0, 3, 2, 7, 6, 5, 4};
  pairing[0] = 0;
  j["pairing"] = pairing;
  const std::string bad = out_path("broken_graph.json");
  {
    std::ofstream f(bad);
    f << j.dump();
  }
  const std::string report_path = out_path("broken_report.json");
  CapturedStderr captured;
  CHECK(run({"validate", "--from-json", bad, "--out", report_path}) == 3);
  const auto report = nlohmann::json::parse(qwalk::io::read_text(report_path));
  CHECK(!report.at("ok").get<bool>());
  CHECK(!report.at("violations").empty());
}

TEST_CASE("usage errors: no subcommand, unknown flag") {
  CapturedStderr captured;
  CHECK(run(std::vector<std::string>{}) == 1);
  CHECK(run({"search-scan", "--nope", "1", "--out", out_path("x.csv")}) == 1);
  CHECK(run({"frobnicate"}) == 1);
}

TEST_CASE("help exits zero") {
  CHECK(run({"--help"}) == 0);
}

TEST_SUITE_END();
