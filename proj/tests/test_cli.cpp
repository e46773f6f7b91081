#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sphdeconv/cli.hpp"
#include "sphdeconv/sphere_geometry.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = sphdeconv::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cap_theta0() {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", 2 * sphdeconv::kPi / 41);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sphdeconv_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream f(line);
    std::string cell;
    while (std::getline(f, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("partition") {
  const Run r = cli({"partition", "--n", "100"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["s"] == 7);
  CHECK(j["theta0"].get<double>() == doctest::Approx(1.047198).epsilon(1e-6));
  CHECK(j["N"] == 100);

  const Run bad = cli({"partition", "--n", "49"});
  CHECK(bad.code != 0);
  const json e = json::parse(bad.err);
  CHECK(e["error"]["message"].get<std::string>().find("50") != std::string::npos);

  const fs::path dir = scratch("partition");
  for (const char* name : {"a", "b"}) {
    const std::string base = (dir / name).string();
    REQUIRE(cli({"partition", "--n", "500", "--out", base + ".json", "--nodes-out", base + ".csv"}).code == 0);
  }
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK_FALSE(fs::exists(dir / "a.json.tmp"));
}

TEST_CASE("binary exit codes") {
  const std::string bin = SPHDECONV_CLI_PATH;
  CHECK(std::system((bin + " partition --n 60 > /dev/null").c_str()) == 0);
  CHECK(std::system((bin + " partition --n 49 > /dev/null 2>&1").c_str()) != 0);
  CHECK(std::system((bin + " no-such-command > /dev/null 2>&1").c_str()) != 0);
}

TEST_CASE("filter") {
  const fs::path dir = scratch("filter");
  const Run r = cli({"filter", "--kind", "cap", "--theta0", cap_theta0(), "--m-max", "1400", "--gamma",
                     "1.5", "--zeta", "1.5", "--out", (dir / "cap.json").string(), "--scaled-csv",
                     (dir / "cap.csv").string()});
  REQUIRE(r.code == 0);
  const json f = json::parse(slurp(dir / "cap.json"));
  CHECK(f["b"].size() == 1401);
  CHECK(f["provenance"] == "closed_form_cap");
  const auto rows = csv_rows(slurp(dir / "cap.csv"));
  REQUIRE(rows.size() == 1402);
  double lo = 1, hi = 0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][2]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 0.4e-3);
  CHECK(hi <= 0.45);
  CHECK(f["lower_fit"]["c0"].get<double>() >= 0.4e-3);

  CHECK(cli({"filter", "--kind", "planck", "--lambda0", "3", "--radius", "9", "--m-max", "20"}).code == 0);
  CHECK(cli({"filter", "--kind", "wavelet", "--m-max", "20"}).code != 0);
  CHECK(cli({"filter", "--kind", "cap", "--m-max", "20"}).code != 0);
}

TEST_CASE("verify-mz") {
  const int m = 6;
  const Run r = cli({"verify-mz", "--m", std::to_string(m), "--n", std::to_string(4 * (m + 1) * (m + 1))});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["epsilon"].get<double>() < 1.0);
  CHECK(j["is_mz"] == true);
  const json s = json::parse(cli({"verify-mz", "--m", "6", "--search"}).out);
  CHECK(s["epsilon"].get<double>() <= 0.5);
}

TEST_CASE("experiment with exact data") {
  const fs::path dir = scratch("experiment");
  const Run r = cli({"experiment", "--omega", "2", "--m-min", "2", "--m-max", "8", "--beta", "0", "--truth-degree",
                     "14", "--seed", "3", "--out", (dir / "exp.csv").string()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(dir / "exp.csv"));
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == std::vector<std::string>{"m", "N", "beta", "measured_L2", "measured_Hzeta", "bound_Hzeta", "bound_L2"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][3]) <= std::stod(rows[i][5]));
    CHECK(std::stod(rows[i][3]) <= std::stod(rows[i][6]));
  }
  CHECK(cli({"experiment", "--omega", "2", "--m-max", "4"}).code != 0);
}

TEST_CASE("simulate, reconstruct, certify") {
  const fs::path dir = scratch("roundtrip");
  auto p = [&](const char* n) { return (dir / n).string(); };
  REQUIRE(cli({"filter", "--kind", "cap", "--theta0", cap_theta0(), "--m-max", "1400", "--gamma", "1.5",
               "--zeta", "1.5", "--out", p("cap.json")}).code == 0);
  REQUIRE(cli({"simulate", "--n", "400", "--filter", p("cap.json"), "--truth-degree", "20", "--truth-sigma", "2",
               "--seed", "11", "--beta", "1e-3", "--truth-out", p("truth.json"), "--out", p("y.csv")}).code == 0);
  CHECK(fs::exists(p("y.csv.json")));
  REQUIRE(cli({"reconstruct", "--measurements", p("y.csv"), "--filter", p("cap.json"), "--m", "7", "--out",
               p("sol.json")}).code == 0);
  const Run c = cli({"certify", "--measurements", p("y.csv"), "--solution", p("sol.json"), "--filter", p("cap.json"),
                     "--truth", p("truth.json"), "--omega", "2", "--out", p("cert.json")});
  REQUIRE(c.code == 0);
  const json cert = json::parse(slurp(p("cert.json")));
  CHECK(cert["verify"]["result"] == "PASS");
  CHECK(cert["beta"].get<double>() == 1e-3);
  CHECK_FALSE(cert["bound_L2"].is_null());

  // Simulate needs a seed once noise or a random truth is involved.
  const Run noseed = cli({"simulate", "--n", "100", "--truth-degree", "3", "--beta", "0.1", "--out", p("z.csv")});
  CHECK(noseed.code != 0);
  CHECK(json::parse(noseed.err)["error"]["message"].get<std::string>().find("--seed") != std::string::npos);
}

TEST_CASE("config files") {
  const fs::path dir = scratch("config");
  std::ofstream(dir / "cfg.json") << R"({"n": 100, "nodes_out": ")" << (dir / "n.csv").string() << "\"}";
  const Run r = cli({"partition", "--config", (dir / "cfg.json").string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["N"] == 100);
  CHECK(fs::exists(dir / "n.csv"));

  const Run over = cli({"partition", "--config", (dir / "cfg.json").string(), "--n", "200"});
  REQUIRE(over.code == 0);
  CHECK(json::parse(over.out)["N"] == 200);

  std::ofstream(dir / "bad.json") << R"({"n": 100, "colour": 3})";
  const Run bad = cli({"partition", "--config", (dir / "bad.json").string()});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.err)["error"]["message"].get<std::string>().find("colour") != std::string::npos);
}
