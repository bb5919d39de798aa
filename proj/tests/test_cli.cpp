#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"zlab"};
  argv.insert(argv.end(), args);
  std::ostringstream out, err;
  const int code = zlab::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("classify") {
  Run r = run({"classify", "--k", "0", "--l", "-1", "--d", "3"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["lwp"] == false);
  CHECK(j["ill_flow"] == true);
  CHECK(j["ill_solution"] == false);
  CHECK(r.out.find("\"lwp\"") < r.out.find("\"ill_flow\""));

  j = json::parse(run({"classify", "--k", "1", "--l", "0", "--d", "2"}).out);
  CHECK(j["lwp"] == true);
  j = json::parse(run({"classify", "--k", "0", "--l", "2", "--d", "1"}).out);
  CHECK(j["ill_flow"] == true);
  CHECK(j["ill_solution"] == true);
}

TEST_CASE("verify") {
  Run r = run({"verify", "--case", "schro-low-l", "--N", "512", "--delta", "0.1", "--t", "0.5", "--d", "3"});
  CHECK(r.code == zlab::cli::kOk);
  json j = json::parse(r.out);
  CHECK(j["verified"] == true);
  CHECK(j["first_failure"].is_null());
  CHECK(j["checks"].size() == 4);

  r = run({"verify", "--case", "schro-low-l", "--N", "8", "--delta", "0.9", "--t", "0.5", "--d", "1"});
  CHECK(r.code == zlab::cli::kUsage);
  CHECK(r.err.find("delta") != std::string::npos);

  r = run({"verify", "--case", "sol-low-l", "--N", "64", "--T", "1", "--d", "2"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["checks"][1]["check"] == "cos_product");
  CHECK(j["checks"][1]["holds"] == true);
}

TEST_CASE("lemma") {
  const char* unit = R"({"boxes":[{"lo":[0],"hi":[1]}],"balls":[]})";
  Run r = run({"lemma", "--A", unit, "--B", unit, "--R", unit});
  CHECK(r.code == zlab::cli::kClaimFailure);
  CHECK(json::parse(r.out)["lemma"]["applicable"] == false);

  r = run({"lemma", "--case", "sol-low-l", "--N", "16", "--d", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["lemma"]["method"] == "grid");

  r = run({"lemma", "--random", "60", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["passed"] == 60);
  CHECK(run({"lemma", "--random", "60", "--seed", "7"}).out == r.out);

  CHECK(run({"lemma", "--A", "{not json", "--B", unit, "--R", unit}).code == zlab::cli::kUsage);
}

TEST_CASE("sweep") {
  const auto p = tmp("zlab_test_sweep.csv");
  Run r = run({"sweep", "--case", "sol-high-l", "--k", "0", "--l", "2", "--N-min", "16", "--N-max", "256", "--out",
               p.c_str()});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["predicted_exponent"] == 1.0);
  CHECK(std::abs(j["fitted_exponent"].get<double>() - 1.0) < 0.15);
  const std::string csv = slurp(p);
  CHECK(csv.rfind("N,lhs,rhs,ratio\n", 0) == 0);

  // same inputs, same bytes
  run({"sweep", "--case", "sol-high-l", "--k", "0", "--l", "2", "--N-min", "16", "--N-max", "256", "--out",
       p.c_str()});
  CHECK(slurp(p) == csv);
  std::filesystem::remove(p);

  CHECK(run({"sweep", "--N-min", "12", "--N-max", "64"}).code == zlab::cli::kUsage);
  r = run({"sweep", "--N-min", "16", "--N-max", "32"});
  CHECK(r.out.rfind("N,lhs,rhs,ratio", 0) == 0);
  CHECK(json::parse(r.err)["n_points"] == 2);
}

TEST_CASE("simulate") {
  Run r = run({"simulate", "--data", "zero", "--steps", "5"});
  CHECK(r.code == 0);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,u_Hk,n_Hl,nt_Hlm1");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0,0,0");
  }
  CHECK(rows == 6);

  const auto out = tmp("zlab_test_norms.csv");
  const auto snap = tmp("zlab_test_snap");
  r = run({"simulate", "--data", "smooth", "--out", out.c_str(), "--snapshot", snap.c_str()});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["mass_drift"].get<double>() < 1e-6);
  CHECK(j["reality_defect_n"].get<double>() < 1e-10);
  CHECK(std::filesystem::exists(snap.string() + "_u.json"));
  CHECK(std::filesystem::exists(snap.string() + "_nt.csv"));
  for (const char* s : {"_u", "_n", "_nt"}) {
    std::filesystem::remove(snap.string() + s + ".json");
    std::filesystem::remove(snap.string() + s + ".csv");
  }
  std::filesystem::remove(out);

  r = run({"simulate", "--data", "smooth", "--amp", "1e4", "--eps", "1", "--steps", "1", "--t", "1"});
  CHECK(r.code == zlab::cli::kNumericalFailure);
  CHECK(run({"simulate", "--data", "bogus"}).code == zlab::cli::kUsage);
}

TEST_CASE("gateaux on smooth data") {
  Run r = run({"gateaux", "--data", "smooth"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["gap"].get<double>() < 0.05);
  CHECK(j["richardson_ratio"].get<double>() > 3.0);
  CHECK(j["richardson_ratio"].get<double>() < 5.0);
  CHECK(run({"gateaux", "--data", "smooth", "--max-gap", "1e-9", "--no-richardson"}).code ==
        zlab::cli::kClaimFailure);
}

TEST_CASE("usage") {
  CHECK(run({}).code == zlab::cli::kUsage);
  CHECK(run({"frobnicate"}).code == zlab::cli::kUsage);
  CHECK(run({"classify", "--k", "x", "--l", "0"}).code == zlab::cli::kUsage);
  const Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("verify") != std::string::npos);
}
