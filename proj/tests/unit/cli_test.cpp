#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "eqens/io.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + EQENS_CLI_PATH + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("eqens_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(CliInvert, SymmetricPoint) {
  const auto r = run("invert --rho 0.5 --m 0");
  ASSERT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("a").get<double>(), 0.5);
  EXPECT_EQ(j.at("b").get<double>(), 0.0);
}

TEST(CliInvert, ReportsResidual) {
  const auto r = run("invert --rho 0.4 --m 0.05");
  ASSERT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_LT(j.at("residual").get<double>(), 1e-10);
  EXPECT_GT(j.at("b").get<double>(), 0.0);
}

TEST(CliInvert, OutsideDomainExitsTwo) {
  EXPECT_EQ(run("invert --rho 0.3 --m 0.2").status, 2);
}

TEST(CliProfile, WritesCurveCsv) {
  const auto r = run("profile --a 0.3 --b 0 --grid 5");
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "x,beta,psi");
  const auto first = split(rows[1]);
  EXPECT_EQ(std::stod(first[0]), -1.0);
  EXPECT_NEAR(std::stod(first[2]), 0.6, 1e-15);
}

TEST(CliSample, UniqueConfiguration) {
  const auto r = run("sample --ell 1 --K 1 --M 0 --count 5");
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(json::parse(rows[i]).at("occupancy"), json::array({0, 1, 0}));
  }
  const auto summary = json::parse(rows[5]).at("summary");
  EXPECT_EQ(summary.at("tv_distance").get<double>(), 0.0);
}

TEST(CliSample, ExactAndMcmcAreCloseToUniform) {
  for (const char* method : {"exact", "mcmc"}) {
    const auto r = run(std::string("sample --ell 4 --K 3 --M 0 --count 20000 --method ") + method);
    ASSERT_EQ(r.status, 0);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 20001u);
    const auto summary = json::parse(rows.back()).at("summary");
    EXPECT_LT(summary.at("tv_distance").get<double>(), 0.02) << method;
    EXPECT_EQ(summary.at("method"), method);
  }
}

TEST(CliSample, RoundsMacroStateAndEchoesIt) {
  const auto r = run("sample --ell 10 --rho 0.4 --m 0.05 --count 3");
  ASSERT_EQ(r.status, 0);
  const auto summary = json::parse(lines(r.out).back()).at("summary");
  EXPECT_EQ(summary.at("K"), 8);
  EXPECT_EQ(summary.at("M"), 22);
  EXPECT_DOUBLE_EQ(summary.at("realized_rho").get<double>(), 8.0 / 21);
  EXPECT_EQ(summary.at("one_point").size(), 21u);
  EXPECT_EQ(summary.at("limit_profile").size(), 21u);
}

TEST(CliSample, SameSeedSameBytes) {
  const std::string args = "sample --ell 6 --K 5 --M 3 --count 50 --seed 17";
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("sample --ell 6 --K 5 --M 3 --count 50 --seed 18").out);
}

TEST(CliSample, ErrorsMapToExitCodes) {
  EXPECT_EQ(run("sample --ell 3 --K 2 --M 50").status, 2);
  EXPECT_EQ(run("sample --ell 90 --K 10 --M 0 --method exact --count 1").status, 3);
}

TEST(CliLlt, HomogeneousScanDecreases) {
  const auto r = run("llt --n 40,80,160 --alpha const:0.5");
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "n,active_sites,defects,sup_error,K,L,lambda,slope");
  double prev = 1e9;
  for (int i = 1; i <= 3; ++i) {
    const double e = std::stod(split(rows[i])[3]);
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_LT(std::stod(split(rows[1])[7]), 0.0);
}

TEST(CliLlt, DefectsAndProfileAlpha) {
  const auto r = run("llt --n 160 --alpha profile:0.4,1.0 --defects 1,mid");
  ASSERT_EQ(r.status, 0);
  const auto row = split(lines(r.out).at(1));
  EXPECT_EQ(row[0], "160");
  EXPECT_EQ(row[1], "158");
  EXPECT_EQ(row[2], "2");
  EXPECT_EQ(run("llt --n 300").status, 3);
  EXPECT_EQ(run("llt --n 20 --alpha weird:1").status, 2);
}

TEST(CliLlt, ExportsPmfAndIsThreadCountInvariant) {
  const auto bin = temp_path("pmf.bin");
  const auto csv = temp_path("pmf.csv");
  const std::string args = "llt --n 12,20 --export-n 12 --pmf-binary " + bin.string() +
                           " --pmf-csv " + csv.string();
  const auto one = run(args, "EQENS_THREADS=1");
  const auto two = run(args, "EQENS_THREADS=2");
  ASSERT_EQ(one.status, 0);
  EXPECT_EQ(one.out, two.out);
  std::ifstream in(bin, std::ios::binary);
  eqens::PmfFileHeader h;
  const auto pmf = eqens::read_pmf_binary(in, &h);
  EXPECT_EQ(h.n, 12);
  EXPECT_NEAR(pmf.mass(), 1.0, 1e-12);
  std::ifstream c(csv);
  std::string header;
  std::getline(c, header);
  EXPECT_EQ(header, "K,L,P,q0,error");
  fs::remove(bin);
  fs::remove(csv);
}

TEST(CliConverge, SelfTest) {
  const auto r = run("converge --self-test");
  ASSERT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("identical").get<double>(), 0.0);
}

TEST(CliConverge, MeansDecreaseAndRerunsMatch) {
  const std::string args = "converge --rho 0.5 --m 0.05 --ell 50,200 --samples 30 --seed 5";
  const auto r = run(args);
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "ell,K,M,samples,method,mean_sup_distance,sd");
  EXPECT_LT(std::stod(split(rows[2])[5]), std::stod(split(rows[1])[5]));
  EXPECT_EQ(r.out, run(args).out);
}

TEST(CliVershik, Identification) {
  const auto flat = run("vershik --rho 0.5 --m 0");
  ASSERT_EQ(flat.status, 0);
  EXPECT_LT(json::parse(flat.out).at("sup_discrepancy").get<double>(), 1e-12);
  const auto tilted = run("vershik --rho 0.4 --m 0.05");
  ASSERT_EQ(tilted.status, 0);
  const auto j = json::parse(tilted.out);
  EXPECT_LT(j.at("sup_discrepancy").get<double>(), 1e-8);
  EXPECT_LT(j.at("ode_residual_fermi").get<double>(), 1e-8);
  EXPECT_LT(j.at("ode_residual_limit").get<double>(), 1e-8);
  EXPECT_EQ(run("vershik --rho 0.3 --m 0.2").status, 2);
}

TEST(CliConfig, FileValuesAndFlagOverride) {
  const auto cfg = temp_path("config.toml");
  {
    std::ofstream f(cfg);
    f << "[invert]\nrho = 0.4\nm = 0.05\n";
  }
  const auto from_file = run("--config " + cfg.string() + " invert");
  ASSERT_EQ(from_file.status, 0);
  EXPECT_GT(json::parse(from_file.out).at("b").get<double>(), 0.0);
  const auto overridden = run("--config " + cfg.string() + " invert --m 0");
  ASSERT_EQ(overridden.status, 0);
  EXPECT_EQ(json::parse(overridden.out).at("b").get<double>(), 0.0);
  fs::remove(cfg);
}

TEST(CliOutput, WritesToFile) {
  const auto out = temp_path("out.json");
  ASSERT_EQ(run("invert --rho 0.5 --m 0 --out " + out.string()).status, 0);
  std::ifstream in(out);
  EXPECT_EQ(json::parse(in).at("a").get<double>(), 0.5);
  fs::remove(out);
}

}  // namespace
