// Drives the swarmauth_cli binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(SWARMAUTH_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(SWARMAUTH_FIXTURES) + "/" + name;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("swarmauth_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliRun, Nr5gDefault) {
  auto r = cli("run --config " + fixture("nr5g_default.yaml"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("total_ms=21.600"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("crossover_t=18"), std::string::npos);
  EXPECT_NE(r.out.find("conservative"), std::string::npos);
}

TEST(CliRun, Nr5gWithHashCost) {
  auto r = cli("run --config " + fixture("nr5g_hash.yaml"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("total_ms=22.000"), std::string::npos) << r.out;
}

TEST(CliRun, InclusionThresholdFive) {
  auto r = cli("run --config " + fixture("inclusion_t5.yaml"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("total_ms=6.060"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("outcome=accepted"), std::string::npos);
}

TEST(CliRun, UnificationAndBulk) {
  auto u = cli("run --config " + fixture("unification_t4.yaml"));
  EXPECT_EQ(u.status, 0);
  EXPECT_NE(u.out.find("scenario=unification"), std::string::npos);
  auto b = cli("run --config " + fixture("bulk_100.yaml"));
  EXPECT_EQ(b.status, 0);
  EXPECT_NE(b.out.find("method=group-auth t=5 n_drones=100 total_ms=66.060"), std::string::npos)
      << b.out;
  EXPECT_NE(b.out.find("method=nr-5g t=5 n_drones=100 total_ms=2160.000"), std::string::npos);
}

TEST(CliRun, SeedOverrideChangesTranscriptOnly) {
  const auto a = temp_path("a.txt"), b = temp_path("b.txt"), c = temp_path("c.txt");
  auto ra = cli("run --config " + fixture("toy_inclusion.yaml") + " --seed 5 --out " + a);
  auto rb = cli("run --config " + fixture("toy_inclusion.yaml") + " --seed 5 --out " + b);
  auto rc = cli("run --config " + fixture("toy_inclusion.yaml") + " --seed 6 --out " + c);
  EXPECT_EQ(ra.status, 0);
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(ra.out, rc.out);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a), slurp(c));
}

TEST(CliRun, ConfigErrorsExitOne) {
  EXPECT_EQ(cli("run --config " + fixture("malformed.yaml")).status, 1);
  EXPECT_EQ(cli("run --config " + fixture("bad_unit.yaml")).status, 1);
  EXPECT_EQ(cli("run --config /nonexistent.yaml").status, 1);
  EXPECT_EQ(cli("run").status, 1);
  EXPECT_EQ(cli("").status, 1);
}

TEST(CliRun, ConfiguredAdversaryIsReported) {
  const auto path = temp_path("adv.yaml");
  std::ofstream(path) << "scenario: inclusion\nthreshold: 3\ngroup: toy\nadversary: mitm\n";
  auto r = cli("run --config " + path);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("attack=mitm thwarted=yes"), std::string::npos) << r.out;
}

TEST(CliSweep, ThresholdCsv) {
  const auto path = temp_path("threshold.csv");
  auto r = cli("sweep --variable threshold --from 2 --to 20 --out " + path);
  ASSERT_EQ(r.status, 0);
  std::istringstream csv(slurp(path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "scenario,method,t,n_drones,time_ms");
  int group_rows = 0;
  while (std::getline(csv, line)) {
    if (line.rfind("inclusion,group-auth,", 0) != 0) continue;
    std::istringstream fields(line);
    std::string scenario, method, t, n, ms;
    std::getline(fields, scenario, ',');
    std::getline(fields, method, ',');
    std::getline(fields, t, ',');
    std::getline(fields, n, ',');
    std::getline(fields, ms, ',');
    // 1.212 t to the microsecond.
    const long micros = 1212L * std::stol(t);
    char expected[32];
    std::snprintf(expected, sizeof expected, "%ld.%03ld", micros / 1000, micros % 1000);
    EXPECT_EQ(ms, expected) << line;
    ++group_rows;
  }
  EXPECT_EQ(group_rows, 19);
}

TEST(CliSweep, BulkCsvToStdoutIsStable) {
  const std::string args = "sweep --variable n_drones --from 25 --to 100 --step 25 --config " +
                           fixture("bulk_100.yaml");
  auto a = cli(args);
  auto b = cli(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("bulk,nr-5g,5,100,2160.000"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("bulk,group-auth,5,100,66.060"), std::string::npos);
}

TEST(CliSweep, InvalidSpecs) {
  EXPECT_EQ(cli("sweep --variable threshold --from 9 --to 3").status, 1);
  EXPECT_EQ(cli("sweep --variable threshold --from 2 --to 3 --step 0").status, 1);
  EXPECT_EQ(cli("sweep --variable wingspan --from 2 --to 3").status, 1);
  EXPECT_EQ(cli("sweep --variable threshold --from 2 --to 3 --out /nonexistent/dir/x.csv").status,
            1);
}

TEST(CliAttack, ModesThwarted) {
  for (const char* mode : {"replay", "mitm", "eavesdrop"}) {
    auto r = cli(std::string("attack --mode ") + mode + " --config " +
                 fixture("inclusion_t5.yaml"));
    EXPECT_EQ(r.status, 0) << mode << "\n" << r.out;
    EXPECT_NE(r.out.find("thwarted=yes"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
}

TEST(CliAttack, UnknownModeIsUsageError) {
  EXPECT_EQ(cli("attack --mode tickle").status, 1);
  EXPECT_EQ(cli("attack").status, 1);
}

}  // namespace
