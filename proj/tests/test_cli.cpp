// Copyright 2026 The ptbrach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliRun run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path err_path = fs::temp_directory_path() / ("ptbrach_cli_err_" + std::to_string(::getpid()) + "_" +
                                                          std::to_string(counter++));
  const std::string cmd = env + " " + PTBRACH_CLI_PATH + " " + args + " 2>" + err_path.string();
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  fs::remove(err_path);
  return r;
}

json run_json(const std::string& args) {
  const CliRun r = run(args);
  EXPECT_EQ(r.exit_code, 0) << args << "\n" << r.err;
  return json::parse(r.out);
}

const std::string kCanonical = "--r 1 --s 1 --theta 0.5235987755982988";

TEST(Cli, SpectrumExample) {
  const json doc = run_json("spectrum " + kCanonical);
  EXPECT_NEAR(doc["result"]["e_plus"].get<double>(), std::sqrt(3.0), 1e-12);
  EXPECT_EQ(doc["result"]["phase"], "ExactPT");
  EXPECT_NEAR(doc["result"]["derived"]["alpha"].get<double>(), M_PI / 6, 1e-12);
}

TEST(Cli, FlipTimesExample) {
  const json doc = run_json("flip-times --omega 2 --alpha 0");
  const json& row = doc["result"]["rows"][0];
  EXPECT_NEAR(row["up_to_down"].get<double>(), 1.5707963, 1e-7);
  EXPECT_TRUE(row["at_aa_bound"].get<bool>());
  EXPECT_FALSE(row["below_aa_bound"].get<bool>());
}

TEST(Cli, FlipTimeScan) {
  const json doc = run_json("flip-times --omega 1 --scan 10");
  ASSERT_EQ(doc["result"]["rows"].size(), 10u);
  for (const json& row : doc["result"]["rows"]) {
    EXPECT_EQ(row["below_aa_bound"].get<bool>(), row["alpha"].get<double>() < 0.0);
    EXPECT_NEAR(row["round_trip"].get<double>(), 2.0 * M_PI, 1e-10);
  }
}

TEST(Cli, MoebiusExample) {
  const json doc = run_json("moebius --beta 1");
  EXPECT_EQ(doc["result"]["kind"], "Hyperbolic");
  const json& fp = doc["result"]["fixed_points"];
  ASSERT_EQ(fp.size(), 2u);
  EXPECT_NEAR(fp[0]["im"].get<double>(), 1.0, 1e-10);
  EXPECT_NEAR(fp[1]["im"].get<double>(), -1.0, 1e-10);
  EXPECT_NEAR(fp[0]["re"].get<double>(), 0.0, 1e-10);
}

TEST(Cli, BrachCanonical) {
  const json doc = run_json("brach --omega 1.7320508075688772 --beta 0.5493061443340549");
  EXPECT_NEAR(doc["result"]["t_min"].get<double>(), (M_PI - M_PI / 3) / std::sqrt(3.0), 1e-10);
  for (const json& c : doc["certificates"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
}

TEST(Cli, EveryJsonReportHasConfigToleranceAndCertificates) {
  for (const std::string& args :
       {"spectrum " + kCanonical, "metric " + kCanonical, "evolve --format json --points 5 " + kCanonical,
        std::string("flip-times --omega 1 --alpha -0.5,0.5"), "frames " + kCanonical, "dilate --points 20 " + kCanonical,
        std::string("moebius --beta -0.3"), "bloch-path --format json --points 5 " + kCanonical,
        std::string("metric-field --beta 0.5 --n 3"), std::string("brach --omega 1 --beta 0.2")}) {
    const json doc = run_json(args);
    ASSERT_TRUE(doc.contains("config")) << args;
    EXPECT_EQ(doc["config"]["command"], args.substr(0, args.find(' ')));
    ASSERT_TRUE(doc.contains("tolerances")) << args;
    EXPECT_EQ(doc["tolerances"]["certificate"].get<double>(), 1e-10);
    ASSERT_TRUE(doc.contains("result")) << args;
    ASSERT_TRUE(doc["certificates"].is_array()) << args;
    for (const json& c : doc["certificates"]) {
      EXPECT_TRUE(c.contains("name") && c.contains("passed") && c.contains("residual")) << args;
    }
  }
}

TEST(Cli, CsvHeaders) {
  const CliRun ev = run("evolve --points 4 " + kCanonical);
  ASSERT_EQ(ev.exit_code, 0);
  EXPECT_EQ(ev.out.substr(0, ev.out.find('\n')),
            "t,p_up,p_down,norm_sq,eta_norm,re_psi_up,im_psi_up,re_psi_down,im_psi_down");
  const CliRun bp = run("bloch-path --points 4 " + kCanonical);
  ASSERT_EQ(bp.exit_code, 0);
  EXPECT_EQ(bp.out.substr(0, bp.out.find('\n')), "index,x,y,z,re_chart,im_chart,chart_at_infinity");
  const CliRun mf = run("metric-field --beta 1 --n 2 --format csv");
  ASSERT_EQ(mf.exit_code, 0);
  EXPECT_EQ(mf.out.substr(0, mf.out.find('\n')), "re_z,im_z,g_standard,g_deformed,g_general,g_pullback");
}

TEST(Cli, ByteIdenticalReruns) {
  for (const std::string& args : {"dilate --seed 7 --points 50 " + kCanonical, "spectrum " + kCanonical,
                                  std::string("metric-field --beta 2 --n 5"), "evolve --points 100 " + kCanonical}) {
    const CliRun a = run(args), b = run(args);
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, SeedDefaultsToZero) {
  const json a = run_json("dilate --points 20 " + kCanonical);
  const json b = run_json("dilate --seed 0 --points 20 " + kCanonical);
  EXPECT_EQ(a["result"], b["result"]);
  EXPECT_EQ(a["result"]["seed"], 0);
}

TEST(Cli, UsageErrorsExitOne) {
  CliRun r = run("spectrum --r 1 --s 1 --theta 0.3 --omega 2 --beta 1");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("--omega"), std::string::npos);
  r = run("spectrum");
  EXPECT_EQ(r.exit_code, 1);
  r = run("evolve --points many " + kCanonical);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("--points"), std::string::npos);
  r = run("frames --psi 1,2,3 " + kCanonical);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("--psi"), std::string::npos);
  r = run("no-such-command");
  EXPECT_EQ(r.exit_code, 1);
  r = run("spectrum --format csv " + kCanonical);
  EXPECT_EQ(r.exit_code, 1);
}

TEST(Cli, NumericFailuresExitTwoWithTypedName) {
  CliRun r = run("metric --r 3 --s 1 --theta 0.5235987755982988");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("NotExactPhase"), std::string::npos);
  r = run("brach --omega 1 --beta 25");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("MetricOverflow"), std::string::npos);
  r = run("spectrum --r 1 --s 0 --theta 0.3");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("ZeroCoupling"), std::string::npos);
}

TEST(Cli, CertificateFailureExitsTwoAndStillReports) {
  // Close to the exceptional point the lifted states grow like cosh(beta) and
  // co-evolution loses accuracy beyond the certificate threshold.
  const CliRun r = run("dilate --omega 1 --beta 12 --points 65");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("certificate failed: co_evolution"), std::string::npos);
  const json doc = json::parse(r.out);
  bool found = false;
  for (const json& c : doc["certificates"]) {
    if (c["name"] == "co_evolution") {
      found = true;
      EXPECT_FALSE(c["passed"].get<bool>());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, AtomicOutputFileAndDirectoryOverride) {
  const fs::path dir = fs::temp_directory_path() / ("ptbrach_cli_out_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const CliRun to_file = run("spectrum --out spectrum.json " + kCanonical, "PTBRACH_OUTPUT_DIR=" + dir.string());
  ASSERT_EQ(to_file.exit_code, 0) << to_file.err;
  EXPECT_TRUE(to_file.out.empty());
  const CliRun to_stdout = run("spectrum " + kCanonical);
  EXPECT_EQ(slurp(dir / "spectrum.json"), to_stdout.out);
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++entries;
  }
  EXPECT_EQ(entries, 1);  // no temporary left behind

  const fs::path absolute = dir / "abs.csv";
  const CliRun abs_run = run("evolve --points 8 --out " + absolute.string() + " " + kCanonical,
                          "PTBRACH_OUTPUT_DIR=/nonexistent");
  ASSERT_EQ(abs_run.exit_code, 0) << abs_run.err;
  EXPECT_EQ(slurp(absolute).substr(0, 2), "t,");
  fs::remove_all(dir);
}

}  // namespace
