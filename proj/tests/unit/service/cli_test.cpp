/* Copyright 2026 The SkillForge Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/program.hpp"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("skillforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    store = (dir / "store.db").string();
  }
  void TearDown() override { fs::remove_all(dir); }

  // Exit code of the CLI; stdout is captured into `out`.
  int cli(const std::string& args) {
    const auto out_path = dir / "stdout.txt";
    const std::string command = std::string(SKILLFORGE_CLI_PATH) + " --store " + store + " " + args + " > " +
                                out_path.string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(command.c_str());
    std::ifstream in(out_path);
    std::ostringstream text;
    text << in.rdbuf();
    out = text.str();
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string write(const std::string& name, const std::string& body) {
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir;
  std::string store;
  std::string out;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(cli(""), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("run"), 2);
  EXPECT_EQ(cli("play --skill book_grasping --episodes -3"), 2);
  EXPECT_EQ(cli("--help"), 0);
}

TEST_F(CliTest, RunProgram) {
  const auto program = write("grasp.json", skillforge::skills::serialize_program(skillforge::skills::simple_grasp_program()));
  EXPECT_EQ(cli("run --program " + program + " --scenario Flat --seed 1"), 0);
  EXPECT_NE(out.find("execution 1 succeeded ticks 20"), std::string::npos) << out;
  EXPECT_EQ(cli("run --program " + program + " --scenario Flat --seed 1"), 0);
  EXPECT_NE(out.find("execution 2 succeeded"), std::string::npos) << out;
}

TEST_F(CliTest, BadInputsExitTwo) {
  EXPECT_EQ(cli("run --program " + (dir / "missing.json").string()), 2);
  const auto bad = write("bad.json", R"({"ast_version": 1, "root": {"kind": "Teleport"}})");
  EXPECT_EQ(cli("run --program " + bad), 2);
  const auto program = write("grasp.json", skillforge::skills::serialize_program(skillforge::skills::simple_grasp_program()));
  EXPECT_EQ(cli("run --program " + program + " --scenario Nowhere"), 2);
  const auto config = write("config.json", R"({"prot": 1})");
  EXPECT_EQ(cli("--config " + config + " run --program " + program), 2);
  EXPECT_EQ(cli("diagnose --inject no_such_function"), 2);
}

TEST_F(CliTest, UntrainedProbeIsADomainFailure) {
  EXPECT_EQ(cli("probe-doa --skill book_grasping"), 1);
  EXPECT_NE(out.find("1/4"), std::string::npos) << out;
  EXPECT_NE(out.find("Book{orientation=Deg0} success"), std::string::npos) << out;
}

TEST_F(CliTest, PlayWritesCurveAndEcm) {
  const auto curve = (dir / "curve.csv").string();
  const auto ecm = (dir / "ecm.json").string();
  EXPECT_EQ(cli("play --skill book_grasping --episodes 20 --seed 3 --out " + curve + " --ecm-out " + ecm), 0);
  EXPECT_NE(out.find("episodes 20"), std::string::npos) << out;
  std::ifstream in(curve);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 21);
  EXPECT_TRUE(fs::file_size(ecm) > 0);
  EXPECT_EQ(cli("export --curve book_grasping"), 0);
  EXPECT_EQ(out.rfind("episode,", 0), 0u) << out;
  EXPECT_EQ(cli("export --ecm book_grasping"), 0);
  EXPECT_EQ(out.front(), '{');
}

TEST_F(CliTest, DiagnoseAndExportBlame) {
  EXPECT_EQ(cli("export --blame"), 1);
  EXPECT_EQ(cli("export"), 2);
  const auto log = (dir / "session.csv").string();
  EXPECT_EQ(cli("diagnose --inject plan_cartesian --budget 15 --seed 3 --out " + log), 0);
  EXPECT_NE(out.find("argmax plan_cartesian"), std::string::npos) << out;
  std::ifstream in(log);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("step,skill,outcome,t_fail,", 0), 0u);
  EXPECT_EQ(cli("export --blame"), 0);
  EXPECT_NE(out.find("plan_cartesian"), std::string::npos);
}

}  // namespace
