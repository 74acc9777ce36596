// Copyright 2026 The ragmia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests that drive the installed command line binary through
// std::system. RAGMIA_CLI_PATH is injected by the build.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ragmia/config.h"

namespace ragmia {
namespace {

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in.is_open()) << "cannot open " << path;
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

// One experiment run shared by every test that inspects its artifacts.
struct CliWorld {
  std::string dir;
  std::string cli = RAGMIA_CLI_PATH;
  std::string config_path;
  std::string report_path;
  std::string csv_path;
  std::string run_stdout;
  int run_exit = -1;
  int n_docs = 220;

  CliWorld() {
    dir = testing::TempDir() + "ragmia_cli_" + std::to_string(getpid());
    std::filesystem::create_directories(dir);

    ExperimentConfig config = default_config();
    config.corpus.n_docs = n_docs;
    config.eval.n_member_eval = 24;
    config.eval.n_nonmember_eval = 24;
    config.eval.n_reference = 16;
    config_path = dir + "/config.json";
    std::ofstream(config_path) << config_to_json(config).dump(2);

    report_path = dir + "/report.json";
    csv_path = dir + "/signals.csv";
    const std::string stdout_path = dir + "/run.out";
    run_exit = run_command(cli + " run --config " + config_path + " --out " +
                           report_path + " --csv " + csv_path + " > " +
                           stdout_path);
    run_stdout = read_file(stdout_path);
  }
};

const CliWorld& world() {
  static const CliWorld* instance = new CliWorld();
  return *instance;
}

TEST(Cli, RunWritesReportAndSignals) {
  const CliWorld& w = world();
  ASSERT_EQ(w.run_exit, 0) << w.run_stdout;

  const Json report = Json::parse(read_file(w.report_path));
  EXPECT_EQ(report.at("adversary").get<int>(), 1);
  EXPECT_EQ(report.at("signals").size(), 48u);
  EXPECT_TRUE(report.contains("wall_time_s"));

  const std::string csv = read_file(w.csv_path);
  EXPECT_EQ(csv.rfind("sample_id,truth,", 0), 0u);
  EXPECT_EQ(count_lines(csv), 49);  // header + one row per signal

  EXPECT_NE(w.run_stdout.find("adversary 1 defense none auc"),
            std::string::npos);
  EXPECT_NE(w.run_stdout.find("baseline raw-probability auc"),
            std::string::npos);
  EXPECT_NE(w.run_stdout.find("report " + w.report_path), std::string::npos);
}

TEST(Cli, ReportCsvReproducesTheStoredCsvByteForByte) {
  const CliWorld& w = world();
  ASSERT_EQ(w.run_exit, 0);
  const std::string out_path = w.dir + "/replayed.csv";
  ASSERT_EQ(run_command(w.cli + " report --in " + w.report_path +
                        " --format csv > " + out_path),
            0);
  // Doubles survive the JSON round trip exactly, so the replay is identical.
  EXPECT_EQ(read_file(out_path), read_file(w.csv_path));
}

TEST(Cli, ReportJsonEchoesTheStoredReport) {
  const CliWorld& w = world();
  ASSERT_EQ(w.run_exit, 0);
  const std::string out_path = w.dir + "/echoed.json";
  ASSERT_EQ(run_command(w.cli + " report --in " + w.report_path +
                        " --format json > " + out_path),
            0);
  EXPECT_EQ(Json::parse(read_file(out_path)),
            Json::parse(read_file(w.report_path)));
}

TEST(Cli, HistogramCommandHonorsTheBinCount) {
  const CliWorld& w = world();
  ASSERT_EQ(w.run_exit, 0);
  const std::string out_path = w.dir + "/hist.json";
  ASSERT_EQ(run_command(w.cli + " hist --in " + w.report_path +
                        " --bins 10 > " + out_path),
            0);
  const Json hist = Json::parse(read_file(out_path));
  EXPECT_EQ(hist.at("bins").get<int>(), 10);
  EXPECT_EQ(hist.at("member").at("bins").size(), 10u);
  EXPECT_EQ(hist.at("nonmember").at("bins").size(), 10u);
  EXPECT_EQ(hist.at("member").at("total").get<int>() +
                hist.at("nonmember").at("total").get<int>(),
            48);
}

TEST(Cli, GenCorpusWritesOneJsonlLinePerDocument) {
  const CliWorld& w = world();
  const std::string out_path = w.dir + "/corpus.jsonl";
  const std::string log_path = w.dir + "/gen.out";
  ASSERT_EQ(run_command(w.cli + " gen-corpus --config " + w.config_path +
                        " --out " + out_path + " > " + log_path),
            0);
  const std::string jsonl = read_file(out_path);
  EXPECT_EQ(count_lines(jsonl), w.n_docs);
  EXPECT_NE(read_file(log_path).find("wrote 220 documents"),
            std::string::npos);

  const Json first = Json::parse(jsonl.substr(0, jsonl.find('\n')));
  EXPECT_EQ(first.at("id").get<int>(), 0);
  const std::string label = first.at("label").get<std::string>();
  EXPECT_TRUE(label == "member" || label == "nonmember");  // split applied
}

TEST(Cli, ConfigProblemsExitWithCodeTwo) {
  const CliWorld& w = world();
  const std::string quiet = " > /dev/null 2>&1";
  EXPECT_EQ(run_command(w.cli + " run --bogus-flag" + quiet), 2);
  EXPECT_EQ(run_command(w.cli + quiet), 2);  // a subcommand is required
  EXPECT_EQ(run_command(w.cli + " run --adversary 5" + quiet), 2);
  EXPECT_EQ(run_command(w.cli + " run --config /nonexistent/profile.json" +
                        quiet),
            2);
  EXPECT_EQ(run_command(w.cli + " report --in /nonexistent/report.json" +
                        quiet),
            2);
  EXPECT_EQ(run_command(w.cli + " report --in " + w.report_path +
                        " --format yaml" + quiet),
            2);
  EXPECT_EQ(run_command(w.cli + " hist --in " + w.report_path + " --bins 1" +
                        quiet),
            2);
  // Gray-box baseline under the black-box adversary is a config error.
  EXPECT_EQ(run_command(w.cli + " run --config " + w.config_path +
                        " --adversary 3 --baseline raw-probability" + quiet),
            2);
  EXPECT_EQ(run_command(w.cli + " --help" + quiet), 0);
}

TEST(Cli, UnwritableOutputExitsWithCodeThree) {
  const CliWorld& w = world();
  EXPECT_EQ(run_command(w.cli + " run --config " + w.config_path +
                        " --out /nonexistent-dir/report.json --csv " + w.dir +
                        "/unused.csv > /dev/null 2>&1"),
            3);
}

}  // namespace
}  // namespace ragmia
