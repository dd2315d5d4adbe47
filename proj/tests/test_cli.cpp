// Copyright 2026-present the tsmars project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tsmars/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("tsmars");
  for (const auto& a : args) argv.push_back(a.c_str());
  return tsmars::cli::run(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tsmars_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

void write_monthly_csv(const fs::path& path, int months, double base) {
  std::ofstream out(path);
  out << "date,value\n";
  int year = 1970;
  int month = 1;
  for (int i = 0; i < months; ++i) {
    double v = base + 10.0 * std::sin(0.3 * i) + 0.05 * i;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    out << buf << "," << v << "\n";
    if (++month > 12) {
      month = 1;
      ++year;
    }
  }
}

}  // namespace

TEST_CASE("transform writes full and split outputs") {
  const auto dir = fresh_dir("transform");
  const auto input = dir / "raw.csv";
  write_monthly_csv(input, 120, 100.0);
  CHECK(run_cli({"transform", "--input", input.string(), "--out-dir", dir.string(),
                 "--split", "1975-01"}) == 0);
  CHECK(fs::exists(dir / "growth.csv"));
  CHECK(fs::exists(dir / "growth_left.csv"));
  CHECK(fs::exists(dir / "growth_right.csv"));
  // 120 raw months -> 108 growth rows (+1 header)
  CHECK(line_count(slurp(dir / "growth.csv")) == 109);

  // left + right partition the full series
  const auto full = slurp(dir / "growth.csv");
  const auto left = slurp(dir / "growth_left.csv");
  const auto right = slurp(dir / "growth_right.csv");
  CHECK(line_count(left) + line_count(right) == line_count(full) + 1);
  CHECK(left.find("1975-01") == std::string::npos);
  CHECK(right.find("1975-01") != std::string::npos);
}

TEST_CASE("transform without a boundary writes one file") {
  const auto dir = fresh_dir("transform_single");
  const auto input = dir / "raw.csv";
  write_monthly_csv(input, 36, 50.0);
  CHECK(run_cli({"transform", "--input", input.string(), "--out-dir", dir.string()}) == 0);
  CHECK(fs::exists(dir / "growth.csv"));
  CHECK_FALSE(fs::exists(dir / "growth_left.csv"));
}

TEST_CASE("transform supports the naive method with instability flags") {
  const auto dir = fresh_dir("transform_naive");
  const auto input = dir / "raw.csv";
  write_monthly_csv(input, 30, 40.0);
  CHECK(run_cli({"transform", "--input", input.string(), "--out-dir", dir.string(),
                 "--method", "naive"}) == 0);
  const auto naive = slurp(dir / "naive.csv");
  CHECK(naive.rfind("date,value,unstable", 0) == 0);
}

TEST_CASE("malformed input exits with the data code") {
  const auto dir = fresh_dir("malformed");
  const auto input = dir / "bad.csv";
  std::ofstream(input) << "date,value\n1970-01,1\n1970-04,2\n";
  CHECK(run_cli({"transform", "--input", input.string(), "--out-dir", dir.string()}) == 2);
  CHECK(run_cli({"transform", "--input", (dir / "nope.csv").string()}) == 2);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli({"no-such-command"}) == 1);
  CHECK(run_cli({"transform"}) == 1);          // missing --input
  CHECK(run_cli({"simulate", "--n", "10"}) == 1);  // missing --seed
}

TEST_CASE("simulate is byte-identical across runs") {
  const auto dir_a = fresh_dir("sim_a");
  const auto dir_b = fresh_dir("sim_b");
  const std::vector<std::string> base{"simulate", "--process", "setar", "--n", "100",
                                      "--seed", "1", "--noise-sd", "0.1"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out-dir", dir_a.string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out-dir", dir_b.string()});
  CHECK(run_cli(args_a) == 0);
  CHECK(run_cli(args_b) == 0);
  CHECK(slurp(dir_a / "sim.csv") == slurp(dir_b / "sim.csv"));

  // a different seed changes the bytes
  auto args_c = base;
  args_c[6] = "2";
  args_c.insert(args_c.end(), {"--out-dir", dir_a.string(), "--output", "sim2.csv"});
  CHECK(run_cli(args_c) == 0);
  CHECK(slurp(dir_a / "sim.csv") != slurp(dir_a / "sim2.csv"));
}

TEST_CASE("simulate validates process parameters") {
  const auto dir = fresh_dir("sim_bad");
  CHECK(run_cli({"simulate", "--seed", "1", "--process", "mystery",
                 "--out-dir", dir.string()}) == 2);
  CHECK(run_cli({"simulate", "--seed", "1", "--process", "setar", "--phi-low", "1.2",
                 "--phi-high", "1.2", "--out-dir", dir.string()}) == 2);
  CHECK(run_cli({"simulate", "--seed", "1", "--process", "ar", "--ar-lags", "1",
                 "--ar-coeffs", "1.05", "--out-dir", dir.string()}) == 2);
}

TEST_CASE("fit-tsmars single pair emits a one-row report") {
  const auto dir = fresh_dir("fit_single");
  CHECK(run_cli({"simulate", "--process", "setar", "--n", "200", "--seed", "3",
                 "--out-dir", dir.string()}) == 0);
  CHECK(run_cli({"fit-tsmars", "--input", (dir / "sim.csv").string(), "--out-dir",
                 dir.string(), "--lags", "4", "--kmax", "1"}) == 0);
  const auto report = slurp(dir / "report.tsv");
  CHECK(line_count(report) == 2);  // header + one row
  CHECK(report.rfind("p\tk_max\trss\tgcv\tn_linear\tn_nonlinear", 0) == 0);
  CHECK(fs::exists(dir / "model.json"));
  CHECK(fs::exists(dir / "equation.txt"));
}

TEST_CASE("fit-tsmars rejects a series shorter than the smallest lag") {
  const auto dir = fresh_dir("fit_short");
  CHECK(run_cli({"simulate", "--process", "wn", "--n", "10", "--seed", "5",
                 "--out-dir", dir.string()}) == 0);
  CHECK(run_cli({"fit-tsmars", "--input", (dir / "sim.csv").string(), "--out-dir",
                 dir.string(), "--lags", "24", "--kmax", "1"}) == 2);
}

TEST_CASE("fit-ar fits the requested lags and diagnose consumes the model") {
  const auto dir = fresh_dir("fit_ar");
  CHECK(run_cli({"simulate", "--process", "ar", "--ar-lags", "1,12", "--ar-coeffs",
                 "0.3,0.25", "--n", "300", "--seed", "9", "--out-dir",
                 dir.string()}) == 0);
  CHECK(run_cli({"fit-ar", "--input", (dir / "sim.csv").string(), "--out-dir",
                 dir.string(), "--lag-set", "1,12"}) == 0);
  CHECK(fs::exists(dir / "model.json"));

  CHECK(run_cli({"diagnose", "--input", (dir / "sim.csv").string(), "--model",
                 (dir / "model.json").string(), "--out-dir", dir.string()}) == 0);
  CHECK(fs::exists(dir / "model_acf.csv"));
  CHECK(fs::exists(dir / "model_ljung_box.tsv"));
  CHECK(fs::exists(dir / "model_sq_ljung_box.tsv"));
  CHECK(fs::exists(dir / "model_normality.txt"));
  CHECK(fs::exists(dir / "model_diagnostics.json"));
  const auto lb = slurp(dir / "model_ljung_box.tsv");
  CHECK(line_count(lb) == 5);  // header + 6/12/18/24
}

TEST_CASE("diagnose with a missing model file fails cleanly") {
  const auto dir = fresh_dir("diag_missing");
  CHECK(run_cli({"simulate", "--process", "wn", "--n", "100", "--seed", "2",
                 "--out-dir", dir.string()}) == 0);
  CHECK(run_cli({"diagnose", "--input", (dir / "sim.csv").string(), "--model",
                 (dir / "absent.json").string(), "--out-dir", dir.string()}) == 2);
}

TEST_CASE("fit-arfima degenerate grid emits a single-row table") {
  const auto dir = fresh_dir("fit_arfima");
  CHECK(run_cli({"simulate", "--process", "arfima", "--d", "0.3", "--n", "300",
                 "--seed", "7", "--out-dir", dir.string()}) == 0);
  CHECK(run_cli({"fit-arfima", "--input", (dir / "sim.csv").string(), "--out-dir",
                 dir.string(), "--pmax", "0", "--qmax", "0"}) == 0);
  const auto table = slurp(dir / "arfima_grid.tsv");
  CHECK(line_count(table) == 2);
  CHECK(fs::exists(dir / "filtered.csv"));
  CHECK(fs::exists(dir / "filtered_acf.csv"));
  // filtered series has one row per input row
  CHECK(line_count(slurp(dir / "filtered.csv")) == 301);

  // diagnose accepts the arfima model file: residuals are its shocks
  CHECK(run_cli({"diagnose", "--input", (dir / "sim.csv").string(), "--model",
                 (dir / "model.json").string(), "--out-dir", dir.string()}) == 0);
  CHECK(fs::exists(dir / "model_diagnostics.json"));
}

TEST_CASE("fit-arfima rejects constant input") {
  const auto dir = fresh_dir("fit_arfima_const");
  std::ofstream out(dir / "const.csv");
  out << "date,value\n";
  for (int i = 0; i < 100; ++i) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", 1970 + i / 12, 1 + i % 12);
    out << buf << ",0.5\n";
  }
  out.close();
  CHECK(run_cli({"fit-arfima", "--input", (dir / "const.csv").string(), "--out-dir",
                 dir.string(), "--pmax", "0", "--qmax", "0"}) == 3);
}

TEST_CASE("config file supplies defaults that flags override") {
  const auto dir = fresh_dir("config");
  CHECK(run_cli({"simulate", "--process", "setar", "--n", "150", "--seed", "4",
                 "--out-dir", dir.string()}) == 0);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "[fit-tsmars]\n"
                     << "input = " << (dir / "sim.csv").string() << "\n"
                     << "out-dir = " << dir.string() << "\n"
                     << "lags = 3\n"
                     << "kmax = 1\n";
  CHECK(run_cli({"fit-tsmars", "--config", cfg.string()}) == 0);
  const auto report = slurp(dir / "report.tsv");
  CHECK(line_count(report) == 2);
  // flag overrides the config's lag list
  CHECK(run_cli({"fit-tsmars", "--config", cfg.string(), "--lags", "3,5"}) == 0);
  CHECK(line_count(slurp(dir / "report.tsv")) == 3);
}
