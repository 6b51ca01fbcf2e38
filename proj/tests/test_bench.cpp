// Copyright 2026 The tilefft Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "tilefft/bench.hpp"

using tilefft::BenchAlgorithm;
using tilefft::BenchRow;
using tilefft::ReportFormat;
using tilefft::run_suite;
using tilefft::SuiteOptions;

namespace {

// Strip the timing column so runs can be compared for determinism.
std::vector<BenchRow> without_times(std::vector<BenchRow> rows) {
  for (auto& row : rows) {
    row.wall_time_ns = 0;
  }
  return rows;
}

BenchRow sample_row() {
  BenchRow row;
  row.size = 16;
  row.algorithm = BenchAlgorithm::tiled;
  row.passes = 1;
  row.max_err_vs_oracle = 0.5;
  row.slow_elem_accesses = 32;
  row.slow_transactions = 4;
  row.bank_conflict_cycles = 0;
  row.barriers = 1;
  row.wall_time_ns = 1234;
  row.repetitions = 9;
  return row;
}

}  // namespace

TEST_CASE("table1_sizes: the default ladder") {
  CHECK(tilefft::table1_sizes() ==
        std::vector<std::size_t>{16, 64, 256, 1024, 4096, 16384, 65536});
}

TEST_CASE("run_suite: emits oracle, levelwise, and tiled rows per size") {
  SuiteOptions options;
  options.repetitions = 2;
  options.seed = 99;
  const auto rows = run_suite({16, 64}, options);
  REQUIRE(rows.size() == 6);

  CHECK(rows[0].algorithm == BenchAlgorithm::oracle);
  CHECK(rows[0].size == 16);
  CHECK(rows[0].passes == 0);
  CHECK(rows[0].max_err_vs_oracle == 0.0);
  CHECK(rows[0].slow_elem_accesses == 0);
  CHECK(rows[0].barriers == 0);
  CHECK(rows[0].wall_time_ns >= 1);
  CHECK(rows[0].repetitions == 2);

  CHECK(rows[1].algorithm == BenchAlgorithm::levelwise);
  CHECK(rows[1].passes == 4);
  CHECK(rows[1].slow_elem_accesses == 2 * 16 * 4);
  CHECK(rows[1].barriers == 4);
  REQUIRE(rows[1].max_err_vs_oracle.has_value());
  CHECK(*rows[1].max_err_vs_oracle <= 1e-9 * 16);

  CHECK(rows[2].algorithm == BenchAlgorithm::tiled);
  CHECK(rows[2].passes == 1);  // 16 fits one tile at the default capacity
  CHECK(rows[2].slow_elem_accesses == 2 * 16 * 1);
  CHECK(rows[2].barriers == 1);

  CHECK(rows[3].size == 64);
  CHECK(rows[5].algorithm == BenchAlgorithm::tiled);
}

TEST_CASE("run_suite: deterministic fields repeat across runs and threads") {
  SuiteOptions options;
  options.repetitions = 1;
  options.seed = 5;
  const auto first = run_suite({16, 256}, options);
  const auto second = run_suite({16, 256}, options);
  CHECK(without_times(first) == without_times(second));

  SuiteOptions threaded = options;
  threaded.threads = 4;
  const auto parallel = run_suite({16, 256}, threaded);
  CHECK(without_times(first) == without_times(parallel));

  SuiteOptions reseeded = options;
  reseeded.seed = 6;
  const auto other = run_suite({16, 256}, reseeded);
  // A different seed draws different signals, so the error column moves.
  CHECK(without_times(first) != without_times(other));
}

TEST_CASE("run_suite: oracle cutoff drops the reference row and error column") {
  SuiteOptions options;
  options.repetitions = 1;
  options.oracle_max = 16;
  const auto rows = run_suite({16, 64}, options);
  REQUIRE(rows.size() == 5);
  CHECK(rows[3].algorithm == BenchAlgorithm::levelwise);
  CHECK(rows[3].size == 64);
  CHECK_FALSE(rows[3].max_err_vs_oracle.has_value());
  CHECK_FALSE(rows[4].max_err_vs_oracle.has_value());
}

TEST_CASE("run_suite: per-row callback sees rows as they land") {
  SuiteOptions options;
  options.repetitions = 1;
  std::vector<BenchRow> streamed;
  options.on_row = [&](const BenchRow& row) { streamed.push_back(row); };
  const auto rows = run_suite({16}, options);
  CHECK(streamed == rows);
}

TEST_CASE("run_suite: rejects malformed requests") {
  CHECK_THROWS_AS(run_suite({}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite({12}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite({std::size_t{1} << 21}), std::invalid_argument);
  SuiteOptions zero_reps;
  zero_reps.repetitions = 0;
  CHECK_THROWS_AS(run_suite({16}, zero_reps), std::invalid_argument);
  try {
    run_suite({16, 48, 64});
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("48") != std::string::npos);
  }
}

TEST_CASE("render_report: CSV header and row layout are pinned") {
  const std::vector<BenchRow> rows = {sample_row()};
  const std::string text = tilefft::render_report(rows, ReportFormat::csv);
  const std::string expected =
      "size,algorithm,passes,max_err_vs_oracle,slow_elem_accesses,slow_transactions,"
      "bank_conflict_cycles,barriers,wall_time_ns,repetitions\n"
      "16,tiled,1,0.5,32,4,0,1,1234,9\n";
  CHECK(text == expected);
}

TEST_CASE("render_report: blank error column for rows above the cutoff") {
  BenchRow row = sample_row();
  row.algorithm = BenchAlgorithm::levelwise;
  row.passes = 4;
  row.max_err_vs_oracle.reset();
  const std::string text = tilefft::render_report({row}, ReportFormat::csv);
  CHECK(text.find("16,levelwise,4,,32,4,0,1,1234,9\n") != std::string::npos);
}

TEST_CASE("reports: CSV and JSON round-trip losslessly") {
  SuiteOptions options;
  options.repetitions = 1;
  const auto rows = run_suite({16, 64}, options);
  const std::string csv = tilefft::render_report(rows, ReportFormat::csv);
  CHECK(tilefft::parse_report(csv, ReportFormat::csv) == rows);
  const std::string json = tilefft::render_report(rows, ReportFormat::json);
  CHECK(tilefft::parse_report(json, ReportFormat::json) == rows);
  CHECK(json.find("\"max_err_vs_oracle\"") != std::string::npos);
}

TEST_CASE("reports: JSON null marks the missing error column") {
  BenchRow row = sample_row();
  row.max_err_vs_oracle.reset();
  const std::string json = tilefft::render_report({row}, ReportFormat::json);
  CHECK(json.find("\"max_err_vs_oracle\": null") != std::string::npos);
  const auto parsed = tilefft::parse_report(json, ReportFormat::json);
  REQUIRE(parsed.size() == 1);
  CHECK_FALSE(parsed[0].max_err_vs_oracle.has_value());
}

TEST_CASE("parse_report: rejects malformed input") {
  CHECK_THROWS_AS(tilefft::parse_report("nonsense\n1,2,3\n", ReportFormat::csv),
                  std::invalid_argument);
  const std::string good_header(tilefft::kCsvHeader);
  CHECK_THROWS_AS(tilefft::parse_report(good_header + "\n1,2,3\n", ReportFormat::csv),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      tilefft::parse_report(good_header + "\n16,warp,1,,1,1,0,1,1,9\n", ReportFormat::csv),
      std::invalid_argument);
  CHECK_THROWS_AS(tilefft::parse_report("{not json", ReportFormat::json),
                  std::invalid_argument);
  CHECK_THROWS_AS(tilefft::parse_report("{}", ReportFormat::json), std::invalid_argument);
}

TEST_CASE("render_report: deterministic bytes for identical suites") {
  SuiteOptions options;
  options.repetitions = 1;
  options.seed = 31;
  const auto a = without_times(run_suite({16, 64}, options));
  const auto b = without_times(run_suite({16, 64}, options));
  CHECK(tilefft::render_report(a, ReportFormat::csv) ==
        tilefft::render_report(b, ReportFormat::csv));
  CHECK(tilefft::render_report(a, ReportFormat::json) ==
        tilefft::render_report(b, ReportFormat::json));
}

TEST_CASE("emit_report and emit_plot: write the files they promise") {
  SuiteOptions options;
  options.repetitions = 1;
  const auto rows = run_suite({16, 64, 256}, options);
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv_path = dir / "tilefft_test_report.csv";
  const auto svg_path = dir / "tilefft_test_plot.svg";
  tilefft::emit_report(rows, ReportFormat::csv, csv_path.string());
  tilefft::emit_plot(rows, svg_path.string());

  std::ifstream csv_in(csv_path);
  std::string first_line;
  REQUIRE(std::getline(csv_in, first_line));
  CHECK(first_line == tilefft::kCsvHeader);

  std::ifstream svg_in(svg_path);
  std::string svg((std::istreambuf_iterator<char>(svg_in)), std::istreambuf_iterator<char>());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("levelwise") != std::string::npos);
  CHECK(svg.find("tiled") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);

  std::filesystem::remove(csv_path);
  std::filesystem::remove(svg_path);

  CHECK_THROWS_AS(
      tilefft::emit_report(rows, ReportFormat::csv, "/nonexistent-dir/report.csv"),
      std::runtime_error);
  CHECK_THROWS_AS(tilefft::emit_plot(rows, "/nonexistent-dir/plot.svg"), std::runtime_error);
}

TEST_CASE("render_plot: needs at least two sizes") {
  SuiteOptions options;
  options.repetitions = 1;
  const auto rows = run_suite({16}, options);
  CHECK_THROWS_AS(tilefft::render_plot(rows), std::invalid_argument);
  CHECK_THROWS_AS(tilefft::render_plot({}), std::invalid_argument);
}

TEST_CASE("algorithm names: round-trip and reject unknowns") {
  for (const auto algorithm :
       {BenchAlgorithm::oracle, BenchAlgorithm::levelwise, BenchAlgorithm::tiled}) {
    CHECK(tilefft::parse_algorithm(tilefft::to_string(algorithm)) == algorithm);
  }
  CHECK_THROWS_AS(tilefft::parse_algorithm("warp"), std::invalid_argument);
}
