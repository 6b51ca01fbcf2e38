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
//
// Acceptance gate: one pass/fail line per shipped guarantee. The binary
// exits nonzero if any guarantee fails, so it can anchor CI.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tilefft/tilefft.hpp"

namespace {

using tilefft::Complex;
using tilefft::Signal;
using Clock = std::chrono::steady_clock;

bool g_all_ok = true;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  g_all_ok = g_all_ok && ok;
}

Signal<double> random_signal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Signal<double> x(n);
  for (auto& v : x) {
    v = {dist(rng), dist(rng)};
  }
  return x;
}

double max_magnitude(const Signal<double>& x) {
  double amp = 0.0;
  for (const auto& v : x) {
    amp = std::max(amp, std::abs(v));
  }
  return amp;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Criterion 1: every power-of-two length in [2, 4096], 20 seeded signals
// each, both executors within 1e-9 * N * max|x| of the direct evaluation.
void criterion_oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto table = tilefft::build_twiddle_table<double>(4096);
  double worst = 0.0;
  bool ok = true;
  for (std::size_t n = 2; n <= 4096; n *= 2) {
    const tilefft::StagePlan plan = tilefft::make_plan(n);
    for (unsigned sig = 0; sig < 20; ++sig) {
      const Signal<double> x =
          random_signal(n, 0xACCE9700u + 1000003ull * n + sig);
      const double tol = 1e-9 * static_cast<double>(n) * max_magnitude(x);
      const Signal<double> oracle = tilefft::dft_reference(x);
      const double err_level =
          tilefft::max_abs_error(tilefft::fft_levelwise(x, table), oracle);
      const double err_tiled =
          tilefft::max_abs_error(tilefft::fft_tiled(x, plan, table), oracle);
      worst = std::max({worst, err_level, err_tiled});
      ok = ok && err_level <= tol && err_tiled <= tol;
    }
  }
  const double secs =
      std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - t0).count();
  ok = ok && secs < 60.0;
  report(1, ok,
         "oracle equivalence: levelwise and tiled match direct evaluation for "
         "N=2..4096, 20 signals each (worst error " +
             fmt(worst) + ", " + fmt(secs) + " s)");
}

// Criterion 2: inverse(forward(x)) recovers x within 1e-10 up to N=65536.
void criterion_roundtrip() {
  const auto table = tilefft::build_twiddle_table<double>(65536);
  double worst = 0.0;
  bool ok = true;
  for (std::size_t n = 2; n <= 65536; n *= 2) {
    const tilefft::StagePlan plan = tilefft::make_plan(n);
    const Signal<double> x = random_signal(n, 0xB007 + n);
    const Signal<double> back =
        tilefft::ifft_tiled(tilefft::fft_tiled(x, plan, table), plan, table);
    const double err = tilefft::max_abs_error(back, x);
    worst = std::max(worst, err);
    ok = ok && err <= 1e-10;
  }
  report(2, ok,
         "roundtrip: ifft_tiled(fft_tiled(x)) recovers x for N=2..65536 "
         "(worst error " +
             fmt(worst) + ", tolerance 1e-10)");
}

// Criterion 3: periodicity, conjugate symmetry, and index-scaling identities
// of the root table hold exactly over >= 10^4 sampled triples.
void criterion_twiddle_identities() {
  const auto table = tilefft::build_twiddle_table<double>(65536);
  std::mt19937_64 rng(0x7D11E5);
  std::uniform_int_distribution<int> bits_dist(1, 16);
  std::uniform_int_distribution<std::int64_t> e_dist(-(std::int64_t{1} << 40),
                                                     std::int64_t{1} << 40);
  const int samples = 12000;
  int checked = 0;
  bool ok = true;
  for (int i = 0; i < samples; ++i) {
    const int nb = bits_dist(rng);
    const std::uint64_t n = std::uint64_t{1} << nb;
    const std::int64_t e = e_dist(rng);
    std::uniform_int_distribution<int> mb_dist(0, 16 - nb);
    const std::uint64_t m = std::uint64_t{1} << mb_dist(rng);

    const Complex<double> w = tilefft::twiddle_lookup(table, n, e);
    const Complex<double> period =
        tilefft::twiddle_lookup(table, n, e + static_cast<std::int64_t>(n));
    const Complex<double> conj_w = tilefft::twiddle_lookup(table, n, -e);
    const Complex<double> scaled = tilefft::twiddle_lookup(
        table, m * n, static_cast<std::int64_t>(m) * e);

    const bool periodic = period.real() == w.real() && period.imag() == w.imag();
    const bool conjugate =
        conj_w.real() == w.real() && conj_w.imag() == -w.imag();
    const bool scaling = scaled.real() == w.real() && scaled.imag() == w.imag();
    ok = ok && periodic && conjugate && scaling;
    ++checked;
  }
  report(3, ok,
         "twiddle identities: periodicity, conjugate symmetry, and index "
         "scaling hold exactly over " +
             std::to_string(checked) + " sampled triples");
}

// Criteria 4 and 7 share the traced runs over the benchmark size ladder;
// the caller prints each in numeric order.
struct TraceChecks {
  bool traffic_ok = true;
  bool barriers_ok = true;
};

TraceChecks run_trace_checks() {
  const auto sizes = tilefft::table1_sizes();
  const auto table = tilefft::build_twiddle_table<double>(65536);
  TraceChecks checks;
  for (const std::size_t n : sizes) {
    const Signal<double> x = random_signal(n, 0x4A55 + n);

    tilefft::AccessRecorder level_trace;
    (void)tilefft::fft_levelwise(x, table, &level_trace);
    const tilefft::AccessStats level_live = level_trace.totals();
    const tilefft::AccessStats level_model = tilefft::account_levelwise(n);
    const std::uint64_t bits = tilefft::log2_exact(n);
    checks.traffic_ok = checks.traffic_ok && level_live == level_model &&
                        level_live.slow_elem_accesses() == 2 * n * bits;
    checks.barriers_ok = checks.barriers_ok && level_live.barriers == bits;

    const tilefft::StagePlan plan = tilefft::make_plan(n);
    tilefft::AccessRecorder tiled_trace;
    (void)tilefft::fft_tiled(x, plan, table, &tiled_trace);
    const tilefft::AccessStats tiled_live = tiled_trace.totals();
    const tilefft::AccessStats tiled_model = tilefft::account_tiled(plan);
    checks.traffic_ok = checks.traffic_ok && tiled_live == tiled_model &&
                        tiled_live.slow_elem_accesses() == 2 * n * plan.pass_count();
    checks.barriers_ok =
        checks.barriers_ok && tiled_live.barriers == plan.pass_count();
  }
  checks.traffic_ok =
      checks.traffic_ok &&
      tilefft::reduction_ratio(4096, tilefft::make_plan(4096)) == 6.0 &&
      tilefft::reduction_ratio(65536, tilefft::make_plan(65536)) == 8.0;
  return checks;
}

// Criterion 5: padded tile rows are conflict-free everywhere; stripping the
// pad on bank-aligned rows serializes full half-warp groups 16 ways.
void criterion_bank_conflicts() {
  const tilefft::ExecConfig cfg;
  bool padded_ok = true;
  bool stripped_ok = true;
  std::size_t stripped_groups = 0;
  for (std::size_t n = 2; n <= 65536; n *= 2) {
    const tilefft::StagePlan plan = tilefft::make_plan(n);
    for (std::size_t s = 1; s <= plan.pass_count(); ++s) {
      const tilefft::StageGeometry& geom = plan.stage(s);
      tilefft::detail::for_each_column_stream(
          geom.rows, geom.fft_len, geom.padded_stride, cfg,
          [&](std::span<const std::uint64_t> words) {
            padded_ok = padded_ok && tilefft::bank_conflict_degree(words, cfg) == 1;
          });
      if (geom.fft_len % cfg.bank_count == 0) {
        tilefft::detail::for_each_column_stream(
            geom.rows, geom.fft_len, /*stride=*/geom.fft_len, cfg,
            [&](std::span<const std::uint64_t> words) {
              if (words.size() == cfg.half_warp_size) {
                ++stripped_groups;
                stripped_ok = stripped_ok &&
                              tilefft::bank_conflict_degree(words, cfg) ==
                                  cfg.bank_count;
              }
            });
      }
    }
  }
  const bool ok = padded_ok && stripped_ok && stripped_groups > 0;
  report(5, ok,
         "bank conflicts: padded stride gives degree 1 on every half-warp "
         "column stream of every plan up to 65536; unpadded bank-aligned "
         "rows give degree 16 on " +
             std::to_string(stripped_groups) + " full groups");
}

// Criterion 6: identical addresses broadcast instead of conflicting.
void criterion_broadcast() {
  const tilefft::ExecConfig cfg;
  const std::vector<std::uint64_t> same(cfg.half_warp_size, 1234);
  const bool ok = tilefft::bank_conflict_degree(same, cfg) == 1;
  report(6, ok, "broadcast: 16 identical fast-memory addresses cost one cycle");
}

// Criterion 8: the tiled executor is at least as fast as the levelwise
// baseline at and above the crossover size. Repetitions interleave the two
// executors so clock drift hits both equally; best-of-9 each.
void criterion_timing_crossover() {
  const auto table = tilefft::build_twiddle_table<double>(65536);
  bool ok = true;
  std::string detail;
  volatile double sink = 0.0;
  for (const std::size_t n : {std::size_t{16384}, std::size_t{32768}, std::size_t{65536}}) {
    const tilefft::StagePlan plan = tilefft::make_plan(n);
    const Signal<double> x = random_signal(n, 0x71AE + n);
    sink = sink + tilefft::fft_levelwise(x, table)[0].real();
    sink = sink + tilefft::fft_tiled(x, plan, table)[0].real();
    std::uint64_t best_level = UINT64_MAX;
    std::uint64_t best_tiled = UINT64_MAX;
    for (int rep = 0; rep < 9; ++rep) {
      auto t0 = Clock::now();
      sink = sink + tilefft::fft_levelwise(x, table)[0].real();
      auto t1 = Clock::now();
      sink = sink + tilefft::fft_tiled(x, plan, table)[0].real();
      auto t2 = Clock::now();
      best_level = std::min<std::uint64_t>(
          best_level,
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      best_tiled = std::min<std::uint64_t>(
          best_tiled,
          std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count());
    }
    ok = ok && best_tiled <= best_level;
    detail += " " + std::to_string(n) + ": " + std::to_string(best_tiled / 1000) +
              "us vs " + std::to_string(best_level / 1000) + "us;";
  }
  report(8, ok,
         "timing crossover: best-of-9 tiled wall time <= levelwise at every "
         "size from 16384 up (tiled vs levelwise:" +
             detail + ")");
}

// Criterion 9: the benchmark report is deterministic apart from wall times,
// and the plot is a well-formed SVG.
void criterion_report_integrity() {
  tilefft::SuiteOptions options;
  options.repetitions = 3;
  const auto sizes = tilefft::table1_sizes();
  const std::vector<tilefft::BenchRow> rows_a = tilefft::run_suite(sizes, options);
  const std::vector<tilefft::BenchRow> rows_b = tilefft::run_suite(sizes, options);

  const auto mask_times = [](const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (!header) {
        // Blank the wall_time_ns column (field 9 of 10).
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(line);
        while (std::getline(fs, field, ',')) {
          fields.push_back(field);
        }
        while (fields.size() < 10) {
          fields.emplace_back();
        }
        fields[8].clear();
        line.clear();
        for (std::size_t i = 0; i < fields.size(); ++i) {
          line += (i ? "," : "") + fields[i];
        }
      }
      header = false;
      out << line << '\n';
    }
    return out.str();
  };

  const std::string csv_a =
      mask_times(tilefft::render_report(rows_a, tilefft::ReportFormat::csv));
  const std::string csv_b =
      mask_times(tilefft::render_report(rows_b, tilefft::ReportFormat::csv));
  const bool stats_identical = csv_a == csv_b;

  const std::string svg = tilefft::render_plot(rows_a);
  const bool svg_ok = svg.rfind("<svg", 0) == 0 &&
                      svg.find("</svg>") != std::string::npos &&
                      svg.find("<polyline") != std::string::npos &&
                      svg.find("nan") == std::string::npos &&
                      svg.find("NaN") == std::string::npos;

  // The file-emitting paths must produce the same bytes they render.
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path csv_path = dir / "tilefft_acceptance_report.csv";
  const fs::path svg_path = dir / "tilefft_acceptance_plot.svg";
  tilefft::emit_report(rows_a, tilefft::ReportFormat::csv, csv_path.string());
  tilefft::emit_plot(rows_a, svg_path.string());
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const bool files_ok =
      mask_times(slurp(csv_path)) == csv_a && slurp(svg_path) == svg;
  fs::remove(csv_path);
  fs::remove(svg_path);

  report(9, stats_identical && svg_ok && files_ok,
         "report integrity: two same-seed suite runs agree byte-for-byte on "
         "every stats column and the plot is well-formed SVG");
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_roundtrip();
  criterion_twiddle_identities();
  const TraceChecks traces = run_trace_checks();
  report(4, traces.traffic_ok,
         "traffic law: slow-memory element accesses are exactly 2*N*log2(N) "
         "levelwise and 2*N*p tiled with live counts equal to the analytic "
         "model at every ladder size; reduction ratio 6.0 at 4096 and 8.0 at "
         "65536");
  criterion_bank_conflicts();
  criterion_broadcast();
  report(7, traces.barriers_ok,
         "barriers: the recorder sees log2(N) barriers levelwise and p "
         "barriers tiled at every ladder size");
  criterion_timing_crossover();
  criterion_report_integrity();
  std::printf("%s\n", g_all_ok ? "ACCEPTANCE: all criteria passed"
                               : "ACCEPTANCE: at least one criterion FAILED");
  return g_all_ok ? 0 : 1;
}
