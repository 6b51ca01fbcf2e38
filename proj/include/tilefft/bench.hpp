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

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tilefft/common.hpp"
#include "tilefft/exec_model.hpp"
#include "tilefft/fft_baseline.hpp"
#include "tilefft/reference_dft.hpp"
#include "tilefft/stage_plan.hpp"
#include "tilefft/tiled_fft.hpp"
#include "tilefft/twiddle.hpp"

namespace tilefft {

enum class BenchAlgorithm { oracle, levelwise, tiled };

inline std::string to_string(BenchAlgorithm algorithm) {
  switch (algorithm) {
    case BenchAlgorithm::oracle:
      return "oracle";
    case BenchAlgorithm::levelwise:
      return "levelwise";
    case BenchAlgorithm::tiled:
      return "tiled";
  }
  throw std::invalid_argument("to_string: unknown algorithm");
}

inline BenchAlgorithm parse_algorithm(const std::string& name) {
  if (name == "oracle") return BenchAlgorithm::oracle;
  if (name == "levelwise") return BenchAlgorithm::levelwise;
  if (name == "tiled") return BenchAlgorithm::tiled;
  throw std::invalid_argument("parse_algorithm: unknown algorithm '" + name + "'");
}

/// One measured configuration. Deterministic fields (everything except
/// wall_time_ns) are byte-stable across repeat runs with the same seed; the
/// error column is empty for sizes above the oracle cutoff and zero on the
/// oracle's own row.
struct BenchRow {
  std::size_t size = 0;
  BenchAlgorithm algorithm = BenchAlgorithm::oracle;
  std::size_t passes = 0;
  std::optional<double> max_err_vs_oracle;
  std::uint64_t slow_elem_accesses = 0;
  std::uint64_t slow_transactions = 0;
  std::uint64_t bank_conflict_cycles = 0;
  std::uint64_t barriers = 0;
  std::uint64_t wall_time_ns = 0;
  unsigned repetitions = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

enum class ReportFormat { csv, json };

inline constexpr const char* kCsvHeader =
    "size,algorithm,passes,max_err_vs_oracle,slow_elem_accesses,slow_transactions,"
    "bank_conflict_cycles,barriers,wall_time_ns,repetitions";

/// Raised when a fast path disagrees with its reference past tolerance; the
/// suite treats that as a hard failure, not a data point.
class BenchValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteOptions {
  std::size_t tile_capacity = 1024;
  /// Largest size for which the quadratic reference is computed and compared.
  std::size_t oracle_max = 8192;
  /// Timing repetitions; the reported wall time is the best of these.
  unsigned repetitions = 9;
  std::uint64_t seed = 1;
  /// Worker threads for the tiled executor's timed runs.
  unsigned threads = 1;
  /// Invoked as each row is finalized, so partial results can be flushed even
  /// if a later size fails validation.
  std::function<void(const BenchRow&)> on_row;
};

/// The size ladder used when the caller does not pick one: every power of
/// four from 16 through 65536.
inline std::vector<std::size_t> table1_sizes() {
  return {16, 64, 256, 1024, 4096, 16384, 65536};
}

namespace detail {

inline std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Per-size pseudorandom stream: the suite seed and the size are mixed so
/// each size draws an independent but reproducible signal.
inline Signal<double> random_bench_signal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(n)));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Signal<double> x(n);
  for (auto& v : x) {
    const double re = dist(rng);
    const double im = dist(rng);
    v = {re, im};
  }
  return x;
}

inline double max_abs_sample(const Signal<double>& x) {
  double amp = 0.0;
  for (const auto& v : x) {
    amp = std::max(amp, std::abs(v));
  }
  return amp;
}

/// Best-of-R wall time of f(), at least 1 ns so log-scale plots stay sane.
template <typename F>
std::uint64_t best_time_ns(unsigned repetitions, F&& f) {
  std::uint64_t best = UINT64_MAX;
  for (unsigned rep = 0; rep < repetitions; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    const auto ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(std::max<long long>(ns, 1)));
  }
  return best;
}

}  // namespace detail

/// Run the full comparison for each size: quadratic reference (up to the
/// oracle cutoff), levelwise baseline, and tiled transform, each validated
/// and traced, then timed best-of-R. Rows arrive in size order, reference
/// first. Validation misses throw BenchValidationError after the rows
/// produced so far have been delivered to on_row.
inline std::vector<BenchRow> run_suite(const std::vector<std::size_t>& sizes,
                                       const SuiteOptions& options = {}) {
  detail::require(!sizes.empty(), "run_suite: no sizes given");
  for (const std::size_t n : sizes) {
    detail::require(is_power_of_two(n) && n >= 2 && n <= (std::size_t{1} << 20),
                    "run_suite: size " + std::to_string(n) +
                        " is not a power of two in [2, 1048576]");
  }
  detail::require(options.repetitions >= 1, "run_suite: repetitions must be >= 1");
  const unsigned threads = std::max(1u, options.threads);

  const std::size_t resolution = *std::max_element(sizes.begin(), sizes.end());
  const TwiddleTable<double> table = build_twiddle_table<double>(resolution);

  std::vector<BenchRow> rows;
  const auto push = [&](BenchRow row) {
    rows.push_back(row);
    if (options.on_row) {
      options.on_row(rows.back());
    }
  };

  double checksum = 0.0;
  for (const std::size_t size : sizes) {
    const Signal<double> x = detail::random_bench_signal(size, options.seed);
    const double amp = detail::max_abs_sample(x);
    const double oracle_tol = 1e-9 * static_cast<double>(size) * amp;
    const double cross_tol = 1e-10 * static_cast<double>(size) * amp;

    std::optional<Signal<double>> oracle_out;
    if (size <= options.oracle_max) {
      BenchRow row;
      row.size = size;
      row.algorithm = BenchAlgorithm::oracle;
      row.passes = 0;
      row.max_err_vs_oracle = 0.0;
      row.repetitions = options.repetitions;
      row.wall_time_ns = detail::best_time_ns(options.repetitions, [&] {
        Signal<double> out = dft_reference(x);
        checksum += out[0].real();
        if (!oracle_out) {
          oracle_out = std::move(out);
        }
      });
      push(row);
    }

    AccessRecorder levelwise_trace;
    const Signal<double> levelwise_out = fft_levelwise(x, table, &levelwise_trace);
    if (oracle_out) {
      const double err = max_abs_error(levelwise_out, *oracle_out);
      if (err > oracle_tol) {
        throw BenchValidationError(
            "levelwise transform of size " + std::to_string(size) +
            " deviates from the reference by " + detail::format_double17(err) +
            " (tolerance " + detail::format_double17(oracle_tol) + ")");
      }
    }
    {
      BenchRow row;
      row.size = size;
      row.algorithm = BenchAlgorithm::levelwise;
      row.passes = log2_exact(size);
      if (oracle_out) {
        row.max_err_vs_oracle = max_abs_error(levelwise_out, *oracle_out);
      }
      const AccessStats stats = levelwise_trace.totals();
      row.slow_elem_accesses = stats.slow_elem_accesses();
      row.slow_transactions = stats.slow_transactions;
      row.bank_conflict_cycles = stats.bank_conflict_cycles;
      row.barriers = stats.barriers;
      row.repetitions = options.repetitions;
      row.wall_time_ns = detail::best_time_ns(options.repetitions, [&] {
        checksum += fft_levelwise(x, table)[0].real();
      });
      push(row);
    }

    const StagePlan plan = make_plan(size, options.tile_capacity);
    AccessRecorder tiled_trace;
    const Signal<double> tiled_out = fft_tiled(x, plan, table, &tiled_trace, threads);
    const double cross_err = max_abs_error(tiled_out, levelwise_out);
    if (cross_err > cross_tol) {
      throw BenchValidationError(
          "tiled transform of size " + std::to_string(size) +
          " deviates from the levelwise baseline by " + detail::format_double17(cross_err) +
          " (tolerance " + detail::format_double17(cross_tol) + ")");
    }
    if (oracle_out) {
      const double err = max_abs_error(tiled_out, *oracle_out);
      if (err > oracle_tol) {
        throw BenchValidationError(
            "tiled transform of size " + std::to_string(size) +
            " deviates from the reference by " + detail::format_double17(err) +
            " (tolerance " + detail::format_double17(oracle_tol) + ")");
      }
    }
    {
      BenchRow row;
      row.size = size;
      row.algorithm = BenchAlgorithm::tiled;
      row.passes = plan.pass_count();
      if (oracle_out) {
        row.max_err_vs_oracle = max_abs_error(tiled_out, *oracle_out);
      }
      const AccessStats stats = tiled_trace.totals();
      row.slow_elem_accesses = stats.slow_elem_accesses();
      row.slow_transactions = stats.slow_transactions;
      row.bank_conflict_cycles = stats.bank_conflict_cycles;
      row.barriers = stats.barriers;
      row.repetitions = options.repetitions;
      row.wall_time_ns = detail::best_time_ns(options.repetitions, [&] {
        checksum += fft_tiled(x, plan, table, nullptr, threads)[0].real();
      });
      push(row);
    }
  }
  // Keep the timed results observable so the loops above cannot be elided.
  volatile double sink = checksum;
  (void)sink;
  return rows;
}

inline std::string render_report(const std::vector<BenchRow>& rows, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const BenchRow& row : rows) {
      out += std::to_string(row.size);
      out += ',';
      out += to_string(row.algorithm);
      out += ',';
      out += std::to_string(row.passes);
      out += ',';
      if (row.max_err_vs_oracle) {
        out += detail::format_double17(*row.max_err_vs_oracle);
      }
      out += ',';
      out += std::to_string(row.slow_elem_accesses);
      out += ',';
      out += std::to_string(row.slow_transactions);
      out += ',';
      out += std::to_string(row.bank_conflict_cycles);
      out += ',';
      out += std::to_string(row.barriers);
      out += ',';
      out += std::to_string(row.wall_time_ns);
      out += ',';
      out += std::to_string(row.repetitions);
      out += '\n';
    }
    return out;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BenchRow& row : rows) {
    nlohmann::ordered_json obj;
    obj["size"] = row.size;
    obj["algorithm"] = to_string(row.algorithm);
    obj["passes"] = row.passes;
    if (row.max_err_vs_oracle) {
      obj["max_err_vs_oracle"] = *row.max_err_vs_oracle;
    } else {
      obj["max_err_vs_oracle"] = nullptr;
    }
    obj["slow_elem_accesses"] = row.slow_elem_accesses;
    obj["slow_transactions"] = row.slow_transactions;
    obj["bank_conflict_cycles"] = row.bank_conflict_cycles;
    obj["barriers"] = row.barriers;
    obj["wall_time_ns"] = row.wall_time_ns;
    obj["repetitions"] = row.repetitions;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

inline void emit_report(const std::vector<BenchRow>& rows, ReportFormat format,
                        const std::string& path) {
  const std::string text = render_report(rows, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("emit_report: write to '" + path + "' failed");
  }
}

inline std::vector<BenchRow> parse_report(const std::string& text, ReportFormat format) {
  std::vector<BenchRow> rows;
  if (format == ReportFormat::csv) {
    std::istringstream in(text);
    std::string line;
    detail::require(static_cast<bool>(std::getline(in, line)) && line == kCsvHeader,
                    "parse_report: missing or malformed CSV header");
    while (std::getline(in, line)) {
      if (line.empty()) {
        continue;
      }
      std::vector<std::string> fields;
      std::string field;
      std::istringstream ls(line);
      while (std::getline(ls, field, ',')) {
        fields.push_back(field);
      }
      if (!line.empty() && line.back() == ',') {
        fields.push_back("");
      }
      detail::require(fields.size() == 10, "parse_report: expected 10 fields, got " +
                                               std::to_string(fields.size()));
      BenchRow row;
      row.size = std::stoull(fields[0]);
      row.algorithm = parse_algorithm(fields[1]);
      row.passes = std::stoull(fields[2]);
      if (!fields[3].empty()) {
        row.max_err_vs_oracle = std::stod(fields[3]);
      }
      row.slow_elem_accesses = std::stoull(fields[4]);
      row.slow_transactions = std::stoull(fields[5]);
      row.bank_conflict_cycles = std::stoull(fields[6]);
      row.barriers = std::stoull(fields[7]);
      row.wall_time_ns = std::stoull(fields[8]);
      row.repetitions = static_cast<unsigned>(std::stoul(fields[9]));
      rows.push_back(row);
    }
    return rows;
  }
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("parse_report: ") + e.what());
  }
  detail::require(arr.is_array(), "parse_report: top-level JSON value must be an array");
  for (const auto& obj : arr) {
    BenchRow row;
    row.size = obj.at("size").get<std::size_t>();
    row.algorithm = parse_algorithm(obj.at("algorithm").get<std::string>());
    row.passes = obj.at("passes").get<std::size_t>();
    if (!obj.at("max_err_vs_oracle").is_null()) {
      row.max_err_vs_oracle = obj.at("max_err_vs_oracle").get<double>();
    }
    row.slow_elem_accesses = obj.at("slow_elem_accesses").get<std::uint64_t>();
    row.slow_transactions = obj.at("slow_transactions").get<std::uint64_t>();
    row.bank_conflict_cycles = obj.at("bank_conflict_cycles").get<std::uint64_t>();
    row.barriers = obj.at("barriers").get<std::uint64_t>();
    row.wall_time_ns = obj.at("wall_time_ns").get<std::uint64_t>();
    row.repetitions = obj.at("repetitions").get<unsigned>();
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<std::size_t, double>> points;  // (size, value)
};

inline std::string plot_color(BenchAlgorithm algorithm) {
  switch (algorithm) {
    case BenchAlgorithm::oracle:
      return "#888888";
    case BenchAlgorithm::levelwise:
      return "#c44e52";
    case BenchAlgorithm::tiled:
      return "#4c72b0";
  }
  return "#000000";
}

inline void append_panel(std::string& svg, const std::string& title,
                         const std::vector<PlotSeries>& series,
                         const std::vector<std::size_t>& sizes, double x0, double y0,
                         double width, double height) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const PlotSeries& s : series) {
    for (const auto& [size, value] : s.points) {
      const double e = std::log10(value);
      lo = first ? e : std::min(lo, e);
      hi = first ? e : std::max(hi, e);
      first = false;
    }
  }
  int lo_exp = static_cast<int>(std::floor(lo));
  int hi_exp = static_cast<int>(std::ceil(hi));
  if (hi_exp == lo_exp) {
    ++hi_exp;
  }
  const auto x_of = [&](std::size_t size) {
    const auto it = std::find(sizes.begin(), sizes.end(), size);
    const double idx = static_cast<double>(it - sizes.begin());
    return x0 + idx * width / static_cast<double>(sizes.size() - 1);
  };
  const auto y_of = [&](double value) {
    const double t = (std::log10(value) - lo_exp) / static_cast<double>(hi_exp - lo_exp);
    return y0 + height - t * height;
  };
  char buf[256];

  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" font-weight=\"bold\">%s</text>\n",
                x0, y0 - 14.0, title.c_str());
  svg += buf;
  // Decade gridlines and y labels.
  for (int e = lo_exp; e <= hi_exp; ++e) {
    const double y = y_of(std::pow(10.0, e));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  x0, y, x0 + width, y);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">1e%d</text>\n",
                  x0 - 8.0, y + 4.0, e);
    svg += buf;
  }
  // Axes.
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#333333\"/>\n",
                x0, y0, x0, y0 + height);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#333333\"/>\n",
                x0, y0 + height, x0 + width, y0 + height);
  svg += buf;
  // Size ticks.
  for (const std::size_t size : sizes) {
    const double x = x_of(size);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#333333\"/>\n",
                  x, y0 + height, x, y0 + height + 5.0);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">%zu</text>\n",
                  x, y0 + height + 18.0, size);
    svg += buf;
  }
  // Series.
  double legend_y = y0 + 14.0;
  for (const PlotSeries& s : series) {
    if (s.points.empty()) {
      continue;
    }
    std::string pts;
    for (const auto& [size, value] : s.points) {
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", x_of(size), y_of(value));
      pts += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                  pts.c_str(), s.color.c_str());
    svg += buf;
    for (const auto& [size, value] : s.points) {
      std::snprintf(buf, sizeof buf,
                    "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"%s\"/>\n", x_of(size),
                    y_of(value), s.color.c_str());
      svg += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"12\" height=\"12\" fill=\"%s\"/>\n",
                  x0 + 12.0, legend_y - 10.0, s.color.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%s</text>\n", x0 + 30.0,
                  legend_y, s.label.c_str());
    svg += buf;
    legend_y += 18.0;
  }
}

}  // namespace detail

/// Render the suite as a standalone SVG: wall time on top, slow-memory
/// element traffic below, both on log scales over the size ladder.
inline std::string render_plot(const std::vector<BenchRow>& rows) {
  detail::require(!rows.empty(), "render_plot: no rows");
  std::vector<std::size_t> sizes;
  for (const BenchRow& row : rows) {
    sizes.push_back(row.size);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  detail::require(sizes.size() >= 2, "render_plot: need rows for at least two sizes");

  const BenchAlgorithm order[] = {BenchAlgorithm::oracle, BenchAlgorithm::levelwise,
                                  BenchAlgorithm::tiled};
  std::vector<detail::PlotSeries> time_series;
  std::vector<detail::PlotSeries> traffic_series;
  for (const BenchAlgorithm algorithm : order) {
    detail::PlotSeries times{to_string(algorithm), detail::plot_color(algorithm), {}};
    detail::PlotSeries traffic = times;
    for (const std::size_t size : sizes) {
      for (const BenchRow& row : rows) {
        if (row.size == size && row.algorithm == algorithm) {
          times.points.emplace_back(size, static_cast<double>(row.wall_time_ns));
          if (row.slow_elem_accesses > 0) {
            traffic.points.emplace_back(size, static_cast<double>(row.slow_elem_accesses));
          }
          break;
        }
      }
    }
    if (!times.points.empty()) {
      time_series.push_back(std::move(times));
    }
    if (!traffic.points.empty()) {
      traffic_series.push_back(std::move(traffic));
    }
  }

  std::string svg;
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"820\" "
      "viewBox=\"0 0 880 820\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"880\" height=\"820\" fill=\"white\"/>\n";
  svg +=
      "<text x=\"440\" y=\"30\" font-size=\"16\" text-anchor=\"middle\" "
      "font-weight=\"bold\">transform cost sweep</text>\n";
  detail::append_panel(svg, "wall time, ns (best of R)", time_series, sizes, 90.0, 80.0,
                       740.0, 280.0);
  detail::append_panel(svg, "slow-memory element accesses", traffic_series, sizes, 90.0,
                       470.0, 740.0, 280.0);
  svg += "</svg>\n";
  return svg;
}

inline void emit_plot(const std::vector<BenchRow>& rows, const std::string& path) {
  const std::string text = render_plot(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_plot: cannot open '" + path + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("emit_plot: write to '" + path + "' failed");
  }
}

}  // namespace tilefft
