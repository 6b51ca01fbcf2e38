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
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "tilefft/access_patterns.hpp"
#include "tilefft/common.hpp"
#include "tilefft/exec_model.hpp"
#include "tilefft/fft_baseline.hpp"
#include "tilefft/stage_plan.hpp"
#include "tilefft/twiddle.hpp"

namespace tilefft {

/// Working tile in fast storage: a rows x cols window of row transforms, held
/// with `stride` element slots between row starts so the bank pad of a plan's
/// pass can be applied. The capacity bound covers the rows x cols payload;
/// the pad slots are the layout overhead that buys conflict freedom.
template <typename Real>
class FastBuffer {
 public:
  FastBuffer(std::size_t rows, std::size_t cols, std::size_t stride,
             std::size_t capacity, std::size_t row_offset = 0)
      : rows_(rows), cols_(cols), stride_(stride), capacity_(capacity),
        row_offset_(row_offset), cells_(rows * stride) {
    detail::require(rows >= 1 && cols >= 1, "FastBuffer: empty tile");
    detail::require(stride >= cols, "FastBuffer: stride narrower than a row");
    detail::require(rows * cols <= capacity, "FastBuffer: tile exceeds capacity");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }
  std::size_t capacity() const noexcept { return capacity_; }

  /// Index of the first held row within the pass's global row grid.
  std::size_t row_offset() const noexcept { return row_offset_; }
  void set_row_offset(std::size_t offset) noexcept { row_offset_ = offset; }

  Complex<Real>& at(std::size_t r, std::size_t c) noexcept { return cells_[r * stride_ + c]; }
  const Complex<Real>& at(std::size_t r, std::size_t c) const noexcept {
    return cells_[r * stride_ + c];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::size_t capacity_;
  std::size_t row_offset_;
  std::vector<Complex<Real>> cells_;
};

/// Buffer shaped for one pass of a plan: rows_per_tile rows at the padded
/// stride, bounded by the plan's tile capacity.
template <typename Real = double>
FastBuffer<Real> make_stage_buffer(const StagePlan& plan, std::size_t stage) {
  const StageGeometry& geom = plan.stage(stage);
  return FastBuffer<Real>(geom.rows_per_tile, geom.fft_len, geom.padded_stride,
                          plan.tile_capacity);
}

namespace detail {

/// In-place butterfly levels over every row of a tile whose rows already hold
/// bit-reversed input. Each (level, index) root is fetched from the table
/// once per tile into `roots` (slot h + j holds the level's j-th root), and
/// the rows then run their levels against that local copy, keeping the inner
/// butterfly loops contiguous along the row.
template <typename Real>
void dit_levels(FastBuffer<Real>& buf, const TwiddleTable<Real>& table,
                std::vector<Complex<Real>>& roots) {
  const std::size_t len = buf.cols();
  const unsigned total_levels = log2_exact(len);
  roots.resize(len);
  for (unsigned level = 1; level <= total_levels; ++level) {
    const std::size_t h = std::size_t{1} << (level - 1);
    for (std::size_t j = 0; j < h; ++j) {
      roots[h + j] = twiddle_fetch(table, 2 * h, j);
    }
  }
  for (std::size_t r = 0; r < buf.rows(); ++r) {
    Complex<Real>* row = &buf.at(r, 0);
    for (unsigned level = 1; level <= total_levels; ++level) {
      const std::size_t h = std::size_t{1} << (level - 1);
      const Complex<Real>* w = &roots[h];
      for (std::size_t base = 0; base < len; base += 2 * h) {
        Complex<Real>* lo = row + base;
        Complex<Real>* hi = lo + h;
        for (std::size_t j = 0; j < h; ++j) {
          auto [a, b] = butterfly(lo[j], hi[j], w[j]);
          lo[j] = a;
          hi[j] = b;
        }
      }
    }
  }
}

template <typename Real>
void dit_levels(FastBuffer<Real>& buf, const TwiddleTable<Real>& table) {
  std::vector<Complex<Real>> roots;
  dit_levels(buf, table, roots);
}

}  // namespace detail

/// In-place radix-2 transform of each row of the tile; rows hold natural-
/// order input and receive natural-order spectra.
template <typename Real>
void stage_row_fft(FastBuffer<Real>& buf, std::size_t length, const TwiddleTable<Real>& table) {
  detail::require(is_power_of_two(length), "stage_row_fft: length must be a power of two");
  detail::require(length <= buf.capacity(), "stage_row_fft: length exceeds tile capacity");
  detail::require(length == buf.cols(), "stage_row_fft: length must match the tile row width");
  detail::require(table.resolution >= length && table.resolution % length == 0,
                  "stage_row_fft: length must divide the table resolution");
  const unsigned bits = log2_exact(length);
  for (std::size_t r = 0; r < buf.rows(); ++r) {
    for (std::size_t i = 0; i < length; ++i) {
      const std::size_t rev = static_cast<std::size_t>(detail::bit_reverse(i, bits));
      if (rev > i) {
        std::swap(buf.at(r, i), buf.at(r, rev));
      }
    }
  }
  detail::dit_levels(buf, table);
}

/// Scale each tile element by the inter-pass root that stitches this pass's
/// row spectra into the enclosing sub-transform: slot (row, k) of a row at
/// offset r within its sub-transform is multiplied by the table root of
/// exponent r*k for denominator sub_len. Only passes before the last carry
/// this step.
template <typename Real>
void apply_interstage_twiddles(FastBuffer<Real>& buf, std::size_t stage,
                               const StagePlan& plan, const TwiddleTable<Real>& table) {
  detail::require(plan.pass_count() >= 1, "apply_interstage_twiddles: empty plan");
  detail::require(stage >= 1 && stage < plan.pass_count(),
                  "apply_interstage_twiddles: stage must be an inter-pass boundary");
  const StageGeometry& geom = plan.stage(stage);
  detail::require(buf.cols() == geom.fft_len,
                  "apply_interstage_twiddles: tile width does not match the pass");
  detail::require(buf.row_offset() + buf.rows() <= geom.rows,
                  "apply_interstage_twiddles: tile rows fall outside the pass grid");
  detail::require(table.resolution >= geom.sub_len && table.resolution % geom.sub_len == 0,
                  "apply_interstage_twiddles: sub-transform length must divide the table resolution");
  for (std::size_t lr = 0; lr < buf.rows(); ++lr) {
    const std::size_t r = (buf.row_offset() + lr) % geom.rows_per_sub;
    for (std::size_t k = 0; k < geom.fft_len; ++k) {
      buf.at(lr, k) *= detail::twiddle_fetch(table, geom.sub_len, r * k);
    }
  }
}

/// Standalone regrouping pass between two passes of a plan: one full sweep of
/// slow memory applying the pass's store permutation (per-sub-transform
/// transpose, or the digit interleave after the last pass). A single-pass
/// plan needs no regrouping; the input is returned untouched and nothing is
/// recorded.
template <typename Real>
Signal<Real> exchange_transpose(const Signal<Real>& data, std::size_t stage,
                                const StagePlan& plan, AccessRecorder* trace = nullptr) {
  detail::require(stage >= 1 && stage <= plan.pass_count(),
                  "exchange_transpose: stage out of range");
  detail::require(data.size() == plan.n_total,
                  "exchange_transpose: signal length does not match the plan");
  if (plan.pass_count() == 1) {
    return data;
  }
  Signal<Real> out(data.size());
  for (std::size_t q = 0; q < data.size(); ++q) {
    out[detail::exchange_index_map(plan, stage, q)] = data[q];
  }
  if (trace != nullptr) {
    trace->begin_stage();
    trace->add_slow_reads(data.size());
    trace->add_slow_writes(data.size());
    detail::for_each_exchange_request(
        plan, stage, trace->config(),
        [&](std::span<const std::uint64_t> addrs, bool) { trace->record_slow_request(addrs); });
    trace->add_barrier();
  }
  return out;
}

namespace detail {

struct StageCounters {
  std::uint64_t slow_reads = 0;
  std::uint64_t slow_writes = 0;
  std::uint64_t fast_accesses = 0;
  std::uint64_t twiddle_fetches = 0;

  StageCounters& operator+=(const StageCounters& o) noexcept {
    slow_reads += o.slow_reads;
    slow_writes += o.slow_writes;
    fast_accesses += o.fast_accesses;
    twiddle_fetches += o.twiddle_fetches;
    return *this;
  }
};

/// Run one pass's tiles in [tile_begin, tile_end) against the (in, out) slow
/// buffers, counting traffic as the data moves. The per-row sub-transform
/// base (sub * sub_len + r) doubles as the gather comb origin and the
/// scatter base, so it is derived once per tile and stepped incrementally.
/// On inner passes the interstage scaling is applied between the tile read
/// and the slow-memory store of the scatter sweep, so each element leaves
/// fast memory exactly once.
template <typename Real>
void run_stage_tiles(const StagePlan& plan, std::size_t stage,
                     const std::vector<std::size_t>& col_sources,
                     const Signal<Real>& in, Signal<Real>& out,
                     const TwiddleTable<Real>& table, std::size_t tile_begin,
                     std::size_t tile_end, StageCounters& counters) {
  const StageGeometry& geom = plan.stage(stage);
  const std::size_t len = geom.fft_len;
  const std::size_t rows_per_sub = geom.rows_per_sub;
  const bool has_interstage = stage < plan.pass_count();
  const std::uint64_t sub_mask = geom.sub_len - 1;
  const std::uint64_t table_stride = table.resolution / geom.sub_len;
  FastBuffer<Real> buf = make_stage_buffer<Real>(plan, stage);
  const std::size_t tile_rows = buf.rows();
  std::vector<Complex<Real>> dit_roots;
  std::vector<std::size_t> row_base(tile_rows);
  std::vector<std::uint64_t> exponent(tile_rows);
  std::vector<std::uint64_t> acc(tile_rows);
  std::vector<std::size_t> out_base(tile_rows);

  for (std::size_t tile = tile_begin; tile < tile_end; ++tile) {
    const std::size_t first_row = tile * geom.rows_per_tile;
    buf.set_row_offset(first_row);
    {
      std::size_t sub = first_row / rows_per_sub;
      std::size_t r = first_row % rows_per_sub;
      for (std::size_t lr = 0; lr < tile_rows; ++lr) {
        row_base[lr] = sub * geom.sub_len + r;
        exponent[lr] = r;
        if (++r == rows_per_sub) {
          r = 0;
          ++sub;
        }
      }
    }

    // Gather: column c of the tile comes from comb offset col_sources[c]
    // (the bit-reversed column), rows running down the sub-transform.
    for (std::size_t c = 0; c < len; ++c) {
      const std::size_t comb = col_sources[c] * rows_per_sub;
      for (std::size_t lr = 0; lr < tile_rows; ++lr) {
        buf.at(lr, c) = in[row_base[lr] + comb];
      }
    }
    counters.slow_reads += tile_rows * len;
    counters.fast_accesses += tile_rows * len;

    dit_levels(buf, table, dit_roots);
    counters.twiddle_fetches += len - 1;
    counters.fast_accesses += 2 * tile_rows * len * geom.levels;

    // Scatter through the pass's store permutation: inner passes transpose
    // around the shared row base and fold in the interstage roots (element
    // (r, k) scaled by the sub-transform's r*k root on its way out), the
    // final pass interleaves output digits.
    if (has_interstage) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < len; ++k) {
        const std::size_t offset = k * rows_per_sub;
        for (std::size_t lr = 0; lr < tile_rows; ++lr) {
          const Complex<Real> w = table.values[(acc[lr] & sub_mask) * table_stride];
          out[row_base[lr] + offset] = buf.at(lr, k) * w;
          acc[lr] += exponent[lr];
        }
      }
      counters.twiddle_fetches += tile_rows * len;
    } else {
      const std::size_t weight = plan.out_weights[plan.pass_count() - 1];
      for (std::size_t lr = 0; lr < tile_rows; ++lr) {
        out_base[lr] = final_output_index(plan, first_row + lr, 0);
      }
      for (std::size_t k = 0; k < len; ++k) {
        const std::size_t offset = k * weight;
        for (std::size_t lr = 0; lr < tile_rows; ++lr) {
          out[out_base[lr] + offset] = buf.at(lr, k);
        }
      }
    }
    counters.slow_writes += tile_rows * len;
    counters.fast_accesses += tile_rows * len;
  }
}

}  // namespace detail

/// Multi-pass transform: each pass streams the array through fast-storage
/// tiles (gather, in-tile butterfly levels, inter-pass twiddle scale, store
/// through the regrouping permutation), so slow memory is read and written
/// exactly once per pass instead of once per butterfly level. Output is the
/// natural-order spectrum, matching fft_levelwise to rounding. Tiles of a
/// pass are independent; `threads` > 1 splits them across workers without
/// affecting results or recorded totals.
template <typename Real>
Signal<Real> fft_tiled(const Signal<Real>& x, const StagePlan& plan,
                       const TwiddleTable<Real>& table, AccessRecorder* trace = nullptr,
                       unsigned threads = 1) {
  detail::require(x.size() == plan.n_total,
                  "fft_tiled: signal length does not match the plan");
  detail::require(plan.pass_count() >= 1, "fft_tiled: empty plan");
  detail::require(table.resolution >= plan.n_total && table.resolution % plan.n_total == 0,
                  "fft_tiled: signal length must divide the table resolution");
  if (trace != nullptr) {
    detail::require(trace->config().bank_count == plan.bank_count,
                    "fft_tiled: plan was built for a different bank count");
  }

  const std::size_t n = x.size();
  // Ping-pong pair of slow buffers; the first pass reads the caller's signal
  // in place, so the second buffer is only needed for multi-pass plans.
  Signal<Real> bufs[2];
  bufs[0].resize(n);
  if (plan.pass_count() >= 2) {
    bufs[1].resize(n);
  }
  const Signal<Real>* src = &x;
  std::size_t which = 0;

  for (std::size_t stage = 1; stage <= plan.pass_count(); ++stage) {
    const StageGeometry& geom = plan.stage(stage);
    const unsigned bits = static_cast<unsigned>(geom.levels);
    std::vector<std::size_t> col_sources(geom.fft_len);
    for (std::size_t c = 0; c < geom.fft_len; ++c) {
      col_sources[c] = static_cast<std::size_t>(detail::bit_reverse(c, bits));
    }
    Signal<Real>& dst = bufs[which];

    detail::StageCounters counters;
    const std::size_t worker_count =
        std::max<std::size_t>(1, std::min<std::size_t>(threads, geom.tile_count));
    if (worker_count == 1) {
      detail::run_stage_tiles(plan, stage, col_sources, *src, dst, table, 0,
                              geom.tile_count, counters);
    } else {
      std::vector<detail::StageCounters> parts(worker_count);
      std::vector<std::thread> workers;
      workers.reserve(worker_count);
      const std::size_t chunk = (geom.tile_count + worker_count - 1) / worker_count;
      for (std::size_t w = 0; w < worker_count; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(geom.tile_count, begin + chunk);
        workers.emplace_back([&, w, begin, end] {
          detail::run_stage_tiles(plan, stage, col_sources, *src, dst, table, begin, end,
                                  parts[w]);
        });
      }
      for (auto& t : workers) {
        t.join();
      }
      for (const auto& part : parts) {
        counters += part;
      }
    }

    if (trace != nullptr) {
      trace->begin_stage();
      trace->add_slow_reads(counters.slow_reads);
      trace->add_slow_writes(counters.slow_writes);
      trace->add_fast_accesses(counters.fast_accesses);
      trace->add_twiddle_fetches(counters.twiddle_fetches);
      const auto record = [&](std::span<const std::uint64_t> addrs, bool) {
        trace->record_slow_request(addrs);
      };
      detail::for_each_tiled_sweep_request(plan, stage, /*gather=*/true, trace->config(),
                                           record);
      detail::for_each_tiled_sweep_request(plan, stage, /*gather=*/false, trace->config(),
                                           record);
      const std::uint64_t occasions = detail::column_stream_occasions(plan, stage);
      detail::for_each_column_stream(
          geom.rows, geom.fft_len, geom.padded_stride, trace->config(),
          [&](std::span<const std::uint64_t> addrs) {
            trace->record_fast_request_repeated(addrs, occasions);
          });
      trace->add_barrier();
    }
    src = &dst;
    which ^= 1;
  }
  return std::move(bufs[which ^ 1]);
}

/// Inverse of fft_tiled via conjugation and 1/n scaling.
template <typename Real>
Signal<Real> ifft_tiled(const Signal<Real>& x, const StagePlan& plan,
                        const TwiddleTable<Real>& table) {
  Signal<Real> tmp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    tmp[i] = std::conj(x[i]);
  }
  tmp = fft_tiled(tmp, plan, table);
  const Real scale = Real{1} / static_cast<Real>(x.size());
  for (auto& v : tmp) {
    v = std::conj(v) * scale;
  }
  return tmp;
}

}  // namespace tilefft
