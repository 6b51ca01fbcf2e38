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

// Request-shape generators shared by the executors (live recording) and the
// closed-form accounting. Transactions and conflict cycles are properties of
// the access pattern alone, so both sides must walk the identical pattern;
// the element/barrier/fetch counters are deliberately NOT derived here — the
// executors increment those as they move data, and the accounting computes
// them in closed form, which keeps the agreement check meaningful.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tilefft/common.hpp"
#include "tilefft/exec_model.hpp"
#include "tilefft/stage_plan.hpp"

namespace tilefft {
namespace detail {

/// Warp-chunked slow-memory requests of one butterfly level of the in-place
/// baseline, lanes holding one butterfly each: for every warp, the lower-leg
/// gather, upper-leg gather, lower-leg store, upper-leg store.
/// fn(addresses, is_write) is invoked once per request.
template <typename Fn>
void for_each_levelwise_request(std::size_t n, unsigned level, const ExecConfig& config,
                                Fn&& fn) {
  const std::size_t h = std::size_t{1} << (level - 1);
  const std::size_t pairs = n / 2;
  std::vector<std::uint64_t> lo;
  std::vector<std::uint64_t> hi;
  for (std::size_t warp = 0; warp < pairs; warp += config.warp_size) {
    const std::size_t lanes = std::min<std::size_t>(config.warp_size, pairs - warp);
    lo.clear();
    hi.clear();
    for (std::size_t t = warp; t < warp + lanes; ++t) {
      const std::uint64_t low = (t / h) * (2 * h) + (t % h);
      lo.push_back(low);
      hi.push_back(low + h);
    }
    fn(std::span<const std::uint64_t>(lo), false);
    fn(std::span<const std::uint64_t>(hi), false);
    fn(std::span<const std::uint64_t>(lo), true);
    fn(std::span<const std::uint64_t>(hi), true);
  }
}

/// Warp-chunked requests of the baseline's bit-reversal gather sweep:
/// out[i] = in[reverse(i)], lanes holding consecutive i.
template <typename Fn>
void for_each_reorder_request(std::size_t n, const ExecConfig& config, Fn&& fn) {
  const unsigned bits = log2_exact(n);
  std::vector<std::uint64_t> src;
  std::vector<std::uint64_t> dst;
  for (std::size_t warp = 0; warp < n; warp += config.warp_size) {
    const std::size_t lanes = std::min<std::size_t>(config.warp_size, n - warp);
    src.clear();
    dst.clear();
    for (std::size_t i = warp; i < warp + lanes; ++i) {
      src.push_back(bit_reverse(i, bits));
      dst.push_back(i);
    }
    fn(std::span<const std::uint64_t>(src), false);
    fn(std::span<const std::uint64_t>(dst), true);
  }
}

/// Warp-chunked slow-memory requests of one pass's tile load or store sweep.
/// Tile slots are enumerated column-major (row index fastest) so consecutive
/// lanes walk consecutive rows of one column; warps never span tiles.
template <typename Fn>
void for_each_tiled_sweep_request(const StagePlan& plan, std::size_t stage, bool gather,
                                  const ExecConfig& config, Fn&& fn) {
  const StageGeometry& geom = plan.stage(stage);
  const unsigned bits = static_cast<unsigned>(geom.levels);
  std::vector<std::uint64_t> addrs;
  for (std::size_t tile = 0; tile < geom.tile_count; ++tile) {
    const std::size_t first_row = tile * geom.rows_per_tile;
    const std::size_t slots = geom.rows_per_tile * geom.fft_len;
    for (std::size_t warp = 0; warp < slots; warp += config.warp_size) {
      const std::size_t lanes = std::min<std::size_t>(config.warp_size, slots - warp);
      addrs.clear();
      for (std::size_t slot = warp; slot < warp + lanes; ++slot) {
        const std::size_t col = slot / geom.rows_per_tile;
        const std::size_t grow = first_row + slot % geom.rows_per_tile;
        addrs.push_back(gather
                            ? gather_source_index(geom, grow, bit_reverse(col, bits))
                            : scatter_target_index(plan, stage, grow, col));
      }
      fn(std::span<const std::uint64_t>(addrs), !gather);
    }
  }
}

/// Warp-chunked requests of a standalone regrouping pass over slow memory:
/// contiguous gathers, permuted stores.
template <typename Fn>
void for_each_exchange_request(const StagePlan& plan, std::size_t stage,
                               const ExecConfig& config, Fn&& fn) {
  const std::size_t n = plan.n_total;
  std::vector<std::uint64_t> src;
  std::vector<std::uint64_t> dst;
  for (std::size_t warp = 0; warp < n; warp += config.warp_size) {
    const std::size_t lanes = std::min<std::size_t>(config.warp_size, n - warp);
    src.clear();
    dst.clear();
    for (std::size_t q = warp; q < warp + lanes; ++q) {
      src.push_back(q);
      dst.push_back(exchange_index_map(plan, stage, q));
    }
    fn(std::span<const std::uint64_t>(src), false);
    fn(std::span<const std::uint64_t>(dst), true);
  }
}

/// Half-warp column streams of one pass's fast-storage footprint: groups of
/// half_warp consecutive rows (the trailing group may be shorter) each drive
/// one request per column down the tile at the pass's row stride. Every
/// in-tile element access — load, per-level butterfly leg, twiddle scale,
/// store — replays one of these shapes, so callers scale the per-stream cost
/// by the number of such occasions. fn(word_addresses) per stream.
template <typename Fn>
void for_each_column_stream(std::size_t rows, std::size_t cols, std::size_t stride,
                            const ExecConfig& config, Fn&& fn) {
  std::vector<std::uint64_t> addrs;
  for (std::size_t group = 0; group < rows; group += config.half_warp_size) {
    const std::size_t lanes = std::min<std::size_t>(config.half_warp_size, rows - group);
    for (std::size_t col = 0; col < cols; ++col) {
      addrs.clear();
      for (std::size_t t = 0; t < lanes; ++t) {
        addrs.push_back((group + t) * stride + col);
      }
      fn(std::span<const std::uint64_t>(addrs));
    }
  }
}

/// Element-access occasions per column position in one pass: tile load and
/// store plus two butterfly legs per level. The inter-pass twiddle scale
/// rides the store sweep (applied between the tile read and the slow-memory
/// write), so it adds table fetches but no extra tile-buffer traffic.
inline std::uint64_t column_stream_occasions(const StagePlan& plan, std::size_t stage) {
  const StageGeometry& geom = plan.stage(stage);
  return 2 + 2 * geom.levels;
}

/// Root-table lookups issued by one pass: the in-tile levels hoist one fetch
/// per (level, twiddle index) pair out of the row loop — fft_len - 1 fetches
/// per tile — and the inter-pass scale fetches once per element.
inline std::uint64_t stage_twiddle_fetches(const StagePlan& plan, std::size_t stage) {
  const StageGeometry& geom = plan.stage(stage);
  std::uint64_t fetches = geom.tile_count * (geom.fft_len - 1);
  if (stage < plan.pass_count()) {
    fetches += plan.n_total;
  }
  return fetches;
}

}  // namespace detail
}  // namespace tilefft
