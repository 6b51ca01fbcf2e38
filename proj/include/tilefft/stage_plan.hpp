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
#include <vector>

#include "tilefft/common.hpp"
#include "tilefft/exec_model.hpp"

namespace tilefft {

/// Layout of one pass of the multi-pass transform.
///
/// At the start of pass s the slow-memory array is partitioned into
/// independent sub-transforms of length sub_len, rows_per_sub = sub_len /
/// fft_len of which interleave to feed one length-fft_len row transform each.
/// rows is the total row count across the whole array (n_total / fft_len).
/// Rows are processed rows_per_tile at a time in fast storage laid out with
/// padded_stride words between row starts per component, the pad slot being
/// inserted exactly when fft_len is a multiple of the bank count.
struct StageGeometry {
  std::size_t fft_len = 0;
  std::size_t levels = 0;
  std::size_t rows = 0;
  std::size_t sub_len = 0;
  std::size_t rows_per_sub = 0;
  std::size_t padded_stride = 0;
  std::size_t rows_per_tile = 0;
  std::size_t tile_count = 0;
};

/// Factorization of one transform into tile-sized passes, with the derived
/// per-pass layout. pass_count() is the p in the 2*N*p traffic figure.
struct StagePlan {
  std::size_t n_total = 0;
  std::size_t tile_capacity = 0;
  unsigned bank_count = 0;
  std::vector<std::size_t> factors;
  std::vector<StageGeometry> stages;
  // Mixed-radix weights used by the final interleave: sub_weights[i] is the
  // weight of output digit i inside a sub-transform index of the last pass,
  // out_weights[i] its weight in the natural-order output index.
  std::vector<std::size_t> sub_weights;
  std::vector<std::size_t> out_weights;

  std::size_t pass_count() const noexcept { return factors.size(); }

  /// Geometry of one pass, 1-based.
  const StageGeometry& stage(std::size_t pass) const {
    detail::require(pass >= 1 && pass <= stages.size(),
                    "StagePlan::stage: pass out of range");
    return stages[pass - 1];
  }
};

/// Split a length-n transform into the fewest passes whose row transforms fit
/// a fast buffer of tile_capacity elements, balancing the factor sizes and
/// ordering them largest first.
inline StagePlan make_plan(std::size_t n, std::size_t tile_capacity = 1024,
                           const ExecConfig& config = {}) {
  detail::require(is_power_of_two(n) && n >= 2,
                  "make_plan: n must be a power of two >= 2");
  detail::require(is_power_of_two(tile_capacity) && tile_capacity >= 2,
                  "make_plan: tile_capacity must be a power of two >= 2");
  config.validate();

  const std::size_t total_bits = log2_exact(n);
  const std::size_t cap_bits = log2_exact(tile_capacity);
  const std::size_t passes = (total_bits + cap_bits - 1) / cap_bits;
  const std::size_t base_bits = total_bits / passes;
  const std::size_t extra = total_bits % passes;

  StagePlan plan;
  plan.n_total = n;
  plan.tile_capacity = tile_capacity;
  plan.bank_count = config.bank_count;
  plan.factors.reserve(passes);
  for (std::size_t s = 0; s < passes; ++s) {
    plan.factors.push_back(std::size_t{1} << (base_bits + (s < extra ? 1 : 0)));
  }

  std::size_t sub_len = n;
  for (std::size_t s = 0; s < passes; ++s) {
    StageGeometry geom;
    geom.fft_len = plan.factors[s];
    geom.levels = log2_exact(geom.fft_len);
    geom.rows = n / geom.fft_len;
    geom.sub_len = sub_len;
    geom.rows_per_sub = sub_len / geom.fft_len;
    geom.padded_stride =
        geom.fft_len + (geom.fft_len % config.bank_count == 0 ? 1 : 0);
    geom.rows_per_tile = std::min(geom.rows, tile_capacity / geom.fft_len);
    geom.tile_count = geom.rows / geom.rows_per_tile;
    plan.stages.push_back(geom);
    sub_len = geom.rows_per_sub;
  }

  // Output digit weights: digit i (zero-based) of the natural-order spectrum
  // index carries weight factors[0]*...*factors[i-1]; within a final-pass
  // sub-transform index the first p-1 digits carry the tail products.
  plan.out_weights.assign(passes, 1);
  for (std::size_t i = 1; i < passes; ++i) {
    plan.out_weights[i] = plan.out_weights[i - 1] * plan.factors[i - 1];
  }
  plan.sub_weights.assign(passes - 1, 1);
  for (std::size_t i = passes - 1; i-- > 0;) {
    plan.sub_weights[i] = (i + 1 < plan.sub_weights.size())
                              ? plan.sub_weights[i + 1] * plan.factors[i + 1]
                              : 1;
  }
  return plan;
}

namespace detail {

/// Slow-memory index feeding fast slot column `col` of global row `grow`
/// during the gather of a pass: rows stride through their sub-transform at
/// rows_per_sub so each row sees a decimated comb. `col` is already in the
/// bit-reversed order the in-tile butterfly levels expect.
inline std::size_t gather_source_index(const StageGeometry& geom, std::size_t grow,
                                       std::size_t col) {
  const std::size_t sub = grow / geom.rows_per_sub;
  const std::size_t row_in_sub = grow % geom.rows_per_sub;
  return sub * geom.sub_len + row_in_sub + col * geom.rows_per_sub;
}

/// Natural-order output index of digit set (sub, k) produced by the final
/// pass: sub encodes the p-1 digits fixed by earlier passes, k is the last.
inline std::size_t final_output_index(const StagePlan& plan, std::size_t sub,
                                      std::size_t k) {
  const std::size_t passes = plan.pass_count();
  std::size_t out = k * plan.out_weights[passes - 1];
  std::size_t rem = sub;
  for (std::size_t i = 0; i < passes - 1; ++i) {
    const std::size_t digit = rem / plan.sub_weights[i];
    rem %= plan.sub_weights[i];
    out += digit * plan.out_weights[i];
  }
  return out;
}

/// Destination of flat fast-storage slot q (row-major over rows x fft_len)
/// in the store sweep of pass `stage` (1-based). Passes before the last
/// transpose each sub-transform in place; the last pass interleaves digits
/// into natural order.
inline std::size_t exchange_index_map(const StagePlan& plan, std::size_t stage,
                                      std::size_t q) {
  const StageGeometry& geom = plan.stage(stage);
  if (stage < plan.pass_count()) {
    const std::size_t sub = q / geom.sub_len;
    const std::size_t local = q % geom.sub_len;
    const std::size_t r = local / geom.fft_len;
    const std::size_t k = local % geom.fft_len;
    return sub * geom.sub_len + k * geom.rows_per_sub + r;
  }
  return final_output_index(plan, q / geom.fft_len, q % geom.fft_len);
}

/// Destination of spectrum slot k of global row grow in the store sweep of a
/// pass; same map as exchange_index_map seen through the (row, column) grid.
inline std::size_t scatter_target_index(const StagePlan& plan, std::size_t stage,
                                        std::size_t grow, std::size_t k) {
  return exchange_index_map(plan, stage, grow * plan.stage(stage).fft_len + k);
}

}  // namespace detail
}  // namespace tilefft
