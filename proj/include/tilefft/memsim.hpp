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

// Analytic traffic accounting. The element, barrier, and fetch counters come
// from closed forms over the problem shape; transactions and conflict cycles
// replay the same request generators the executors feed their recorder. A
// traced run must therefore agree with these figures field for field — any
// drift between what the code does and what the model claims is a test
// failure, not a rounding artifact.

#include <cstddef>
#include <cstdint>
#include <span>

#include "tilefft/access_patterns.hpp"
#include "tilefft/common.hpp"
#include "tilefft/exec_model.hpp"
#include "tilefft/stage_plan.hpp"

namespace tilefft {

/// Expected counters for a traced fft_levelwise run of length n (the
/// bit-reversal sweep is tallied in the recorder's reorder bucket, not
/// here): every one of the log2(n) levels reads and writes all n elements in
/// slow memory, fetches one root per butterfly, and ends in a barrier. No
/// fast storage is used, so no bank conflicts can arise.
inline AccessStats account_levelwise(std::size_t n, const ExecConfig& config = {}) {
  detail::require(is_power_of_two(n) && n >= 2,
                  "account_levelwise: n must be a power of two >= 2");
  config.validate();
  const std::uint64_t levels = log2_exact(n);
  AccessStats stats;
  stats.slow_elem_reads = static_cast<std::uint64_t>(n) * levels;
  stats.slow_elem_writes = static_cast<std::uint64_t>(n) * levels;
  stats.barriers = levels;
  stats.twiddle_fetches = static_cast<std::uint64_t>(n / 2) * levels;
  for (unsigned level = 1; level <= levels; ++level) {
    detail::for_each_levelwise_request(
        n, level, config, [&](std::span<const std::uint64_t> addrs, bool) {
          stats.slow_transactions += coalesced_transactions(addrs, config);
        });
  }
  return stats;
}

/// Expected counters for a traced fft_tiled run of the plan: each pass moves
/// every element through fast storage exactly once (n reads, n writes, one
/// barrier), so slow-memory element traffic is 2 * n * pass_count in total
/// regardless of transform length. Twiddle fetches, fast-storage accesses,
/// and conflict cycles follow the per-pass tile shape.
inline AccessStats account_tiled(const StagePlan& plan, const ExecConfig& config = {}) {
  detail::require(plan.pass_count() >= 1, "account_tiled: empty plan");
  config.validate();
  detail::require(plan.bank_count == config.bank_count,
                  "account_tiled: plan was built for a different bank count");
  const std::uint64_t n = plan.n_total;
  AccessStats stats;
  for (std::size_t stage = 1; stage <= plan.pass_count(); ++stage) {
    const StageGeometry& geom = plan.stage(stage);
    stats.slow_elem_reads += n;
    stats.slow_elem_writes += n;
    stats.barriers += 1;
    stats.twiddle_fetches += detail::stage_twiddle_fetches(plan, stage);
    stats.fast_accesses += n * detail::column_stream_occasions(plan, stage);
    const auto count_transactions = [&](std::span<const std::uint64_t> addrs, bool) {
      stats.slow_transactions += coalesced_transactions(addrs, config);
    };
    detail::for_each_tiled_sweep_request(plan, stage, /*gather=*/true, config,
                                         count_transactions);
    detail::for_each_tiled_sweep_request(plan, stage, /*gather=*/false, config,
                                         count_transactions);
    const std::uint64_t occasions = detail::column_stream_occasions(plan, stage);
    detail::for_each_column_stream(
        geom.rows, geom.fft_len, geom.padded_stride, config,
        [&](std::span<const std::uint64_t> addrs) {
          const unsigned degree = bank_conflict_degree(addrs, config);
          if (degree > 1) {
            stats.bank_conflict_cycles += occasions * (degree - 1);
          }
        });
  }
  return stats;
}

/// Factor by which the plan shrinks slow-memory element traffic relative to
/// the levelwise baseline: (2*n*log2 n) / (2*n*p) = log2(n) / p.
inline double reduction_ratio(std::size_t n, const StagePlan& plan) {
  detail::require(n == plan.n_total, "reduction_ratio: n does not match the plan");
  detail::require(plan.pass_count() >= 1, "reduction_ratio: empty plan");
  return static_cast<double>(log2_exact(n)) / static_cast<double>(plan.pass_count());
}

}  // namespace tilefft
