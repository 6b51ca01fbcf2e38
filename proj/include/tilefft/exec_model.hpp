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
#include <set>
#include <span>
#include <vector>

#include "tilefft/common.hpp"

namespace tilefft {

/// Shape of the modeled executor: lanes issue memory requests in groups of
/// warp_size, fast storage is split into bank_count word-wide banks cycled by
/// half-warps, and slow-memory requests are served in segment_bytes units.
/// One complex element is two words (re, im), so an element occupies
/// 2 * word_bytes = 16 bytes at the defaults.
struct ExecConfig {
  unsigned warp_size = 32;
  unsigned half_warp_size = 16;
  unsigned bank_count = 16;
  unsigned word_bytes = 8;
  unsigned segment_bytes = 128;

  /// Bytes occupied by one complex element in slow memory.
  unsigned element_bytes() const noexcept { return 2 * word_bytes; }

  void validate() const {
    detail::require(is_power_of_two(warp_size) && is_power_of_two(half_warp_size) &&
                        is_power_of_two(bank_count) && is_power_of_two(word_bytes) &&
                        is_power_of_two(segment_bytes),
                    "ExecConfig: all parameters must be powers of two");
    detail::require(warp_size == 2 * half_warp_size,
                    "ExecConfig: warp_size must be twice half_warp_size");
    detail::require(segment_bytes >= element_bytes(),
                    "ExecConfig: a segment must hold at least one element");
  }
};

/// Deterministic traffic counters for one run (or one stage of a run).
///
///   slow_elem_reads / slow_elem_writes  -- complex elements moved from / to
///       slow memory; their sum is the headline traffic figure.
///   slow_transactions  -- segment-granular requests after coalescing.
///   fast_accesses      -- word accesses into banked fast storage.
///   bank_conflict_cycles -- extra replay cycles paid on those accesses; a
///       conflict-free request contributes zero.
///   barriers           -- device-wide synchronization points.
///   twiddle_fetches    -- root-table lookups served by the shared table.
struct AccessStats {
  std::uint64_t slow_elem_reads = 0;
  std::uint64_t slow_elem_writes = 0;
  std::uint64_t slow_transactions = 0;
  std::uint64_t fast_accesses = 0;
  std::uint64_t bank_conflict_cycles = 0;
  std::uint64_t barriers = 0;
  std::uint64_t twiddle_fetches = 0;

  std::uint64_t slow_elem_accesses() const noexcept {
    return slow_elem_reads + slow_elem_writes;
  }

  AccessStats& operator+=(const AccessStats& other) noexcept {
    slow_elem_reads += other.slow_elem_reads;
    slow_elem_writes += other.slow_elem_writes;
    slow_transactions += other.slow_transactions;
    fast_accesses += other.fast_accesses;
    bank_conflict_cycles += other.bank_conflict_cycles;
    barriers += other.barriers;
    twiddle_fetches += other.twiddle_fetches;
    return *this;
  }

  friend bool operator==(const AccessStats&, const AccessStats&) = default;
};

/// Number of slow-memory transactions needed to serve one warp-wide request.
/// Each address is an element index; the request costs one transaction per
/// distinct segment touched. An empty request costs nothing.
inline std::uint64_t coalesced_transactions(std::span<const std::uint64_t> element_addresses,
                                            const ExecConfig& config = {}) {
  config.validate();
  detail::require(element_addresses.size() <= config.warp_size,
                  "coalesced_transactions: more addresses than warp lanes");
  std::set<std::uint64_t> segments;
  for (const std::uint64_t addr : element_addresses) {
    segments.insert(addr * config.element_bytes() / config.segment_bytes);
  }
  return segments.size();
}

/// Conflict degree of one half-warp request against banked fast storage.
/// Addresses are word indices; bank = address mod bank_count. The degree is
/// the largest number of *distinct* addresses landing in one bank — lanes
/// reading the same word are broadcast and never conflict. Degree 1 means the
/// request completes in a single cycle.
inline unsigned bank_conflict_degree(std::span<const std::uint64_t> word_addresses,
                                     const ExecConfig& config = {}) {
  config.validate();
  detail::require(word_addresses.size() <= config.half_warp_size,
                  "bank_conflict_degree: more addresses than half-warp lanes");
  if (word_addresses.empty()) {
    return 0;
  }
  std::vector<std::set<std::uint64_t>> per_bank(config.bank_count);
  for (const std::uint64_t addr : word_addresses) {
    per_bank[addr % config.bank_count].insert(addr);
  }
  std::size_t degree = 1;
  for (const auto& bank : per_bank) {
    degree = std::max(degree, bank.size());
  }
  return static_cast<unsigned>(degree);
}

/// Accumulates AccessStats per execution stage. The executors call
/// begin_stage() at each synchronization boundary and feed counts and raw
/// request shapes as they sweep; totals() is always the exact sum of the
/// per-stage entries. Reordering work that is accounted outside the staged
/// totals (the baseline's input permutation sweep) goes to a separate
/// reorder bucket via begin_reorder().
class AccessRecorder {
 public:
  explicit AccessRecorder(ExecConfig config = {}) : config_(config) {
    config_.validate();
    sink_ = &reorder_;
  }

  const ExecConfig& config() const noexcept { return config_; }

  void begin_stage() {
    stages_.emplace_back();
    sink_ = &stages_.back();
  }

  void begin_reorder() { sink_ = &reorder_; }

  std::size_t stage_count() const noexcept { return stages_.size(); }

  /// Stats for one stage, 1-based to match pass numbering.
  const AccessStats& stage(std::size_t index) const {
    detail::require(index >= 1 && index <= stages_.size(),
                    "AccessRecorder::stage: index out of range");
    return stages_[index - 1];
  }

  const AccessStats& reorder() const noexcept { return reorder_; }

  /// Sum over all stages; the reorder bucket is reported separately.
  AccessStats totals() const {
    AccessStats sum;
    for (const AccessStats& s : stages_) {
      sum += s;
    }
    return sum;
  }

  void add_slow_reads(std::uint64_t n) { sink_->slow_elem_reads += n; }
  void add_slow_writes(std::uint64_t n) { sink_->slow_elem_writes += n; }
  void add_fast_accesses(std::uint64_t n) { sink_->fast_accesses += n; }
  void add_twiddle_fetches(std::uint64_t n) { sink_->twiddle_fetches += n; }
  void add_barrier() { sink_->barriers += 1; }

  /// One warp-wide slow-memory request; coalescing is applied here.
  void record_slow_request(std::span<const std::uint64_t> element_addresses) {
    sink_->slow_transactions += coalesced_transactions(element_addresses, config_);
  }

  /// One half-warp fast-storage request; only the replay cycles beyond the
  /// first are charged as conflict cost.
  void record_fast_request(std::span<const std::uint64_t> word_addresses) {
    const unsigned degree = bank_conflict_degree(word_addresses, config_);
    if (degree > 1) {
      sink_->bank_conflict_cycles += degree - 1;
    }
  }

  /// Bulk variant of record_fast_request for a request shape that repeats
  /// `occasions` times with the same bank pattern.
  void record_fast_request_repeated(std::span<const std::uint64_t> word_addresses,
                                    std::uint64_t occasions) {
    const unsigned degree = bank_conflict_degree(word_addresses, config_);
    if (degree > 1) {
      sink_->bank_conflict_cycles += occasions * (degree - 1);
    }
  }

 private:
  ExecConfig config_;
  std::vector<AccessStats> stages_;
  AccessStats reorder_;
  AccessStats* sink_ = nullptr;
};

}  // namespace tilefft
