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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tilefft/access_patterns.hpp"
#include "tilefft/common.hpp"
#include "tilefft/exec_model.hpp"
#include "tilefft/twiddle.hpp"

namespace tilefft {

/// One radix-2 combine: returns (a + w*b, a - w*b).
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> butterfly(const Complex<Real>& a,
                                                  const Complex<Real>& b,
                                                  const Complex<Real>& w) {
  const Complex<Real> t = w * b;
  return {a + t, a - t};
}

/// Index table of the bit-reversal permutation on [0, n).
inline std::vector<std::size_t> bit_reverse_permutation(std::size_t n) {
  detail::require(is_power_of_two(n), "bit_reverse_permutation: n must be a power of two");
  const unsigned bits = log2_exact(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    perm[i] = static_cast<std::size_t>(detail::bit_reverse(i, bits));
  }
  return perm;
}

namespace detail {

/// Table fetch with the validation hoisted out of the hot loops; the public
/// twiddle_lookup checks the (n, resolution) pair on every call.
template <typename Real>
inline Complex<Real> twiddle_fetch(const TwiddleTable<Real>& table, std::uint64_t n,
                                   std::uint64_t e) {
  return table.values[(e & (n - 1)) * (table.resolution / n)];
}

}  // namespace detail

/// Radix-2 transform that keeps the whole working set in slow memory: one
/// bit-reversal sweep, then log2(n) butterfly levels, each reading and
/// writing all n elements in place and refetching its twiddle per butterfly.
/// With a trace attached, the permutation sweep lands in the reorder bucket
/// and each level becomes one stage ending in a barrier.
template <typename Real>
Signal<Real> fft_levelwise(const Signal<Real>& x, const TwiddleTable<Real>& table,
                           AccessRecorder* trace = nullptr) {
  const std::size_t n = x.size();
  detail::require(is_power_of_two(n) && n >= 2,
                  "fft_levelwise: signal length must be a power of two >= 2");
  detail::require(table.resolution >= n && table.resolution % n == 0,
                  "fft_levelwise: signal length must divide the table resolution");

  const auto perm = bit_reverse_permutation(n);
  Signal<Real> work(n);
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = x[perm[i]];
  }
  if (trace != nullptr) {
    trace->begin_reorder();
    trace->add_slow_reads(n);
    trace->add_slow_writes(n);
    detail::for_each_reorder_request(
        n, trace->config(),
        [&](std::span<const std::uint64_t> addrs, bool) { trace->record_slow_request(addrs); });
    trace->add_barrier();
  }

  const unsigned total_levels = log2_exact(n);
  for (unsigned level = 1; level <= total_levels; ++level) {
    if (trace != nullptr) {
      trace->begin_stage();
    }
    const std::size_t h = std::size_t{1} << (level - 1);
    const std::size_t span = 2 * h;
    for (std::size_t base = 0; base < n; base += span) {
      for (std::size_t j = 0; j < h; ++j) {
        const Complex<Real> w = detail::twiddle_fetch(table, span, j);
        auto [lo, hi] = butterfly(work[base + j], work[base + j + h], w);
        work[base + j] = lo;
        work[base + j + h] = hi;
      }
    }
    if (trace != nullptr) {
      trace->add_slow_reads(n);
      trace->add_slow_writes(n);
      trace->add_twiddle_fetches(n / 2);
      detail::for_each_levelwise_request(
          n, level, trace->config(),
          [&](std::span<const std::uint64_t> addrs, bool) { trace->record_slow_request(addrs); });
      trace->add_barrier();
    }
  }
  return work;
}

/// Inverse of fft_levelwise via conjugation and 1/n scaling; shares the
/// forward path's traffic behavior.
template <typename Real>
Signal<Real> ifft_levelwise(const Signal<Real>& x, const TwiddleTable<Real>& table) {
  Signal<Real> tmp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    tmp[i] = std::conj(x[i]);
  }
  tmp = fft_levelwise(tmp, table);
  const Real scale = Real{1} / static_cast<Real>(x.size());
  for (auto& v : tmp) {
    v = std::conj(v) * scale;
  }
  return tmp;
}

}  // namespace tilefft
