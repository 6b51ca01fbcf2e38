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

// Minimal tour of the library: transform one signal both ways, trace the
// memory behavior of each, and print the side-by-side traffic table.

#include <cstdio>
#include <random>

#include "tilefft/tilefft.hpp"

int main() {
  using namespace tilefft;

  const std::size_t n = 65536;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Signal<double> x(n);
  for (auto& v : x) {
    const double re = dist(rng);
    const double im = dist(rng);
    v = {re, im};
  }

  const auto table = build_twiddle_table<double>(n);
  const StagePlan plan = make_plan(n);

  AccessRecorder levelwise_trace;
  const auto a = fft_levelwise(x, table, &levelwise_trace);
  AccessRecorder tiled_trace;
  const auto b = fft_tiled(x, plan, table, &tiled_trace);

  std::printf("n = %zu, tiled passes = %zu (factors:", n, plan.pass_count());
  for (const std::size_t f : plan.factors) {
    std::printf(" %zu", f);
  }
  std::printf(")\n");
  std::printf("results agree to %.3g\n\n", max_abs_error(a, b));

  const AccessStats lw = levelwise_trace.totals();
  const AccessStats td = tiled_trace.totals();
  std::printf("%-24s %16s %16s\n", "counter", "levelwise", "tiled");
  std::printf("%-24s %16llu %16llu\n", "slow element accesses",
              (unsigned long long)lw.slow_elem_accesses(),
              (unsigned long long)td.slow_elem_accesses());
  std::printf("%-24s %16llu %16llu\n", "slow transactions",
              (unsigned long long)lw.slow_transactions,
              (unsigned long long)td.slow_transactions);
  std::printf("%-24s %16llu %16llu\n", "bank conflict cycles",
              (unsigned long long)lw.bank_conflict_cycles,
              (unsigned long long)td.bank_conflict_cycles);
  std::printf("%-24s %16llu %16llu\n", "barriers", (unsigned long long)lw.barriers,
              (unsigned long long)td.barriers);
  std::printf("%-24s %16llu %16llu\n", "twiddle fetches",
              (unsigned long long)lw.twiddle_fetches,
              (unsigned long long)td.twiddle_fetches);
  std::printf("\ntraffic reduction ratio: %.1fx\n", reduction_ratio(n, plan));
  return 0;
}
