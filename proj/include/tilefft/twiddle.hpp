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

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "tilefft/common.hpp"

namespace tilefft {

/// Resolution used when no explicit table size is requested: one table row per
/// unit root of the largest transform length the library targets by default.
inline constexpr std::uint64_t kDefaultTwiddleResolution = std::uint64_t{1} << 20;

/// Precomputed unit roots on the clockwise circle: entry j holds
/// exp(-2*pi*i*j / resolution). One table serves every transform length that
/// divides the resolution, so it is built once and shared across runs — the
/// lookup is a pure stride into read-only storage.
///
/// The table is filled from a single quadrant of cosine/sine evaluations and
/// mirrored to the other three, with the four axis points written as exact
/// constants. Mirroring makes the algebraic identities of the roots —
/// periodicity in the exponent, conjugate symmetry, and invariance of the
/// value under scaling both index and denominator — hold exactly on the
/// stored values, not merely to rounding.
template <typename Real>
struct TwiddleTable {
  std::uint64_t resolution = 0;
  std::vector<Complex<Real>> values;
};

/// Build the shared root table for the given power-of-two resolution.
template <typename Real = double>
TwiddleTable<Real> build_twiddle_table(std::uint64_t resolution = kDefaultTwiddleResolution) {
  detail::require(is_power_of_two(resolution) && resolution >= 2,
                  "build_twiddle_table: resolution must be a power of two >= 2");
  TwiddleTable<Real> table;
  table.resolution = resolution;
  table.values.assign(resolution, Complex<Real>{});

  const Real one = Real{1};
  const Real zero = Real{0};
  table.values[0] = {one, zero};
  table.values[resolution / 2] = {-one, zero};
  if (resolution >= 4) {
    table.values[resolution / 4] = {zero, -one};
    table.values[3 * resolution / 4] = {zero, one};
  }
  for (std::uint64_t j = 1; j < resolution / 4; ++j) {
    const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(resolution);
    const Real c = static_cast<Real>(std::cos(angle));
    const Real s = static_cast<Real>(std::sin(angle));
    table.values[j] = {c, -s};
    table.values[resolution / 2 - j] = {-c, -s};
    table.values[resolution / 2 + j] = {-c, s};
    table.values[resolution - j] = {c, s};
  }
  return table;
}

/// Fetch exp(-2*pi*i*e / n) from the table. The exponent may be negative or
/// exceed n; it is reduced modulo n first. Requires n to be a power of two
/// dividing the table resolution, so the reduced index maps onto an exact
/// table row with no interpolation.
template <typename Real>
Complex<Real> twiddle_lookup(const TwiddleTable<Real>& table, std::uint64_t n, std::int64_t e) {
  detail::require(is_power_of_two(n), "twiddle_lookup: n must be a power of two");
  detail::require(table.resolution != 0 && n <= table.resolution &&
                      table.resolution % n == 0,
                  "twiddle_lookup: n must divide the table resolution");
  const std::int64_t sn = static_cast<std::int64_t>(n);
  std::int64_t m = e % sn;
  if (m < 0) {
    m += sn;
  }
  return table.values[static_cast<std::uint64_t>(m) * (table.resolution / n)];
}

}  // namespace tilefft
