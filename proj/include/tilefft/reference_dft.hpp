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
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "tilefft/common.hpp"

namespace tilefft {

namespace detail {

// Unit roots for the direct transforms, sign = -1 for the forward direction.
// Shared by dft_reference and idft_reference; accumulation happens in double
// regardless of the signal's component type so the reference stays a trusted
// yardstick for single-precision runs as well.
inline std::vector<std::complex<double>> unit_circle_table(std::size_t n, int sign) {
  std::vector<std::complex<double>> table(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double angle = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
    table[m] = {std::cos(angle), sign * std::sin(angle)};
  }
  return table;
}

template <typename Real>
Signal<Real> direct_transform(const Signal<Real>& x, int sign, bool scale) {
  require(!x.empty(), "direct transform: input signal is empty");
  const std::size_t n = x.size();
  const auto table = unit_circle_table(n, sign);
  Signal<Real> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      const std::complex<double> sample{static_cast<double>(x[m].real()),
                                        static_cast<double>(x[m].imag())};
      acc += sample * table[(m * k) % n];
    }
    if (scale) {
      acc /= static_cast<double>(n);
    }
    out[k] = {static_cast<Real>(acc.real()), static_cast<Real>(acc.imag())};
  }
  return out;
}

}  // namespace detail

/// Direct O(N^2) evaluation of the discrete Fourier transform. Works for any
/// nonzero length, not just powers of two; used as the correctness oracle for
/// the fast paths.
template <typename Real>
Signal<Real> dft_reference(const Signal<Real>& x) {
  return detail::direct_transform(x, -1, /*scale=*/false);
}

/// Direct O(N^2) inverse transform, with the customary 1/N scaling so that
/// idft_reference(dft_reference(x)) reproduces x up to rounding.
template <typename Real>
Signal<Real> idft_reference(const Signal<Real>& x) {
  return detail::direct_transform(x, +1, /*scale=*/true);
}

/// Largest magnitude |a_k - b_k| over two equal-length signals, evaluated in
/// double precision.
template <typename Real>
double max_abs_error(const Signal<Real>& a, const Signal<Real>& b) {
  detail::require(a.size() == b.size(), "max_abs_error: length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dr = static_cast<double>(a[i].real()) - static_cast<double>(b[i].real());
    const double di = static_cast<double>(a[i].imag()) - static_cast<double>(b[i].imag());
    worst = std::max(worst, std::abs(std::complex<double>{dr, di}));
  }
  return worst;
}

}  // namespace tilefft
