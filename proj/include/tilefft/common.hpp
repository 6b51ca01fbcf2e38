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

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilefft {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using Signal = std::vector<Complex<Real>>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// True iff v is a nonzero power of two.
constexpr bool is_power_of_two(std::uint64_t v) noexcept {
  return v != 0 && std::has_single_bit(v);
}

/// Exact base-2 logarithm. Precondition: v is a power of two.
constexpr unsigned log2_exact(std::uint64_t v) noexcept {
  return static_cast<unsigned>(std::countr_zero(v));
}

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw std::invalid_argument(message);
  }
}

/// Reverse the low `bits` bits of `value`. Bits above the field must be zero.
constexpr std::uint64_t bit_reverse(std::uint64_t value, unsigned bits) noexcept {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < bits; ++i) {
    out = (out << 1) | ((value >> i) & 1u);
  }
  return out;
}

}  // namespace detail
}  // namespace tilefft
