// Copyright 2026 The ireco Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IRECO_RATIONAL_H_
#define IRECO_RATIONAL_H_

#include <cstdint>
#include <numeric>
#include <string>

namespace ireco {

// Exact non-negative fraction kept in lowest terms. 0/0 is normalized to 1/1
// so empty denominators read as "nothing was lost".
struct Rational {
  int64_t num = 1;
  int64_t den = 1;

  static Rational Of(int64_t num, int64_t den) {
    if (den == 0) return Rational{1, 1};
    const int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
  }

  double ToDouble() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string ToString() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
  Rational Complement() const { return Of(den - num, den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace ireco

#endif  // IRECO_RATIONAL_H_
