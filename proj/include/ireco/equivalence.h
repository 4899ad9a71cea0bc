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

#ifndef IRECO_EQUIVALENCE_H_
#define IRECO_EQUIVALENCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/interpreter.h"
#include "ireco/ir.h"

namespace ireco {

enum class EquivStatus { kEquivalent, kCounterexampleFound, kInconclusive };
enum class EquivMode { kExhaustive, kRandom };

std::string_view EquivStatusName(EquivStatus status);
std::string_view EquivModeName(EquivMode mode);

struct Counterexample {
  std::vector<BitsValue> inputs;
  BitsValue lhs;
  BitsValue rhs;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct EquivVerdict {
  EquivStatus status = EquivStatus::kEquivalent;
  EquivMode mode = EquivMode::kExhaustive;
  std::optional<Counterexample> counterexample;
  // Vectors evaluated up to and including the counterexample, if any.
  int64_t samples_run = 0;

  friend bool operator==(const EquivVerdict&, const EquivVerdict&) = default;
};

struct EquivConfig {
  uint64_t seed = 0;
  // Random vectors on top of the corner vectors in random mode.
  int64_t max_samples = 10000;
  // Input spaces of at most this many bits are checked exhaustively.
  int exhaustive_bit_limit = 20;
  // 0 uses the OpenMP default.
  int num_threads = 0;
};

// Inputs are visited in a canonical order: exhaustive mode counts through
// all values with param 0 most significant; random mode runs all-zeros,
// all-ones and every single-bit vector, then max_samples vectors drawn from
// mt19937_64(seed). The reported counterexample is the first one in that
// order. Random mode never claims kEquivalent; it reports kInconclusive.
// Fails with kSignatureMismatch when param or return widths differ.
absl::StatusOr<EquivVerdict> CheckEquivalence(const Function& f1,
                                              const Function& f2,
                                              const EquivConfig& config = {});

// Single-threaded reference over the tree-walking interpreter; same visiting
// order and verdicts as CheckEquivalence.
absl::StatusOr<EquivVerdict> CheckEquivalenceSerial(const Function& f1,
                                                    const Function& f2,
                                                    const EquivConfig& config = {});

// Human-readable one-paragraph rendering of a verdict.
std::string FormatVerdict(const EquivVerdict& verdict);

}  // namespace ireco

#endif  // IRECO_EQUIVALENCE_H_
