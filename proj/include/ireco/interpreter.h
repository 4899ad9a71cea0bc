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

#ifndef IRECO_INTERPRETER_H_
#define IRECO_INTERPRETER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/ir.h"

namespace ireco {

struct BitsValue {
  int64_t width = 1;
  uint64_t value = 0;

  friend bool operator==(const BitsValue&, const BitsValue&) = default;
};

inline uint64_t WidthMask(int64_t width) {
  return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

// Evaluates f on inputs (one per param, in signature order) with unsigned
// modular semantics at every node's declared width. Fails with kEvalError on
// arity/width mismatches of the inputs or a malformed function.
absl::StatusOr<BitsValue> Interpret(const Function& f,
                                    std::span<const BitsValue> inputs);

// A function lowered to a flat instruction list. Evaluation is allocation
// free given a scratch buffer, and const, so one instance can be shared by
// many threads.
class CompiledFunction {
 public:
  static absl::StatusOr<CompiledFunction> Compile(const Function& f);

  // inputs[i] is the raw value of param i; scratch must hold ScratchSize().
  uint64_t Evaluate(std::span<const uint64_t> inputs,
                    std::span<uint64_t> scratch) const;

  size_t ScratchSize() const { return instructions_.size(); }
  const std::vector<int64_t>& param_widths() const { return param_widths_; }
  int64_t return_width() const { return return_width_; }

 private:
  struct Instruction {
    OpKind op;
    int64_t width;
    // Literal value, bit_slice start, or sel case count.
    uint64_t imm = 0;
    int32_t param_index = -1;
    bool has_default = false;
    std::vector<int32_t> operands;
    std::vector<int64_t> operand_widths;
  };

  std::vector<Instruction> instructions_;
  std::vector<int64_t> param_widths_;
  int32_t return_slot_ = 0;
  int64_t return_width_ = 1;
};

// Parses an input-vector file: one test per line, comma-separated decimal
// values in param order. Blank lines and "//" comments are skipped.
absl::StatusOr<std::vector<std::vector<BitsValue>>> ParseInputVectors(
    std::string_view text, const Function& f);

}  // namespace ireco

#endif  // IRECO_INTERPRETER_H_
