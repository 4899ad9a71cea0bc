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

#include "ireco/equivalence.h"

#include <omp.h>

#include <atomic>
#include <random>

#include "ireco/errors.h"
#include "ireco/status_macros.h"

namespace ireco {
namespace {

// The input vectors of one check, addressable by canonical index.
class InputSpace {
 public:
  InputSpace(std::vector<int64_t> widths, const EquivConfig& config)
      : widths_(std::move(widths)) {
    int64_t total = 0;
    for (int64_t w : widths_) total += w;
    mode_ = total <= config.exhaustive_bit_limit ? EquivMode::kExhaustive
                                                 : EquivMode::kRandom;
    if (mode_ == EquivMode::kExhaustive) {
      size_ = int64_t{1} << total;
      return;
    }
    const size_t n = widths_.size();
    auto push = [&](const std::vector<uint64_t>& v) {
      vectors_.insert(vectors_.end(), v.begin(), v.end());
    };
    std::vector<uint64_t> v(n, 0);
    push(v);
    for (size_t i = 0; i < n; ++i) v[i] = WidthMask(widths_[i]);
    push(v);
    for (size_t i = 0; i < n; ++i) {
      for (int64_t bit = 0; bit < widths_[i]; ++bit) {
        std::fill(v.begin(), v.end(), 0);
        v[i] = uint64_t{1} << bit;
        push(v);
      }
    }
    std::mt19937_64 rng(config.seed);
    for (int64_t s = 0; s < config.max_samples; ++s) {
      for (size_t i = 0; i < n; ++i) v[i] = rng() & WidthMask(widths_[i]);
      push(v);
    }
    size_ = n == 0 ? 1 : static_cast<int64_t>(vectors_.size() / n);
  }

  EquivMode mode() const { return mode_; }
  int64_t size() const { return size_; }

  void Fill(int64_t index, std::span<uint64_t> out) const {
    const size_t n = widths_.size();
    if (mode_ == EquivMode::kRandom) {
      for (size_t i = 0; i < n; ++i) out[i] = vectors_[index * n + i];
      return;
    }
    uint64_t rest = static_cast<uint64_t>(index);
    for (size_t i = n; i-- > 0;) {
      out[i] = rest & WidthMask(widths_[i]);
      rest >>= widths_[i];
    }
  }

  std::vector<BitsValue> Bits(int64_t index) const {
    std::vector<uint64_t> raw(widths_.size());
    Fill(index, raw);
    std::vector<BitsValue> out;
    for (size_t i = 0; i < raw.size(); ++i) out.push_back({widths_[i], raw[i]});
    return out;
  }

 private:
  std::vector<int64_t> widths_;
  EquivMode mode_;
  int64_t size_ = 0;
  std::vector<uint64_t> vectors_;
};

absl::StatusOr<std::vector<int64_t>> CommonSignature(const Function& f1,
                                                     const Function& f2) {
  std::vector<int64_t> w1, w2;
  for (const DataType& t : f1.ParamTypes()) w1.push_back(t.width);
  for (const DataType& t : f2.ParamTypes()) w2.push_back(t.width);
  if (w1 != w2 || !(f1.ReturnType() == f2.ReturnType())) {
    return MakeError(ErrorKind::kSignatureMismatch,
                     "functions '" + f1.name + "' and '" + f2.name +
                         "' have different param or return types");
  }
  return w1;
}

absl::StatusOr<EquivVerdict> Finish(const Function& f1, const Function& f2,
                                    const InputSpace& space, int64_t first_bad) {
  EquivVerdict verdict;
  verdict.mode = space.mode();
  if (first_bad < 0) {
    verdict.samples_run = space.size();
    verdict.status = space.mode() == EquivMode::kExhaustive
                         ? EquivStatus::kEquivalent
                         : EquivStatus::kInconclusive;
    return verdict;
  }
  // Re-check on the reference interpreter so no counterexample is reported
  // that direct interpretation would not reproduce.
  Counterexample cex;
  cex.inputs = space.Bits(first_bad);
  IRECO_ASSIGN_OR_RETURN(cex.lhs, Interpret(f1, cex.inputs));
  IRECO_ASSIGN_OR_RETURN(cex.rhs, Interpret(f2, cex.inputs));
  if (cex.lhs == cex.rhs) {
    return MakeError(ErrorKind::kEvalError,
                     "compiled evaluation disagrees with the interpreter");
  }
  verdict.status = EquivStatus::kCounterexampleFound;
  verdict.counterexample = std::move(cex);
  verdict.samples_run = first_bad + 1;
  return verdict;
}

}  // namespace

std::string_view EquivStatusName(EquivStatus status) {
  switch (status) {
    case EquivStatus::kEquivalent:
      return "equivalent";
    case EquivStatus::kCounterexampleFound:
      return "counterexample_found";
    case EquivStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string_view EquivModeName(EquivMode mode) {
  return mode == EquivMode::kExhaustive ? "exhaustive" : "random";
}

absl::StatusOr<EquivVerdict> CheckEquivalence(const Function& f1,
                                              const Function& f2,
                                              const EquivConfig& config) {
  IRECO_ASSIGN_OR_RETURN(std::vector<int64_t> widths, CommonSignature(f1, f2));
  IRECO_ASSIGN_OR_RETURN(CompiledFunction c1, CompiledFunction::Compile(f1));
  IRECO_ASSIGN_OR_RETURN(CompiledFunction c2, CompiledFunction::Compile(f2));
  const InputSpace space(widths, config);
  const int64_t n = space.size();
  std::atomic<int64_t> first_bad{n};
  const int threads = config.num_threads > 0 ? config.num_threads : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::vector<uint64_t> inputs(widths.size());
    std::vector<uint64_t> scratch1(c1.ScratchSize());
    std::vector<uint64_t> scratch2(c2.ScratchSize());
#pragma omp for schedule(dynamic, 4096)
    for (int64_t i = 0; i < n; ++i) {
      if (i >= first_bad.load(std::memory_order_relaxed)) continue;
      space.Fill(i, inputs);
      if (c1.Evaluate(inputs, scratch1) != c2.Evaluate(inputs, scratch2)) {
        int64_t seen = first_bad.load(std::memory_order_relaxed);
        while (i < seen && !first_bad.compare_exchange_weak(seen, i)) {
        }
      }
    }
  }
  const int64_t bad = first_bad.load();
  return Finish(f1, f2, space, bad < n ? bad : -1);
}

absl::StatusOr<EquivVerdict> CheckEquivalenceSerial(const Function& f1,
                                                    const Function& f2,
                                                    const EquivConfig& config) {
  IRECO_ASSIGN_OR_RETURN(std::vector<int64_t> widths, CommonSignature(f1, f2));
  const InputSpace space(widths, config);
  for (int64_t i = 0; i < space.size(); ++i) {
    std::vector<BitsValue> inputs = space.Bits(i);
    IRECO_ASSIGN_OR_RETURN(BitsValue a, Interpret(f1, inputs));
    IRECO_ASSIGN_OR_RETURN(BitsValue b, Interpret(f2, inputs));
    if (!(a == b)) return Finish(f1, f2, space, i);
  }
  return Finish(f1, f2, space, -1);
}

std::string FormatVerdict(const EquivVerdict& verdict) {
  std::string out = "status=" + std::string(EquivStatusName(verdict.status)) +
                    "\nmode=" + std::string(EquivModeName(verdict.mode)) +
                    "\nsamples_run=" + std::to_string(verdict.samples_run) + "\n";
  if (verdict.counterexample.has_value()) {
    const Counterexample& cex = *verdict.counterexample;
    out += "inputs=";
    for (size_t i = 0; i < cex.inputs.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(cex.inputs[i].value);
    }
    out += "\nlhs=" + std::to_string(cex.lhs.value) +
           "\nrhs=" + std::to_string(cex.rhs.value) + "\n";
  }
  return out;
}

}  // namespace ireco
