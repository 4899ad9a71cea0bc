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

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ireco/corpus.h"
#include "ireco/equivalence.h"
#include "ireco/errors.h"
#include "ireco/interpreter.h"
#include "test_util.h"

namespace ireco {
namespace {

using ::ireco::testing::LoadTestdataIr;
using ::ireco::testing::RoundTrip;
using ::testing::HasSubstr;

// The documented input order, rebuilt from scratch.
std::vector<std::vector<BitsValue>> OracleVectors(const Function& f, const EquivConfig& c) {
  std::vector<int64_t> widths;
  int64_t total = 0;
  for (const DataType& t : f.ParamTypes()) {
    widths.push_back(t.width);
    total += t.width;
  }
  std::vector<std::vector<BitsValue>> out;
  auto make = [&](const std::vector<uint64_t>& raw) {
    std::vector<BitsValue> v;
    for (size_t i = 0; i < raw.size(); ++i) v.push_back({widths[i], raw[i]});
    out.push_back(v);
  };
  if (total <= c.exhaustive_bit_limit) {
    for (uint64_t code = 0; code < (uint64_t{1} << total); ++code) {
      std::vector<uint64_t> raw(widths.size());
      uint64_t rest = code;
      for (size_t i = widths.size(); i-- > 0;) {
        raw[i] = rest & WidthMask(widths[i]);
        rest >>= widths[i];
      }
      make(raw);
    }
    return out;
  }
  std::vector<uint64_t> raw(widths.size(), 0);
  make(raw);
  for (size_t i = 0; i < widths.size(); ++i) raw[i] = WidthMask(widths[i]);
  make(raw);
  for (size_t i = 0; i < widths.size(); ++i) {
    for (int64_t b = 0; b < widths[i]; ++b) {
      std::vector<uint64_t> one(widths.size(), 0);
      one[i] = uint64_t{1} << b;
      make(one);
    }
  }
  std::mt19937_64 rng(c.seed);
  for (int64_t s = 0; s < c.max_samples; ++s) {
    for (size_t i = 0; i < widths.size(); ++i) raw[i] = rng() & WidthMask(widths[i]);
    make(raw);
  }
  return out;
}

// Index of the first disagreeing vector, or -1.
int64_t OracleFirstMismatch(const Function& f1, const Function& f2, const EquivConfig& c,
                            int64_t* total = nullptr) {
  std::vector<std::vector<BitsValue>> vectors = OracleVectors(f1, c);
  if (total != nullptr) *total = static_cast<int64_t>(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (!(*Interpret(f1, vectors[i]) == *Interpret(f2, vectors[i]))) {
      return static_cast<int64_t>(i);
    }
  }
  return -1;
}

void ExpectMatchesOracle(const Function& f1, const Function& f2, const EquivConfig& c,
                         const EquivVerdict& v) {
  int64_t total = 0;
  const int64_t bad = OracleFirstMismatch(f1, f2, c, &total);
  if (bad < 0) {
    EXPECT_NE(v.status, EquivStatus::kCounterexampleFound);
    EXPECT_EQ(v.samples_run, total);
    return;
  }
  ASSERT_EQ(v.status, EquivStatus::kCounterexampleFound);
  EXPECT_EQ(v.samples_run, bad + 1);
  EXPECT_EQ(v.counterexample->inputs, OracleVectors(f1, c)[bad]);
}

TEST(EquivalenceTest, SelfIsEquivalentExhaustively) {
  Package a = LoadTestdataIr("fig1a_w4.ir");
  absl::StatusOr<EquivVerdict> v = CheckEquivalence(*a.TopFunction(), *a.TopFunction());
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v->status, EquivStatus::kEquivalent);
  EXPECT_EQ(v->mode, EquivMode::kExhaustive);
  EXPECT_EQ(v->samples_run, 4096);
}

TEST(EquivalenceTest, NarrowExampleHasFirstCounterexample) {
  const Function f1 = *LoadTestdataIr("fig1a_w4.ir").TopFunction();
  const Function f2 = *LoadTestdataIr("fig1b_w4.ir").TopFunction();
  absl::StatusOr<EquivVerdict> v = CheckEquivalence(f1, f2);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v->mode, EquivMode::kExhaustive);
  ExpectMatchesOracle(f1, f2, EquivConfig{}, *v);
}

TEST(EquivalenceTest, WideExampleUsesRandomMode) {
  const Function f1 = *LoadTestdataIr("fig1a.ir").TopFunction();
  const Function f2 = *LoadTestdataIr("fig1b.ir").TopFunction();
  absl::StatusOr<EquivVerdict> v = CheckEquivalence(f1, f2);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v->mode, EquivMode::kRandom);
  ASSERT_EQ(v->status, EquivStatus::kCounterexampleFound);
  EXPECT_EQ(*Interpret(f1, v->counterexample->inputs), v->counterexample->lhs);
  EXPECT_EQ(*Interpret(f2, v->counterexample->inputs), v->counterexample->rhs);
  EXPECT_NE(v->counterexample->lhs, v->counterexample->rhs);
  ExpectMatchesOracle(f1, f2, EquivConfig{}, *v);
}

TEST(EquivalenceTest, RandomModeNeverClaimsEquivalence) {
  const Function f = *LoadTestdataIr("fig1a.ir").TopFunction();
  EquivConfig c;
  c.max_samples = 500;
  absl::StatusOr<EquivVerdict> v = CheckEquivalence(f, f, c);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v->status, EquivStatus::kInconclusive);
  EXPECT_EQ(v->samples_run, 2 + 24 + 500);
}

TEST(EquivalenceTest, PatchedNarrowExampleIsEquivalent) {
  absl::StatusOr<testing::RoundTripResult> r =
      RoundTrip(LoadTestdataIr("fig1a_w4.ir"), LoadTestdataIr("fig1b_w4.ir"));
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->verdict.status, EquivStatus::kEquivalent);
  EXPECT_EQ(r->verdict.mode, EquivMode::kExhaustive);
}

TEST(EquivalenceTest, SignatureMismatch) {
  const Function f1 = *LoadTestdataIr("fig1a_w4.ir").TopFunction();
  const Function f2 = *LoadTestdataIr("fig1a.ir").TopFunction();
  EXPECT_TRUE(HasErrorKind(CheckEquivalence(f1, f2).status(), ErrorKind::kSignatureMismatch));
  EXPECT_TRUE(
      HasErrorKind(CheckEquivalenceSerial(f1, f2).status(), ErrorKind::kSignatureMismatch));
}

TEST(EquivalenceTest, FormatVerdict) {
  const Function f1 = *LoadTestdataIr("fig1a_w4.ir").TopFunction();
  const Function f2 = *LoadTestdataIr("fig1b_w4.ir").TopFunction();
  const std::string text = FormatVerdict(*CheckEquivalence(f1, f2));
  EXPECT_THAT(text, HasSubstr("status=counterexample"));
  EXPECT_THAT(text, HasSubstr("mode=exhaustive"));
}

TEST(EquivalencePropertyTest, KernelsAgreeWithOracleOnCorpus) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    CorpusPair pair = GenerateCorpusPair(seed);
    const Function& f1 = *pair.original.TopFunction();
    const Function& f2 = *pair.revised.TopFunction();
    for (int limit : {20, 0}) {
      EquivConfig c;
      c.exhaustive_bit_limit = limit;
      c.max_samples = 2000;
      c.seed = seed;
      absl::StatusOr<EquivVerdict> serial = CheckEquivalenceSerial(f1, f2, c);
      if (!serial.ok()) {
        // Width-changing mutations may alter the signature.
        EXPECT_TRUE(HasErrorKind(serial.status(), ErrorKind::kSignatureMismatch));
        continue;
      }
      ExpectMatchesOracle(f1, f2, c, *serial);
      for (int threads : {1, 2, 4}) {
        c.num_threads = threads;
        absl::StatusOr<EquivVerdict> parallel = CheckEquivalence(f1, f2, c);
        ASSERT_TRUE(parallel.ok());
        EXPECT_EQ(*parallel, *serial) << "seed " << seed << " threads " << threads;
      }
    }
  }
}

TEST(EquivalencePropertyTest, DeterministicInSeed) {
  const Function f1 = *LoadTestdataIr("fig1a.ir").TopFunction();
  const Function f2 = *LoadTestdataIr("fig1a.ir").TopFunction();
  EquivConfig c;
  c.seed = 42;
  c.max_samples = 1000;
  EXPECT_EQ(*CheckEquivalence(f1, f2, c), *CheckEquivalence(f1, f2, c));
}

}  // namespace
}  // namespace ireco
