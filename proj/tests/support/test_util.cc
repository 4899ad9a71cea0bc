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

#include "test_util.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ireco/ir_hash.h"
#include "ireco/ir_parser.h"
#include "ireco/isomorphism.h"
#include "ireco/status_macros.h"

namespace ireco::testing {

std::string TestdataPath(std::string_view name) {
  return std::string(IRECO_TESTDATA_DIR) + "/" + std::string(name);
}

std::string ReadTestdata(std::string_view name) {
  std::ifstream in(TestdataPath(name));
  if (!in) {
    std::cerr << "missing testdata " << name << "\n";
    std::abort();
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Package ParseOrDie(std::string_view text) {
  absl::StatusOr<Package> pkg = ParseIr(text);
  if (!pkg.ok()) {
    std::cerr << "ParseOrDie: " << pkg.status() << "\n" << text << "\n";
    std::abort();
  }
  return *std::move(pkg);
}

Package LoadTestdataIr(std::string_view name) { return ParseOrDie(ReadTestdata(name)); }

IrGraph TopGraph(const Package& pkg) { return BuildGraph(*pkg.TopFunction()); }

Package AddNetwork(uint64_t seed, int ops) {
  std::mt19937_64 rng(seed);
  std::string text = "package net\n\nfn f(x: bits[8], y: bits[8]) -> bits[8] {\n";
  std::vector<std::string> ids = {"x", "y"};
  for (int i = 0; i < ops; ++i) {
    const std::string id = "n" + std::to_string(i);
    const std::string& first = ids.back();
    const std::string& second = ids[rng() % ids.size()];
    text += std::string(i + 1 == ops ? "  ret " : "  ") + id + ": bits[8] = add(" + first +
            ", " + second + ")\n";
    ids.push_back(id);
  }
  return ParseOrDie(text + "}\n");
}

std::string TempDir() {
  static const std::string dir = [] {
    std::filesystem::path p = std::filesystem::temp_directory_path() /
                              ("ireco_test_" + std::to_string(getpid()));
    std::filesystem::create_directories(p);
    return p.string();
  }();
  return dir;
}

absl::StatusOr<RoundTripResult> RoundTrip(const Package& original,
                                          const Package& revised,
                                          double time_limit_seconds) {
  RoundTripResult r;
  const IrGraph g1 = TopGraph(original);
  const IrGraph g2 = TopGraph(revised);
  GedConfig config;
  config.time_limit = std::chrono::duration<double>(time_limit_seconds);
  r.ged = ComputeEditPaths(g1, g2, config);
  IRECO_ASSIGN_OR_RETURN(IrPatch patch, PatchFromEditPath(r.ged.best, g1, g2,
                                                          IrHash(original),
                                                          IrHash(revised)));
  IRECO_ASSIGN_OR_RETURN(r.patch, ParsePatch(SerializePatch(patch)));
  IRECO_ASSIGN_OR_RETURN(r.applied, ApplyPatch(original, r.patch));
  r.isomorphic = IsAttributeIsomorphic(TopGraph(r.applied.package), g2);
  IRECO_ASSIGN_OR_RETURN(
      r.verdict, CheckEquivalence(*r.applied.package.TopFunction(),
                                  *revised.TopFunction()));
  return r;
}

}  // namespace ireco::testing
