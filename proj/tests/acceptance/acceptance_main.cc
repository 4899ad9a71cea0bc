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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force_ged.h"
#include "cli.h"
#include "ireco/corpus.h"
#include "ireco/errors.h"
#include "ireco/interpreter.h"
#include "ireco/ir_hash.h"
#include "ireco/ir_printer.h"
#include "ireco/ir_validate.h"
#include "ireco/isomorphism.h"
#include "ireco/metrics.h"
#include "ireco/scheduler.h"
#include "random_graphs.h"
#include "test_util.h"

namespace ireco {
namespace {

namespace fs = std::filesystem;
using testing::LoadTestdataIr;
using testing::ParseOrDie;
using testing::TopGraph;

// Pinned limits.
constexpr double kOracleSeconds = 60;
constexpr double kFig1Seconds = 5;
constexpr double kRoundTripSeconds = 600;
constexpr double kRatioTolerance = 1e-12;
constexpr int kOraclePairs = 200;
constexpr int kSuitePairs = 100;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fmt(double seconds) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2fs", seconds);
  return buffer;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int Cli(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
  std::vector<std::string> argv = {"ireco"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = cli::RunCli(argv, out, err);
  if (stdout_text != nullptr) *stdout_text = out.str();
  return code;
}

fs::path Scratch(const std::string& name) {
  fs::path dir = fs::path(testing::TempDir()) / "acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

IrPatch PatchOf(const Package& a, const Package& b, GedResult* result = nullptr) {
  IrGraph g1 = TopGraph(a);
  IrGraph g2 = TopGraph(b);
  GedResult r = ComputeEditPaths(g1, g2, GedConfig{});
  if (result != nullptr) *result = r;
  return *PatchFromEditPath(r.best, g1, g2, IrHash(a), IrHash(b));
}

Outcome GedOracle() {
  Outcome o;
  Stopwatch clock;
  int agree = 0;
  for (int seed = 0; seed < kOraclePairs; ++seed) {
    auto [g1, g2] = testing::RandomGraphPair(seed);
    absl::StatusOr<testing::BruteForceResult> oracle = testing::BruteForceGed(g1, g2);
    GedResult r = ComputeEditPaths(g1, g2, GedConfig{});
    if (oracle.ok() && r.optimal && r.best.total_cost == oracle->cost) ++agree;
  }
  const double t = clock.Seconds();
  o.Require(agree == kOraclePairs, "cost disagreement");
  o.Require(t < kOracleSeconds, "too slow");
  o.detail = std::to_string(agree) + "/" + std::to_string(kOraclePairs) + " pairs match, " +
             Fmt(t) + (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

Outcome Fig1() {
  Outcome o;
  Stopwatch clock;
  Package a = LoadTestdataIr("fig1a.ir");
  Package b = LoadTestdataIr("fig1b.ir");
  GedResult r;
  IrPatch patch = PatchOf(a, b, &r);
  absl::StatusOr<testing::BruteForceResult> oracle =
      testing::BruteForceGed(TopGraph(a), TopGraph(b));
  const EditCounts c = r.best.Counts();
  o.Require(oracle.ok() && r.optimal && r.best.total_cost == oracle->cost &&
                r.best.total_cost == 8,
            "cost");
  o.Require(c.node_delete == 1 && c.node_insert == 1 && c.edge_delete == 3 &&
                c.edge_insert == 3 && c.node_substitute + c.edge_substitute >= 4,
            "op structure");
  absl::StatusOr<ApplyResult> applied = ApplyPatch(a, patch);
  o.Require(applied.ok() && IsAttributeIsomorphic(TopGraph(applied->package), TopGraph(b)),
            "apply not isomorphic");

  // The same edit at width 4, checked against direct arithmetic.
  Package a4 = LoadTestdataIr("fig1a_w4.ir");
  Package b4 = LoadTestdataIr("fig1b_w4.ir");
  absl::StatusOr<ApplyResult> applied4 = ApplyPatch(a4, PatchOf(a4, b4));
  int mismatches = -1;
  if (applied4.ok()) {
    mismatches = 0;
    const Function& f = *applied4->package.TopFunction();
    for (uint64_t x = 0; x < 16; ++x) {
      for (uint64_t y = 0; y < 16; ++y) {
        for (uint64_t z = 0; z < 16; ++z) {
          std::vector<BitsValue> in = {{4, x}, {4, y}, {4, z}};
          absl::StatusOr<BitsValue> v = Interpret(f, in);
          const uint64_t want = (x - y * z) & 0xF;
          if (!v.ok() || v->value != want) ++mismatches;
        }
      }
    }
  }
  o.Require(mismatches == 0, "w4 result differs from a-(b*c)");
  const double t = clock.Seconds();
  o.Require(t < kFig1Seconds, "too slow");
  o.detail = "cost=" + std::to_string(r.best.total_cost) + " (oracle " +
             (oracle.ok() ? std::to_string(oracle->cost) : "n/a") + "), nodes -" +
             std::to_string(c.node_delete) + "/+" + std::to_string(c.node_insert) + ", edges -" +
             std::to_string(c.edge_delete) + "/+" + std::to_string(c.edge_insert) + ", subs " +
             std::to_string(c.node_substitute + c.edge_substitute) + ", w4 mismatches " +
             std::to_string(mismatches) + ", " + Fmt(t) + (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

struct SuiteResult {
  int pairs = 0;
  int round_trips_ok = 0;
  int cost_identity_ok = 0;
  int invariant_ok = 0;
  double seconds = 0;
  std::string first_failure;
};

SuiteResult RunSuite() {
  SuiteResult s;
  Stopwatch clock;
  for (int seed = 0; seed < kSuitePairs; ++seed) {
    ++s.pairs;
    CorpusPair pair = GenerateCorpusPair(seed);
    absl::StatusOr<testing::RoundTripResult> r = testing::RoundTrip(pair.original, pair.revised);
    if (!r.ok()) {
      if (s.first_failure.empty()) {
        s.first_failure = "seed " + std::to_string(seed) + ": " + std::string(r.status().message());
      }
      continue;
    }
    const EditCounts c = r->ged.best.Counts();
    if (r->patch.total_cost == c.node_insert + c.node_delete + c.edge_insert + c.edge_delete &&
        CostBearingEntryCount(r->patch) == r->patch.total_cost) {
      ++s.cost_identity_ok;
    }
    if (r->isomorphic && r->verdict.status == EquivStatus::kEquivalent &&
        r->verdict.mode == EquivMode::kExhaustive) {
      ++s.round_trips_ok;
    } else if (s.first_failure.empty()) {
      s.first_failure = "seed " + std::to_string(seed) + " not equivalent";
    }
    const std::vector<bool>& phases = r->applied.report.slots_populated_after_phase;
    if (phases.size() == 4 && std::all_of(phases.begin(), phases.end(), [](bool b) { return b; }) &&
        r->applied.report.dummies_remaining == 0 && Validate(r->applied.package).empty()) {
      ++s.invariant_ok;
    }
  }
  s.seconds = clock.Seconds();
  return s;
}

Outcome CostIdentity(const SuiteResult& suite) {
  Outcome o;
  o.Require(suite.cost_identity_ok == suite.pairs, "corpus patch breaks identity");
  struct Row {
    int64_t n_add, n_del, e_add, e_del, cost;
  };
  const Row rows[] = {{1, 1, 8, 8, 18},       {57, 56, 162, 162, 437}, {11, 127, 161, 391, 690},
                      {47, 21, 373, 337, 778}, {3, 0, 96, 91, 190},     {11, 3, 253, 243, 510}};
  int rows_ok = 0;
  for (const Row& r : rows) {
    absl::StatusOr<EcoMetrics> m = MetricsFromCounts(r.n_del, r.e_del, r.n_add, r.n_del, r.e_add,
                                                     r.e_del);
    if (m.ok() && m->change == r.cost) ++rows_ok;
  }
  o.Require(rows_ok == 6, "reference row breaks identity");
  o.detail = std::to_string(suite.cost_identity_ok) + "/" + std::to_string(suite.pairs) +
             " corpus patches, " + std::to_string(rows_ok) + "/6 reference rows" +
             (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

Outcome Metrics() {
  Outcome o;
  absl::StatusOr<EcoMetrics> m = MetricsFromCounts(54, 74, 1, 1, 8, 8);
  o.Require(m.ok(), "metrics failed");
  if (!m.ok()) return o;
  const double exact = 119.0 / 137.0;
  o.Require(m->reuse == 119 && m->change == 18, "counts");
  o.Require(m->reuse_ratio == Rational::Of(119, 137), "ratio");
  o.Require(std::abs(m->reuse_ratio.ToDouble() - exact) <= kRatioTolerance, "ratio value");
  const std::string text = RenderReport(*m, nullptr, nullptr, ReportFormat::kText);
  o.Require(text.find("reuse_ratio=0.8686131387\n") != std::string::npos, "rendering");
  char digits[32];
  std::snprintf(digits, sizeof(digits), "%.12f", m->reuse_ratio.ToDouble());
  o.detail = "reuse=" + std::to_string(m->reuse) + " change=" + std::to_string(m->change) +
             " reuse_ratio=" + m->reuse_ratio.ToString() + " = " + digits +
             (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

Outcome RoundTrips(const SuiteResult& suite) {
  Outcome o;
  o.Require(suite.round_trips_ok == suite.pairs, suite.first_failure);
  o.Require(suite.seconds < kRoundTripSeconds, "too slow");
  o.detail = std::to_string(suite.round_trips_ok) + "/" + std::to_string(suite.pairs) +
             " isomorphic and exhaustively equivalent, " + Fmt(suite.seconds) +
             (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

Outcome ApplierInvariants(const SuiteResult& suite) {
  Outcome o;
  o.Require(suite.invariant_ok == suite.pairs, "phase boundary or dummy check failed");
  Package a = LoadTestdataIr("fig1a.ir");
  Package b = LoadTestdataIr("fig1b.ir");
  IrPatch patch = PatchOf(a, b);
  auto it = std::find_if(patch.edit_paths.begin(), patch.edit_paths.end(), [](const EditPathEntry& e) {
    return e.kind == EntryKind::kEdge && e.action == EntryAction::kDelete &&
           e.edge_info->source == "add.1";
  });
  bool rejected = false;
  if (it != patch.edit_paths.end()) {
    patch.edit_paths.erase(it);
    patch.total_cost -= 1;
    rejected = HasErrorKind(ApplyPatch(a, patch).status(), ErrorKind::kInvariantViolation);
  }
  o.Require(rejected, "used-node deletion not rejected");
  o.detail = std::to_string(suite.invariant_ok) + "/" + std::to_string(suite.pairs) +
             " applies clean at every phase, used-node deletion " +
             (rejected ? "rejected" : "accepted") + (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

Outcome Anytime() {
  Outcome o;
  const fs::path dir = Scratch("anytime");
  const std::string a = testing::TestdataPath("anytime_a.ir");
  const std::string b = testing::TestdataPath("anytime_b.ir");
  const int code = Cli({"diff", a, b, "--out", (dir / "final.json").string(), "--emit-improving",
                        (dir / "improving").string()});
  o.Require(code == cli::kExitOk, "diff exit " + std::to_string(code));
  std::vector<int64_t> written;
  if (fs::exists(dir / "improving")) {
    for (const auto& entry : fs::directory_iterator(dir / "improving")) {
      absl::StatusOr<IrPatch> p = ParsePatch(Slurp(entry.path()));
      if (p.ok()) written.push_back(p->total_cost);
    }
  }
  std::sort(written.begin(), written.end());
  Package pa = LoadTestdataIr("anytime_a.ir");
  Package pb = LoadTestdataIr("anytime_b.ir");
  std::vector<int64_t> emitted;
  ComputeEditPaths(TopGraph(pa), TopGraph(pb), GedConfig{},
                   [&](const EditPath& p) { emitted.push_back(p.total_cost); });
  bool decreasing = emitted.size() >= 2;
  for (size_t i = 1; i < emitted.size(); ++i) decreasing &= emitted[i] < emitted[i - 1];
  absl::StatusOr<testing::BruteForceResult> oracle =
      testing::BruteForceGed(TopGraph(pa), TopGraph(pb));
  o.Require(written.size() >= 2, "fewer than two patches written");
  o.Require(std::adjacent_find(written.begin(), written.end()) == written.end(), "repeated cost");
  o.Require(decreasing && written.size() == emitted.size(), "emission order");
  o.Require(oracle.ok() && !written.empty() && written.front() == oracle->cost,
            "final cost is not the optimum");
  std::string seq;
  for (int64_t c : emitted) seq += (seq.empty() ? "" : " > ") + std::to_string(c);
  o.detail = std::to_string(written.size()) + " patches, costs " + seq + ", oracle " +
             (oracle.ok() ? std::to_string(oracle->cost) : "n/a") +
             (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

// Direct check of stage ordering and per-stage combinational delay.
bool ScheduleHolds(const Function& f, const PipelineSchedule& s, const DelayModel& dm) {
  std::map<std::string, int64_t> arrival;
  for (const std::string& id : TopologicalOrder(f)) {
    const Node& n = *f.FindNode(id);
    if (!s.cycle_of.count(id)) return false;
    const int stage = s.cycle_of.at(id);
    int64_t start = 0;
    for (const std::string& op : n.operands) {
      if (s.cycle_of.at(op) > stage) return false;
      if (s.cycle_of.at(op) == stage) start = std::max(start, arrival.at(op));
    }
    arrival[id] = start + dm.Delay(n.op);
    if (arrival[id] > s.clock_period_ps) return false;
  }
  return true;
}

Outcome Constraining() {
  Outcome o;
  const DelayModel dm = DelayModel::Default();
  // (a) A design constrained against its own schedule.
  const Package self_pkg = LoadTestdataIr("fig1a.ir");
  const Function& self = *self_pkg.TopFunction();
  PipelineSchedule s = *Schedule(self, 400, dm);
  absl::StatusOr<ConstrainResult> a = ConstrainSchedule(self, s, {}, 400, dm);
  o.Require(a.ok() && a->report.preservation_ratio == (Rational{1, 1}) &&
                a->report.skipped_infeasible == 0,
            "self case");

  // (b) An inserted op lengthens a chain that exactly filled one stage.
  Package before = ParseOrDie(R"(package tight
fn f(x: bits[8]) -> bits[8] {
  a: bits[8] = not(x)
  b: bits[8] = neg(a)
  ret c: bits[8] = not(b)
})");
  Package after = ParseOrDie(R"(package tight
fn f(x: bits[8]) -> bits[8] {
  a: bits[8] = not(x)
  t: bits[8] = add(a, x)
  b: bits[8] = neg(t)
  ret c: bits[8] = not(b)
})");
  absl::StatusOr<ApplyResult> patched = ApplyPatch(before, PatchOf(before, after));
  bool tight_ok = false;
  int tight_infeasible = 0;
  if (patched.ok()) {
    std::set<std::string> inserted;
    for (const auto& [rev, id] : patched->report.inserted_node_ids) inserted.insert(id);
    const Function& f = *patched->package.TopFunction();
    PipelineSchedule orig = *Schedule(*before.TopFunction(), 300, dm);
    absl::StatusOr<ConstrainResult> b = ConstrainSchedule(f, orig, inserted, 300, dm);
    if (b.ok()) {
      tight_infeasible = b->report.skipped_infeasible;
      tight_ok = tight_infeasible >= 1 && ScheduleHolds(f, b->schedule, dm);
    }
  }
  o.Require(tight_ok, "tight insertion case");

  // (c) Literals are skipped one for one.
  const Package lits_pkg = ParseOrDie(R"(fn f(x: bits[8]) -> bits[8] {
  k1: bits[8] = literal(value=1)
  k2: bits[8] = literal(value=2)
  k3: bits[8] = literal(value=200)
  s: bits[8] = add(x, k1)
  t: bits[8] = umul(s, k2)
  ret u: bits[8] = sub(t, k3)
})");
  const Function& lits = *lits_pkg.TopFunction();
  int literal_nodes = 0;
  for (const Node& n : lits.nodes) literal_nodes += n.op == OpKind::kLiteral;
  absl::StatusOr<ConstrainResult> c = ConstrainSchedule(lits, *Schedule(lits, 300, dm), {}, 300, dm);
  o.Require(c.ok() && c->report.skipped_literal == literal_nodes, "literal count");
  o.detail = std::string("self ratio ") + (a.ok() ? a->report.preservation_ratio.ToString() : "n/a") +
             ", tight case infeasible=" + std::to_string(tight_infeasible) +
             ", literals skipped " + (c.ok() ? std::to_string(c->report.skipped_literal) : "n/a") +
             "/" + std::to_string(literal_nodes) + (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

// Runs every command on one pair into dir; returns name -> digest of every
// artifact, stdout included.
std::map<std::string, std::string> RunAllCommands(const fs::path& pair_dir, const fs::path& dir) {
  std::map<std::string, std::string> digests;
  const std::string orig = (pair_dir / "original.ir").string();
  const std::string rev = (pair_dir / "revised.ir").string();
  auto p = [&](const char* name) { return (dir / name).string(); };
  std::string out;
  auto record = [&](const std::string& step, int code) {
    digests[step + ".stdout"] = Sha256Hex(out) + " exit=" + std::to_string(code);
  };
  record("diff", Cli({"diff", orig, rev, "--out", p("patch.json")}, &out));
  record("apply", Cli({"apply", orig, p("patch.json"), "--out", p("patched.ir")}, &out));
  record("schedule", Cli({"schedule", orig, "--period", "400", "--out", p("sched.json")}, &out));
  record("constrain", Cli({"constrain", p("patched.ir"), p("sched.json"), p("patched.ir.apply.json"),
                           "--out", p("constrained.json")},
                          &out));
  record("verify", Cli({"verify", p("patched.ir"), rev}, &out));
  record("report", Cli({"report", p("patch.json"), orig, "--apply-report",
                        p("patched.ir.apply.json"), "--constrain-report",
                        p("constrained.json.constrain.json"), "--format", "json"},
                       &out));
  record("dot", Cli({"dot", rev, "--highlight", p("patch.json")}, &out));
  for (const auto& entry : fs::directory_iterator(dir)) {
    digests[entry.path().filename().string()] = Sha256Hex(Slurp(entry.path()));
  }
  return digests;
}

Outcome Determinism() {
  Outcome o;
  const fs::path root = Scratch("determinism");
  Cli({"gen-corpus", "--seed", "0", "--count", std::to_string(kSuitePairs), "--out-dir",
       (root / "corpus").string()});
  int identical = 0;
  size_t artifacts = 0;
  for (int i = 0; i < kSuitePairs; ++i) {
    const fs::path pair = root / "corpus" / ("pair_" + std::to_string(i));
    const fs::path r1 = root / ("run1_" + std::to_string(i));
    const fs::path r2 = root / ("run2_" + std::to_string(i));
    fs::create_directories(r1);
    fs::create_directories(r2);
    std::map<std::string, std::string> d1 = RunAllCommands(pair, r1);
    std::map<std::string, std::string> d2 = RunAllCommands(pair, r2);
    artifacts += d1.size();
    if (d1 == d2 && d1.size() == 13) ++identical;
  }
  o.Require(identical == kSuitePairs, "output differs between runs");
  o.detail = std::to_string(identical) + "/" + std::to_string(kSuitePairs) +
             " pairs byte-identical across reruns (" + std::to_string(artifacts) + " artifacts)" +
             (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

int Main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " AC" << id << " " << name << ": " << o.detail
              << std::endl;
    failed += !o.pass;
  };
  report(1, "ged-oracle-equivalence", GedOracle());
  report(2, "worked-example", Fig1());
  const SuiteResult suite = RunSuite();
  report(3, "cost-identity", CostIdentity(suite));
  report(4, "metrics-arithmetic", Metrics());
  report(5, "roundtrip-suite", RoundTrips(suite));
  report(6, "applier-invariants", ApplierInvariants(suite));
  report(7, "anytime-emission", Anytime());
  report(8, "schedule-constraining", Constraining());
  report(9, "determinism", Determinism());
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ireco

int main() { return ireco::Main(); }
