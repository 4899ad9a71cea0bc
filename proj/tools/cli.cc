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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ireco/corpus.h"
#include "ireco/equivalence.h"
#include "ireco/errors.h"
#include "ireco/ged.h"
#include "ireco/graph.h"
#include "ireco/interpreter.h"
#include "ireco/ir_hash.h"
#include "ireco/ir_parser.h"
#include "ireco/ir_printer.h"
#include "ireco/metrics.h"
#include "ireco/patch.h"
#include "ireco/patch_applier.h"
#include "ireco/scheduler.h"
#include "ireco/status_macros.h"

namespace ireco::cli {
namespace {

namespace fs = std::filesystem;

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeError(ErrorKind::kIoError, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

absl::Status WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return MakeError(ErrorKind::kIoError, "cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) return MakeError(ErrorKind::kIoError, "failed writing '" + path + "'");
  return absl::OkStatus();
}

absl::Status MakeDirs(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoError,
                     "cannot create directory '" + path + "': " + ec.message());
  }
  return absl::OkStatus();
}

absl::StatusOr<Package> LoadIr(const std::string& path) {
  IRECO_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<Package> pkg = ParseIr(text);
  if (!pkg.ok()) {
    absl::Status status(pkg.status().code(),
                        path + ": " + std::string(pkg.status().message()));
    pkg.status().ForEachPayload([&](absl::string_view url, const absl::Cord& payload) {
      status.SetPayload(url, payload);
    });
    return status;
  }
  return pkg;
}

absl::StatusOr<IrPatch> LoadPatch(const std::string& path) {
  IRECO_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParsePatch(text);
}

absl::StatusOr<DelayModel> LoadDelays(const std::string& path) {
  if (path.empty()) return DelayModel::Default();
  IRECO_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseDelayModel(text);
}

const Function& Top(const Package& pkg) { return *pkg.TopFunction(); }

struct DiffArgs {
  std::string original;
  std::string revised;
  std::string out;
  double time_limit = 60.0;
  std::string emit_dir;
};

absl::StatusOr<int> RunDiff(const DiffArgs& a, std::ostream& out) {
  if (!(a.time_limit > 0)) {
    return MakeError(ErrorKind::kConfigError, "--time-limit must be positive");
  }
  IRECO_ASSIGN_OR_RETURN(Package p1, LoadIr(a.original));
  IRECO_ASSIGN_OR_RETURN(Package p2, LoadIr(a.revised));
  const IrGraph g1 = BuildGraph(Top(p1));
  const IrGraph g2 = BuildGraph(Top(p2));
  const std::string h1 = IrHash(p1);
  const std::string h2 = IrHash(p2);
  if (!a.emit_dir.empty()) IRECO_RETURN_IF_ERROR(MakeDirs(a.emit_dir));
  GedConfig config;
  config.time_limit = std::chrono::duration<double>(a.time_limit);
  config.emit_improving = !a.emit_dir.empty();
  absl::Status emit_status;
  PathCallback on_improved = [&](const EditPath& path) {
    if (!emit_status.ok()) return;
    absl::StatusOr<IrPatch> patch = PatchFromEditPath(path, g1, g2, h1, h2);
    if (!patch.ok()) {
      emit_status = patch.status();
      return;
    }
    const std::string file =
        (fs::path(a.emit_dir) / ("patch." + std::to_string(path.total_cost) + ".json"))
            .string();
    emit_status = WriteFile(file, SerializePatch(*patch));
  };
  GedResult result = ComputeEditPaths(g1, g2, config, on_improved);
  IRECO_RETURN_IF_ERROR(emit_status);
  IRECO_ASSIGN_OR_RETURN(IrPatch patch, PatchFromEditPath(result.best, g1, g2, h1, h2));
  IRECO_RETURN_IF_ERROR(WriteFile(a.out, SerializePatch(patch)));
  const EditCounts c = result.best.Counts();
  out << "total_cost=" << patch.total_cost << "\n"
      << "optimal=" << (result.optimal ? "true" : "false") << "\n"
      << "node_insert=" << c.node_insert << "\nnode_delete=" << c.node_delete
      << "\nnode_substitute=" << c.node_substitute << "\nedge_insert=" << c.edge_insert
      << "\nedge_delete=" << c.edge_delete << "\nedge_substitute=" << c.edge_substitute
      << "\npaths_emitted=" << result.paths_emitted << "\n";
  return result.optimal ? kExitOk : kExitBestEffort;
}

struct ApplyArgs {
  std::string original;
  std::string patch;
  std::string out;
  std::string report;
  bool force = false;
};

absl::StatusOr<int> RunApply(const ApplyArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(Package pkg, LoadIr(a.original));
  IRECO_ASSIGN_OR_RETURN(IrPatch patch, LoadPatch(a.patch));
  ApplyOptions options;
  options.force = a.force;
  IRECO_ASSIGN_OR_RETURN(ApplyResult result, ApplyPatch(pkg, patch, options));
  IRECO_RETURN_IF_ERROR(WriteFile(a.out, PrintIr(result.package)));
  const std::string report = a.report.empty() ? a.out + ".apply.json" : a.report;
  IRECO_RETURN_IF_ERROR(WriteFile(report, ApplyReportToJson(result.report)));
  out << "reused_nodes=" << result.report.reused_node_ids.size() << "\n"
      << "inserted_nodes=" << result.report.inserted_node_ids.size() << "\n"
      << "dummies_created=" << result.report.dummies_created << "\n"
      << "dummies_remaining=" << result.report.dummies_remaining << "\n";
  return kExitOk;
}

struct ScheduleArgs {
  std::string ir;
  int64_t period = 0;
  std::string delays;
  std::string out;
};

absl::StatusOr<int> RunSchedule(const ScheduleArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(Package pkg, LoadIr(a.ir));
  IRECO_ASSIGN_OR_RETURN(DelayModel dm, LoadDelays(a.delays));
  IRECO_ASSIGN_OR_RETURN(PipelineSchedule s, Schedule(Top(pkg), a.period, dm));
  IRECO_RETURN_IF_ERROR(WriteFile(a.out, ScheduleToJson(s)));
  out << "num_stages=" << s.num_stages << "\n";
  return kExitOk;
}

struct ConstrainArgs {
  std::string patched;
  std::string schedule;
  std::string apply_report;
  std::optional<int64_t> period;
  std::string delays;
  std::string out;
  std::string report;
};

absl::StatusOr<int> RunConstrain(const ConstrainArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(Package pkg, LoadIr(a.patched));
  IRECO_ASSIGN_OR_RETURN(std::string schedule_text, ReadFile(a.schedule));
  IRECO_ASSIGN_OR_RETURN(PipelineSchedule original, ParseSchedule(schedule_text));
  IRECO_ASSIGN_OR_RETURN(std::string report_text, ReadFile(a.apply_report));
  IRECO_ASSIGN_OR_RETURN(ApplyReport apply, ParseApplyReport(report_text));
  IRECO_ASSIGN_OR_RETURN(DelayModel dm, LoadDelays(a.delays));
  std::set<std::string> inserted;
  for (const auto& [revised, id] : apply.inserted_node_ids) inserted.insert(id);
  const int64_t period = a.period.value_or(original.clock_period_ps);
  IRECO_ASSIGN_OR_RETURN(ConstrainResult result,
                         ConstrainSchedule(Top(pkg), original, inserted, period, dm));
  IRECO_RETURN_IF_ERROR(WriteFile(a.out, ScheduleToJson(result.schedule)));
  const std::string report = a.report.empty() ? a.out + ".constrain.json" : a.report;
  IRECO_RETURN_IF_ERROR(WriteFile(report, ConstrainReportToJson(result.report)));
  out << "constrained=" << result.report.constrained.size() << "\n"
      << "skipped_infeasible=" << result.report.skipped_infeasible << "\n"
      << "skipped_literal=" << result.report.skipped_literal << "\n"
      << "skipped_new=" << result.report.skipped_new << "\n"
      << "skipped_removed=" << result.report.skipped_removed << "\n"
      << "preservation_ratio=" << result.report.preservation_ratio.ToString() << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string a;
  std::string b;
  uint64_t seed = 0;
  int64_t samples = 10000;
  int threads = 0;
};

absl::StatusOr<int> RunVerify(const VerifyArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(Package p1, LoadIr(a.a));
  IRECO_ASSIGN_OR_RETURN(Package p2, LoadIr(a.b));
  EquivConfig config;
  config.seed = a.seed;
  config.max_samples = a.samples;
  config.num_threads = a.threads;
  IRECO_ASSIGN_OR_RETURN(EquivVerdict verdict,
                         CheckEquivalence(Top(p1), Top(p2), config));
  out << FormatVerdict(verdict);
  switch (verdict.status) {
    case EquivStatus::kEquivalent:
      return kExitOk;
    case EquivStatus::kCounterexampleFound:
      return kExitCounterexample;
    case EquivStatus::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

struct ReportArgs {
  std::string patch;
  std::string original;
  std::string constrain_report;
  std::string apply_report;
  std::string format = "text";
  std::string out;
};

absl::StatusOr<int> RunReport(const ReportArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(IrPatch patch, LoadPatch(a.patch));
  IRECO_ASSIGN_OR_RETURN(Package pkg, LoadIr(a.original));
  if (IrHash(pkg) != patch.source_ir_hash) {
    return MakeError(ErrorKind::kHashMismatch,
                     "patch was not generated against '" + a.original + "'");
  }
  IRECO_ASSIGN_OR_RETURN(EcoMetrics metrics,
                         ComputeEcoMetrics(patch, BuildGraph(Top(pkg))));
  std::optional<ConstrainReport> constrain;
  if (!a.constrain_report.empty()) {
    IRECO_ASSIGN_OR_RETURN(std::string text, ReadFile(a.constrain_report));
    IRECO_ASSIGN_OR_RETURN(constrain, ParseConstrainReport(text));
  }
  std::optional<ApplyReport> apply;
  if (!a.apply_report.empty()) {
    IRECO_ASSIGN_OR_RETURN(std::string text, ReadFile(a.apply_report));
    IRECO_ASSIGN_OR_RETURN(apply, ParseApplyReport(text));
  }
  const std::string text =
      RenderReport(metrics, constrain ? &*constrain : nullptr, apply ? &*apply : nullptr,
                   a.format == "json" ? ReportFormat::kJson : ReportFormat::kText);
  if (a.out.empty()) {
    out << text;
  } else {
    IRECO_RETURN_IF_ERROR(WriteFile(a.out, text));
  }
  return kExitOk;
}

struct DotArgs {
  std::string ir;
  std::string out;
  std::string highlight;
};

absl::StatusOr<int> RunDot(const DotArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(Package pkg, LoadIr(a.ir));
  const IrGraph g = BuildGraph(Top(pkg));
  std::optional<DotHighlight> highlight;
  if (!a.highlight.empty()) {
    IRECO_ASSIGN_OR_RETURN(IrPatch patch, LoadPatch(a.highlight));
    highlight.emplace();
    for (const EditPathEntry& e : patch.edit_paths) {
      if (e.action != EntryAction::kInsert) continue;
      if (e.node_info.has_value()) highlight->nodes.insert(e.node_info->id);
      if (e.edge_info.has_value()) {
        highlight->edges.insert(
            EdgeKey{e.edge_info->source, e.edge_info->sink, e.edge_info->occurrence});
      }
    }
  }
  const std::string dot = ToDot(g, highlight ? &*highlight : nullptr);
  if (a.out.empty()) {
    out << dot;
  } else {
    IRECO_RETURN_IF_ERROR(WriteFile(a.out, dot));
  }
  return kExitOk;
}

struct InterpretArgs {
  std::string ir;
  std::string vectors;
};

absl::StatusOr<int> RunInterpret(const InterpretArgs& a, std::ostream& out) {
  IRECO_ASSIGN_OR_RETURN(Package pkg, LoadIr(a.ir));
  IRECO_ASSIGN_OR_RETURN(std::string text, ReadFile(a.vectors));
  IRECO_ASSIGN_OR_RETURN(auto vectors, ParseInputVectors(text, Top(pkg)));
  for (const std::vector<BitsValue>& inputs : vectors) {
    IRECO_ASSIGN_OR_RETURN(BitsValue v, Interpret(Top(pkg), inputs));
    out << v.value << "\n";
  }
  return kExitOk;
}

struct CorpusArgs {
  uint64_t seed = 0;
  int count = 1;
  std::string out_dir;
};

absl::StatusOr<int> RunGenCorpus(const CorpusArgs& a, std::ostream& out) {
  for (int i = 0; i < a.count; ++i) {
    CorpusPair pair = GenerateCorpusPair(a.seed + static_cast<uint64_t>(i));
    const fs::path dir = fs::path(a.out_dir) / ("pair_" + std::to_string(i));
    IRECO_RETURN_IF_ERROR(MakeDirs(dir.string()));
    IRECO_RETURN_IF_ERROR(WriteFile((dir / "original.ir").string(), PrintIr(pair.original)));
    IRECO_RETURN_IF_ERROR(WriteFile((dir / "revised.ir").string(), PrintIr(pair.revised)));
    out << dir.string() << ":";
    for (Mutation m : pair.mutations) out << " " << MutationName(m);
    out << "\n";
  }
  return kExitOk;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  std::optional<ErrorKind> kind = GetErrorKind(status);
  if (!kind.has_value()) return kExitApplyError;
  switch (*kind) {
    case ErrorKind::kSyntaxError:
    case ErrorKind::kValidationError:
    case ErrorKind::kDanglingOperand:
    case ErrorKind::kSchemaError:
    case ErrorKind::kConfigError:
      return kExitParseError;
    case ErrorKind::kIoError:
      return kExitIoError;
    case ErrorKind::kHashMismatch:
      return kExitHashMismatch;
    case ErrorKind::kSignatureMismatch:
      return kExitCounterexample;
    default:
      return kExitApplyError;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Incremental ECO flow for dataflow IR: diff, patch, apply, "
               "schedule constraining, metrics and verification."};
  app.name("ireco");
  app.set_config("--config", "", "Read flags from an INI/TOML-style key=value file");
  app.require_subcommand(1);

  DiffArgs diff;
  CLI::App* diff_cmd = app.add_subcommand("diff", "Compute a minimum-cost patch");
  diff_cmd->add_option("original", diff.original, "Original IR")->required();
  diff_cmd->add_option("revised", diff.revised, "Revised IR")->required();
  diff_cmd->add_option("--out", diff.out, "Patch output path")->required();
  diff_cmd->add_option("--time-limit", diff.time_limit, "Search limit in seconds")
      ->capture_default_str();
  diff_cmd->add_option("--emit-improving", diff.emit_dir,
                       "Directory receiving patch.<cost>.json per improvement");

  ApplyArgs apply;
  CLI::App* apply_cmd = app.add_subcommand("apply", "Apply a patch to an IR");
  apply_cmd->add_option("original", apply.original, "Original IR")->required();
  apply_cmd->add_option("patch", apply.patch, "Patch file")->required();
  apply_cmd->add_option("--out", apply.out, "Patched IR output path")->required();
  apply_cmd->add_option("--report", apply.report,
                        "Apply report path (default <out>.apply.json)");
  apply_cmd->add_flag("--force", apply.force, "Apply despite a hash mismatch");

  ScheduleArgs schedule;
  CLI::App* schedule_cmd = app.add_subcommand("schedule", "Pipeline-schedule an IR");
  schedule_cmd->add_option("ir", schedule.ir, "IR file")->required();
  schedule_cmd->add_option("--period", schedule.period, "Clock period in ps")
      ->required();
  schedule_cmd->add_option("--delays", schedule.delays, "Delay model JSON");
  schedule_cmd->add_option("--out", schedule.out, "Schedule output path")->required();

  ConstrainArgs constrain;
  CLI::App* constrain_cmd =
      app.add_subcommand("constrain", "Pin a patched IR to its original schedule");
  constrain_cmd->add_option("patched", constrain.patched, "Patched IR")->required();
  constrain_cmd->add_option("schedule", constrain.schedule, "Original schedule JSON")
      ->required();
  constrain_cmd->add_option("apply_report", constrain.apply_report, "Apply report JSON")
      ->required();
  constrain_cmd->add_option("--period", constrain.period,
                            "Clock period in ps (default: the original's)");
  constrain_cmd->add_option("--delays", constrain.delays, "Delay model JSON");
  constrain_cmd->add_option("--out", constrain.out, "Schedule output path")->required();
  constrain_cmd->add_option("--report", constrain.report,
                            "Constrain report path (default <out>.constrain.json)");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check functional equivalence");
  verify_cmd->add_option("a", verify.a, "First IR")->required();
  verify_cmd->add_option("b", verify.b, "Second IR")->required();
  verify_cmd->add_option("--seed", verify.seed, "Sampling seed")->capture_default_str();
  verify_cmd->add_option("--samples", verify.samples, "Random samples")
      ->capture_default_str();
  verify_cmd->add_option("--threads", verify.threads, "Worker threads (0: default)");

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand("report", "Reuse and change metrics");
  report_cmd->add_option("patch", report.patch, "Patch file")->required();
  report_cmd->add_option("original", report.original, "Original IR")->required();
  report_cmd->add_option("--constrain-report", report.constrain_report,
                         "Constrain report JSON");
  report_cmd->add_option("--apply-report", report.apply_report, "Apply report JSON");
  report_cmd->add_option("--format", report.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  report_cmd->add_option("--out", report.out, "Output path (default stdout)");

  DotArgs dot;
  CLI::App* dot_cmd = app.add_subcommand("dot", "Export an IR graph as DOT");
  dot_cmd->add_option("ir", dot.ir, "IR file")->required();
  dot_cmd->add_option("--out", dot.out, "Output path (default stdout)");
  dot_cmd->add_option("--highlight", dot.highlight,
                      "Patch whose inserted nodes and edges are highlighted");

  InterpretArgs interpret;
  CLI::App* interpret_cmd =
      app.add_subcommand("interpret", "Evaluate an IR on input vectors");
  interpret_cmd->add_option("ir", interpret.ir, "IR file")->required();
  interpret_cmd->add_option("vectors", interpret.vectors,
                            "One comma-separated vector per line")
      ->required();

  CorpusArgs corpus;
  CLI::App* corpus_cmd =
      app.add_subcommand("gen-corpus", "Generate random (original, revised) pairs");
  corpus_cmd->group("");
  corpus_cmd->add_option("--seed", corpus.seed, "First seed");
  corpus_cmd->add_option("--count", corpus.count, "Number of pairs");
  corpus_cmd->add_option("--out-dir", corpus.out_dir, "Output directory")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  absl::StatusOr<int> code = kExitOk;
  if (diff_cmd->parsed()) code = RunDiff(diff, out);
  if (apply_cmd->parsed()) code = RunApply(apply, out);
  if (schedule_cmd->parsed()) code = RunSchedule(schedule, out);
  if (constrain_cmd->parsed()) code = RunConstrain(constrain, out);
  if (verify_cmd->parsed()) code = RunVerify(verify, out);
  if (report_cmd->parsed()) code = RunReport(report, out);
  if (dot_cmd->parsed()) code = RunDot(dot, out);
  if (interpret_cmd->parsed()) code = RunInterpret(interpret, out);
  if (corpus_cmd->parsed()) code = RunGenCorpus(corpus, out);
  if (!code.ok()) {
    err << "error: " << code.status().message() << "\n";
    return ExitCodeFor(code.status());
  }
  return *code;
}

}  // namespace ireco::cli
