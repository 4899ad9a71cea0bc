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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ireco/errors.h"
#include "ireco/ged.h"
#include "ireco/ir_hash.h"
#include "ireco/patch.h"
#include "json.hpp"
#include "test_util.h"

namespace ireco {
namespace {

using ::ireco::testing::LoadTestdataIr;
using ::ireco::testing::TopGraph;
using ::testing::HasSubstr;
using json = nlohmann::json;

IrPatch Fig1Patch() {
  Package a = LoadTestdataIr("fig1a.ir");
  Package b = LoadTestdataIr("fig1b.ir");
  IrGraph g1 = TopGraph(a);
  IrGraph g2 = TopGraph(b);
  GedResult r = ComputeEditPaths(g1, g2, GedConfig{});
  absl::StatusOr<IrPatch> patch =
      PatchFromEditPath(r.best, g1, g2, IrHash(a), IrHash(b));
  EXPECT_TRUE(patch.ok()) << patch.status();
  return *patch;
}

TEST(PatchTest, Fig1HasOneEntryPerOp) {
  IrPatch p = Fig1Patch();
  EXPECT_EQ(p.total_cost, 8);
  EXPECT_EQ(CostBearingEntryCount(p), 8);
  int subs = 0;
  for (const EditPathEntry& e : p.edit_paths) {
    if (e.action == EntryAction::kSubstitute) {
      ++subs;
      EXPECT_EQ(e.cost, 0);
    } else {
      EXPECT_EQ(e.cost, 1);
    }
    EXPECT_EQ(e.node_info.has_value(), e.kind == EntryKind::kNode);
    EXPECT_EQ(e.edge_info.has_value(), e.kind == EntryKind::kEdge);
  }
  EXPECT_EQ(subs, static_cast<int>(p.edit_paths.size()) - 8);
  EXPECT_EQ(p.target_function.name, "f");
  EXPECT_EQ(p.target_function.return_node, "sub.3");
  EXPECT_EQ(p.source_ir_hash.size(), 64u);
  EXPECT_NE(p.source_ir_hash, p.target_ir_hash);
}

TEST(PatchTest, SerializeParseRoundTrip) {
  IrPatch p = Fig1Patch();
  std::string text = SerializePatch(p);
  absl::StatusOr<IrPatch> back = ParsePatch(text);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, p);
  EXPECT_EQ(SerializePatch(*back), text);
}

TEST(PatchTest, EmptyPatchRoundTrips) {
  IrPatch p;
  p.source_ir_hash = p.target_ir_hash = std::string(64, '0');
  p.target_function = {"f", {"x"}, "x"};
  absl::StatusOr<IrPatch> back = ParsePatch(SerializePatch(p));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, p);
}

TEST(PatchTest, SubstitutionsNameBothSides) {
  IrPatch p = Fig1Patch();
  bool saw_renamed_edge = false;
  for (const EditPathEntry& e : p.edit_paths) {
    if (e.action != EntryAction::kSubstitute) continue;
    if (e.kind == EntryKind::kNode) {
      ASSERT_TRUE(e.node_info->counterpart_id.has_value());
    } else {
      ASSERT_TRUE(e.edge_info->counterpart.has_value());
      saw_renamed_edge = true;
    }
  }
  EXPECT_TRUE(saw_renamed_edge);
}

class PatchMutationTest : public ::testing::Test {
 protected:
  json Doc() { return json::parse(SerializePatch(Fig1Patch())); }
  absl::Status Parse(const json& doc) { return ParsePatch(doc.dump()).status(); }
};

TEST_F(PatchMutationTest, RejectsOtherSchemaVersion) {
  json doc = Doc();
  doc["schema_version"] = 99;
  absl::Status s = Parse(doc);
  EXPECT_TRUE(HasErrorKind(s, ErrorKind::kSchemaError));
  EXPECT_THAT(std::string(s.message()), HasSubstr("schema_version"));
}

TEST_F(PatchMutationTest, RejectsUnknownAction) {
  json doc = Doc();
  doc["edit_paths"][0]["action"] = "rotate";
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsUnknownKind) {
  json doc = Doc();
  doc["edit_paths"][0]["kind"] = "hyperedge";
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsMissingFields) {
  for (const char* key : {"source_ir_hash", "target_ir_hash", "edit_paths",
                          "total_cost", "schema_version", "target_function"}) {
    json doc = Doc();
    doc.erase(key);
    EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError)) << key;
  }
  json doc = Doc();
  doc["edit_paths"][0].erase("cost");
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsMistypedField) {
  json doc = Doc();
  doc["total_cost"] = "eight";
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsCostIdentityViolation) {
  json doc = Doc();
  doc["total_cost"] = 7;
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsNonUnitCost) {
  json doc = Doc();
  for (json& e : doc["edit_paths"]) {
    if (e["action"] == "insert") {
      e["cost"] = 2;
      break;
    }
  }
  doc["total_cost"] = 9;
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsMismatchedInfoBlock) {
  json doc = Doc();
  for (json& e : doc["edit_paths"]) {
    if (e["kind"] == "node") {
      e["edge_info"] = e["node_info"];
      e.erase("node_info");
      break;
    }
  }
  EXPECT_TRUE(HasErrorKind(Parse(doc), ErrorKind::kSchemaError));
}

TEST_F(PatchMutationTest, RejectsMalformedJson) {
  EXPECT_TRUE(HasErrorKind(ParsePatch("{\"schema_version\": 1,").status(),
                           ErrorKind::kSchemaError));
  EXPECT_TRUE(HasErrorKind(ParsePatch("[]").status(), ErrorKind::kSchemaError));
}

TEST(PatchTest, SerializationIsDeterministic) {
  EXPECT_EQ(SerializePatch(Fig1Patch()), SerializePatch(Fig1Patch()));
}

}  // namespace
}  // namespace ireco
