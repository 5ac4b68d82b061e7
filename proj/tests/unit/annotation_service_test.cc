// Copyright 2026 The ctfaug Authors
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

#include "ctfaug/annotation_service.h"

#include <chrono>
#include <filesystem>
#include <thread>

#include "ctfaug/status.h"
#include "gtest/gtest.h"
#include "testing/test_util.h"

namespace ctfaug {
namespace {

using json = nlohmann::ordered_json;
using testing::ScratchDir;
using testing::SmallDataset;

std::shared_ptr<const Workspace> SharedWorkspace() {
  static auto ws = Workspace::Build(SmallDataset(), ExperimentConfig{});
  return ws;
}

// First top term for which the lexicon offers antonyms.
std::string TermWithAntonyms(AnnotationService& service, const std::string& id) {
  const auto listed = service.ListCandidates(id);
  for (const auto& c : listed["candidates"]) {
    const std::string term = c["term"];
    if (!service.Antonyms(id, term)["candidates"].empty()) return term;
  }
  return "";
}

TEST(WorkspaceTest, BuildsBaselineAndMatches) {
  auto ws = SharedWorkspace();
  EXPECT_EQ(ws->train.size(), 60u);
  EXPECT_FALSE(ws->baseline.top_terms.entries.empty());
  EXPECT_FALSE(ws->matches.empty());
  EXPECT_NE(ws->FindTrainDocument("tr0"), nullptr);
  EXPECT_EQ(ws->FindTrainDocument("nope"), nullptr);
}

TEST(SessionTest, CreateListAndReuse) {
  AnnotationService service(SharedWorkspace(), {});
  auto a = service.CreateSession();
  auto b = service.CreateSession();
  EXPECT_NE(a["session_id"], b["session_id"]);
  EXPECT_EQ(a["dataset"], "small");
  EXPECT_EQ(a["revision"], 0);
  auto named = service.CreateSession("alice_1");
  EXPECT_EQ(service.CreateSession("alice_1"), named);
  EXPECT_EQ(service.SessionIds().size(), 3u);
  EXPECT_THROW(service.CreateSession("../etc"), InvalidArgument);
  EXPECT_THROW(service.CreateSession(std::string(65, 'a')), InvalidArgument);
  EXPECT_THROW(service.Session("missing"), NotFound);
  EXPECT_THROW(service.ListCandidates("missing"), NotFound);
}

TEST(SessionTest, JsonRoundTripAndContentHash) {
  AnnotationSession s;
  s.session_id = "x";
  s.dataset = "d";
  s.revision = 3;
  s.decisions["great"] = {true, {"awful"}};
  auto back = AnnotationSession::FromJson(nlohmann::json::parse(s.ToJson().dump()));
  EXPECT_EQ(back.decisions, s.decisions);
  EXPECT_EQ(back.revision, 3u);
  EXPECT_EQ(back.ContentHash(), s.ContentHash());
  back.decisions["fun"] = {false, {}};
  EXPECT_NE(back.ContentHash(), s.ContentHash());
}

TEST(CandidatesTest, OrderedByMagnitudeWithUndecidedState) {
  AnnotationService service(SharedWorkspace(), {});
  service.CreateSession("s");
  auto out = service.ListCandidates("s");
  const auto& list = out["candidates"];
  ASSERT_FALSE(list.empty());
  for (std::size_t i = 0; i < list.size(); ++i) {
    EXPECT_EQ(list[i]["decision"]["state"], "undecided");
    if (i > 0) {
      EXPECT_GE(std::abs(list[i - 1]["coefficient"].get<double>()),
                std::abs(list[i]["coefficient"].get<double>()));
    }
    if (!list[i]["best_match"].is_null()) {
      const double score = list[i]["best_match"]["score"];
      EXPECT_EQ(list[i]["predicted_causal"].get<bool>(), score >= 0.95);
    }
  }
  EXPECT_THROW(service.Antonyms("s", "zzz"), NotFound);
}

TEST(SubmitTest, ValidatesAndIsIdempotent) {
  AnnotationService service(SharedWorkspace(), {});
  service.CreateSession("s");
  const std::string term = TermWithAntonyms(service, "s");
  ASSERT_FALSE(term.empty());
  auto offered = service.Antonyms("s", term)["candidates"];
  const std::string antonym = offered[0]["term"];

  EXPECT_THROW(service.SubmitAnnotation("s", "zzz", true, std::nullopt), NotFound);
  EXPECT_THROW(service.SubmitAnnotation("s", term, true,
                                        std::vector<std::string>{"not-offered"}),
               InvalidArgument);

  auto first = service.SubmitAnnotation("s", term, true, std::nullopt);
  EXPECT_EQ(first["revision"], 1);
  EXPECT_EQ(first["decisions"][term]["chosen_antonyms"].size(), offered.size());
  auto same = service.SubmitAnnotation("s", term, true, std::nullopt);
  EXPECT_EQ(same["revision"], 1);
  auto narrowed = service.SubmitAnnotation("s", term, true,
                                           std::vector<std::string>{antonym, antonym});
  // a single offered antonym makes the narrowed decision identical
  const int narrowed_revision = offered.size() > 1 ? 2 : 1;
  EXPECT_EQ(narrowed["revision"], narrowed_revision);
  EXPECT_EQ(narrowed["decisions"][term]["chosen_antonyms"], json::array({antonym}));

  auto listed = service.ListCandidates("s")["candidates"];
  for (const auto& c : listed) {
    if (c["term"] == term) EXPECT_EQ(c["decision"]["state"], "causal");
  }
  auto not_causal = service.SubmitAnnotation("s", term, false, std::nullopt);
  EXPECT_EQ(not_causal["revision"], narrowed_revision + 1);
  EXPECT_FALSE(not_causal["decisions"][term]["causal"].get<bool>());
}

TEST(RetrainTest, RequiresCausalDecision) {
  AnnotationService service(SharedWorkspace(), {});
  service.CreateSession("s");
  EXPECT_THROW(service.Retrain("s", 0), InvalidArgument);
  EXPECT_EQ(service.Report("s")["status"], "idle");
  EXPECT_TRUE(service.Report("s")["report"].is_null());
}

TEST(RetrainTest, ProducesReportAndBumpsRevision) {
  AnnotationService service(SharedWorkspace(), {});
  service.CreateSession("s");
  const std::string term = TermWithAntonyms(service, "s");
  service.SubmitAnnotation("s", term, true, std::nullopt);
  auto out = service.Retrain("s", 0);
  ASSERT_EQ(out["status"], "done");
  EXPECT_EQ(out["revision"], 2);
  const auto& row = out["report"]["row"];
  EXPECT_EQ(row["level"], "auto_annotated_top_terms");
  EXPECT_GT(row["n_counterfactuals"].get<int>(), 0);
  EXPECT_LE(out["report"]["top_changes"].size(), 10u);
  auto report = service.Report("s");
  EXPECT_EQ(report["status"], "idle");
  EXPECT_EQ(report["report"], out["report"]);
  // same decisions and seed give the same report
  service.CreateSession("t");
  service.SubmitAnnotation("t", term, true, std::nullopt);
  EXPECT_EQ(service.Retrain("t", 0)["report"], out["report"]);
}

TEST(RetrainTest, ZeroBudgetReturnsRunningOrDone) {
  AnnotationService::Options options;
  options.retrain_budget = std::chrono::milliseconds(0);
  AnnotationService service(SharedWorkspace(), options);
  service.CreateSession("s");
  service.SubmitAnnotation("s", TermWithAntonyms(service, "s"), true, std::nullopt);
  auto out = service.Retrain("s", 0);
  const std::string status = out["status"];
  EXPECT_TRUE(status == "running" || status == "done");
  for (int i = 0; i < 600 && service.Report("s")["status"] == "running"; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  EXPECT_FALSE(service.Report("s")["report"].is_null());
}

TEST(PersistenceTest, ReloadsSessionsFromStateDir) {
  ScratchDir dir("service");
  AnnotationService::Options options;
  options.state_dir = dir.path().string();
  std::string term;
  json saved;
  {
    AnnotationService service(SharedWorkspace(), options);
    service.CreateSession("keep");
    term = TermWithAntonyms(service, "keep");
    saved = service.SubmitAnnotation("keep", term, true, std::nullopt);
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "keep.json"));
  AnnotationService reloaded(SharedWorkspace(), options);
  EXPECT_EQ(reloaded.SessionIds(), std::vector<std::string>{"keep"});
  EXPECT_EQ(reloaded.Session("keep"), saved);
  // fresh ids skip the persisted one
  EXPECT_NE(reloaded.CreateSession()["session_id"], "keep");
}

TEST(CounterfactualPreviewTest, FlipsLabelsAndRespectsLimit) {
  AnnotationService service(SharedWorkspace(), {});
  service.CreateSession("s");
  const std::string term = TermWithAntonyms(service, "s");
  auto out = service.Counterfactuals("s", term, 3);
  EXPECT_EQ(out["term"], term);
  ASSERT_FALSE(out["counterfactuals"].empty());
  EXPECT_LE(out["counterfactuals"].size(), 3u);
  for (const auto& c : out["counterfactuals"]) {
    EXPECT_NE(c["label"], c["source_label"]);
    EXPECT_NE(c["text"], c["source_text"]);
    EXPECT_FALSE(c["substitutions"].empty());
  }
  EXPECT_THROW(service.Counterfactuals("s", "zzz", 3), NotFound);
}

}  // namespace
}  // namespace ctfaug
