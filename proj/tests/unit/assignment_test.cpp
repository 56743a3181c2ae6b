/*
Copyright 2026 The confreview Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <random>
#include <set>

#include "doctest.h"

#include "assignment_oracle.hpp"
#include "confreview/assignment.hpp"
#include "confreview/error.hpp"
#include "confreview/json_io.hpp"
#include "fixtures.hpp"

using namespace confreview;
using namespace confreview::testing;

namespace {

std::vector<ReviewerId> ids_of(const std::vector<Assignee>& list) {
  std::vector<ReviewerId> out;
  for (const auto& a : list) out.push_back(a.reviewer);
  return out;
}

Bid high(const std::string& r, PaperId p, std::uint64_t seq) {
  return {r, p, BidPriority::kHigh, seq};
}
Bid low(const std::string& r, PaperId p, std::uint64_t seq) {
  return {r, p, BidPriority::kLow, seq};
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("expertise score examples") {
  PaperRecord one = make_paper(1, {1});
  PaperRecord two = make_paper(2, {1, 2});
  auto expert = make_reviewer("e", uniform_expertise(2, KnowledgeLevel::kX));
  CHECK(expertise_score(expert, one)->value() == 3.0);
  CHECK(expertise_score(expert, two)->value() == 3.0);

  auto mixed = make_reviewer("m", {{1, KnowledgeLevel::kX}, {2, KnowledgeLevel::kZ}});
  CHECK(expertise_score(mixed, two)->value() == 2.0);

  auto unwilling = make_reviewer("w", uniform_expertise(2, KnowledgeLevel::kX),
                                 {{2, Willingness::kW}});
  CHECK_FALSE(expertise_score(unwilling, two));
  CHECK(expertise_score(unwilling, one));

  auto conflicted = make_reviewer("c", uniform_expertise(2, KnowledgeLevel::kX), {}, {1});
  CHECK_FALSE(expertise_score(conflicted, one));

  // R only demotes.
  auto reluctant = make_reviewer("r", uniform_expertise(2, KnowledgeLevel::kY),
                                 {{1, Willingness::kR}});
  CHECK(expertise_score(reluctant, one)->value() == 2.0);
  CHECK(has_reluctance(reluctant, one));

  // Unrated topics count as Z.
  auto sparse = make_reviewer("s", {{1, KnowledgeLevel::kX}});
  CHECK(expertise_score(sparse, two)->value() == 2.0);

  CHECK_THROWS_AS(expertise_score(expert, make_paper(3, {})), Error);
}

TEST_CASE("expertise scores compare exactly") {
  CHECK(ExpertiseScore(5, 2) == ExpertiseScore(10, 4));
  CHECK(ExpertiseScore(7, 3) > ExpertiseScore(9, 4));
  CHECK(ExpertiseScore(2, 1) < ExpertiseScore(5, 2));
}

TEST_CASE("zero papers give an empty assignment") {
  DistributionInput in;
  in.reviewers = {make_reviewer("a", {})};
  Assignment a = propose_distribution(in);
  CHECK(a == Assignment{});
  CHECK(a.warnings.empty());
  CHECK(a.shortfalls.empty());
}

TEST_CASE("high bidders are taken by load, then id") {
  DistributionInput in;
  in.config.reviewers_per_paper = 4;
  in.config.max_preference_papers = 10;
  for (int i = 1; i <= 9; ++i) {
    in.reviewers.push_back(make_reviewer("r" + std::to_string(i), uniform_expertise(1, KnowledgeLevel::kY)));
  }
  in.papers = {make_paper(1, {1}), make_paper(2, {1}), make_paper(3, {1})};
  std::uint64_t seq = 1;
  for (auto r : {"r5", "r6", "r7", "r8"}) in.bids.push_back(high(r, 1, seq++));
  for (auto r : {"r6", "r7", "r8", "r9"}) in.bids.push_back(high(r, 2, seq++));
  // Before paper 3: r1..r4 at load 0, r5 at 1, r6 at 2.
  for (auto r : {"r6", "r5", "r4", "r3", "r2", "r1"}) in.bids.push_back(high(r, 3, seq++));

  Assignment a = propose_distribution(in);
  CHECK(ids_of(a.papers.at(3)) == std::vector<ReviewerId>{"r1", "r2", "r3", "r4"});
  for (const auto& x : a.papers.at(3)) CHECK(x.source == AssignmentSource::kHighBid);
  CHECK(a.shortfalls.empty());
}

TEST_CASE("high, then low, then the best expert") {
  DistributionInput in;
  in.config.reviewers_per_paper = 4;
  in.papers = {make_paper(1, {1, 2})};
  in.reviewers = {
      make_reviewer("r1", uniform_expertise(2, KnowledgeLevel::kZ)),
      make_reviewer("r2", uniform_expertise(2, KnowledgeLevel::kZ)),
      make_reviewer("r3", uniform_expertise(2, KnowledgeLevel::kZ)),
      make_reviewer("r5", uniform_expertise(2, KnowledgeLevel::kX)),
      make_reviewer("r6", {{1, KnowledgeLevel::kX}, {2, KnowledgeLevel::kY}}),
  };
  in.bids = {high("r1", 1, 1), high("r2", 1, 2), low("r3", 1, 3)};
  REQUIRE(expertise_score(in.reviewers[4], in.papers[0])->value() == 2.5);

  Assignment a = propose_distribution(in);
  const auto& list = a.papers.at(1);
  REQUIRE(list.size() == 4);
  CHECK(list[0] == Assignee{"r1", AssignmentSource::kHighBid});
  CHECK(list[1] == Assignee{"r2", AssignmentSource::kHighBid});
  CHECK(list[2] == Assignee{"r3", AssignmentSource::kLowBid});
  CHECK(list[3] == Assignee{"r5", AssignmentSource::kExpertise});
  CHECK(a.reviewers.at("r6").assigned == 0);
}

TEST_CASE("a bid wins over W, but never over a conflict of interest") {
  DistributionInput in;
  in.config.reviewers_per_paper = 2;
  in.papers = {make_paper(1, {1})};
  in.reviewers = {
      make_reviewer("bidder", uniform_expertise(1, KnowledgeLevel::kZ), {{1, Willingness::kW}}),
      make_reviewer("coi", uniform_expertise(1, KnowledgeLevel::kX), {}, {1}),
      make_reviewer("plain", uniform_expertise(1, KnowledgeLevel::kZ)),
  };
  in.bids = {high("bidder", 1, 1), high("coi", 1, 2)};
  Assignment a = propose_distribution(in);
  CHECK(ids_of(a.papers.at(1)) == std::vector<ReviewerId>{"bidder", "plain"});
}

TEST_CASE("R demotes below reviewers of equal score") {
  DistributionInput in;
  in.config.reviewers_per_paper = 1;
  in.papers = {make_paper(1, {1})};
  in.reviewers = {
      make_reviewer("a", uniform_expertise(1, KnowledgeLevel::kY), {{1, Willingness::kR}}),
      make_reviewer("b", uniform_expertise(1, KnowledgeLevel::kY)),
  };
  CHECK(ids_of(propose_distribution(in).papers.at(1)) == std::vector<ReviewerId>{"b"});
  // A higher score still beats reluctance.
  in.reviewers[0].expertise[1] = KnowledgeLevel::kX;
  CHECK(ids_of(propose_distribution(in).papers.at(1)) == std::vector<ReviewerId>{"a"});
}

TEST_CASE("the latest bid decides the phase") {
  DistributionInput in;
  in.config.reviewers_per_paper = 1;
  in.papers = {make_paper(1, {1})};
  in.reviewers = {make_reviewer("a", {}), make_reviewer("b", {})};
  in.bids = {high("a", 1, 1), low("a", 1, 5), low("b", 1, 2), high("b", 1, 3)};
  Assignment a = propose_distribution(in);
  CHECK(a.papers.at(1) == std::vector<Assignee>{{"b", AssignmentSource::kHighBid}});
}

TEST_CASE("preference cap keeps experts in the pool") {
  DistributionInput in;
  in.config.reviewers_per_paper = 1;
  in.config.max_preference_papers = 1;
  in.config.hard_cap_slack = 5;
  in.papers = {make_paper(1, {1}), make_paper(2, {1})};
  in.reviewers = {make_reviewer("a", uniform_expertise(1, KnowledgeLevel::kZ)),
                  make_reviewer("b", uniform_expertise(1, KnowledgeLevel::kX))};
  in.bids = {high("a", 1, 1), high("a", 2, 2)};
  Assignment a = propose_distribution(in);
  CHECK(a.papers.at(1) == std::vector<Assignee>{{"a", AssignmentSource::kHighBid}});
  CHECK(a.papers.at(2) == std::vector<Assignee>{{"b", AssignmentSource::kExpertise}});
  CHECK(a.reviewers.at("a") == ReviewerTally{1, 1});
}

TEST_CASE("shortfall raises the pool-of-experts warning") {
  DistributionInput in;
  in.config.reviewers_per_paper = 2;
  in.papers = {make_paper(4, {1}), make_paper(2, {1})};
  in.reviewers = {make_reviewer("a", {}, {{1, Willingness::kW}}), make_reviewer("b", {})};
  Assignment a = propose_distribution(in);
  CHECK(a.shortfalls == std::vector<Shortfall>{{2, 1}, {4, 1}});
  CHECK(a.warnings == std::vector<std::string>{std::string(kPoolOfExpertsWarning)});
  CHECK(a.load_cap == 3);
}

TEST_CASE("precondition failures") {
  DistributionInput in;
  in.papers = {make_paper(1, {1})};
  in.reviewers = {make_reviewer("a", {})};
  in.config.reviewers_per_paper = 2;
  CHECK_THROWS_AS(propose_distribution(in), Error);
  in.config.reviewers_per_paper = 1;
  in.bids = {high("ghost", 1, 1)};
  CHECK_THROWS_AS(propose_distribution(in), Error);
  in.bids.clear();
  in.reviewers.push_back(make_reviewer("a", {}));
  CHECK_THROWS_AS(propose_distribution(in), Error);
}

TEST_CASE("load cap formula") {
  Config c;
  c.reviewers_per_paper = 4;
  c.hard_cap_slack = 1;
  CHECK(load_cap(10, 6, c) == 8);   // ceil(40/6) = 7
  CHECK(load_cap(3, 12, c) == 2);
  CHECK(load_cap(0, 5, c) == 1);
}

TEST_CASE("properties on random instances") {
  std::mt19937 rng(20260101);
  for (int trial = 0; trial < 300; ++trial) {
    DistributionInput in = random_instance(rng);
    Assignment a = propose_distribution(in);
    CAPTURE(json(in.papers).dump());

    // Determinism.
    CHECK(json(propose_distribution(in)).dump() == json(a).dump());

    std::map<ReviewerId, const ReviewerProfile*> by_id;
    for (const auto& r : in.reviewers) by_id[r.id] = &r;
    std::set<std::pair<ReviewerId, PaperId>> bid_pairs;
    for (const auto& b : in.bids) bid_pairs.insert({b.reviewer, b.paper});

    std::map<ReviewerId, int> load, expertise_picks;
    for (const auto& p : in.papers) {
      const auto& list = a.papers.at(p.id);
      std::set<ReviewerId> seen;
      for (const auto& x : list) {
        CHECK(seen.insert(x.reviewer).second);
        const ReviewerProfile& r = *by_id.at(x.reviewer);
        CHECK_FALSE(r.has_conflict(p.id));
        if (!expertise_score(r, p)) CHECK(bid_pairs.contains({r.id, p.id}));
        ++load[r.id];
        if (x.source == AssignmentSource::kExpertise) ++expertise_picks[r.id];
      }
      int missing = in.config.reviewers_per_paper - static_cast<int>(list.size());
      bool listed = std::any_of(a.shortfalls.begin(), a.shortfalls.end(),
                                [&](const Shortfall& s) { return s.paper == p.id; });
      CHECK(listed == (missing > 0));
    }
    for (const auto& [id, tally] : a.reviewers) {
      CHECK(tally.assigned == load[id]);
      // Expertise picks only happen below the cap.
      CHECK(expertise_picks[id] <= a.load_cap);
      if (load[id] > a.load_cap) CHECK(load[id] > expertise_picks[id]);
    }
  }
}

TEST_CASE("matches the step-by-step oracle") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    DistributionInput in = random_instance(rng);
    CHECK(json(propose_distribution(in)).dump() == json(oracle::distribute(to_instance(in))).dump());
  }
}

// Raising max_preference_papers does not always preserve every reviewer's
// satisfied-bid count: a reviewer freed from the cap can take a paper that
// another bidder would otherwise have received.
TEST_CASE("raising the preference cap can lower a satisfied-bid count") {
  DistributionInput in;
  in.config.reviewers_per_paper = 1;
  in.config.hard_cap_slack = 0;
  in.papers = {make_paper(1, {1}), make_paper(2, {1}), make_paper(3, {1})};
  in.reviewers = {make_reviewer("r", uniform_expertise(1, KnowledgeLevel::kZ)),
                  make_reviewer("s", uniform_expertise(1, KnowledgeLevel::kX))};
  in.bids = {high("r", 1, 1), high("r", 3, 2), high("s", 3, 3)};

  in.config.max_preference_papers = 1;
  Assignment tight = propose_distribution(in);
  in.config.max_preference_papers = 2;
  Assignment loose = propose_distribution(in);

  CHECK(ids_of(tight.papers.at(3)) == std::vector<ReviewerId>{"s"});
  CHECK(ids_of(loose.papers.at(3)) == std::vector<ReviewerId>{"r"});
  CHECK(tight.reviewers.at("s").bids_satisfied == 1);
  CHECK(loose.reviewers.at("s").bids_satisfied == 0);
  // The total does not drop here.
  CHECK(tight.reviewers.at("r").bids_satisfied + 1 == loose.reviewers.at("r").bids_satisfied);
}

TEST_CASE("report percentages") {
  Assignment a;
  std::vector<Bid> bids;
  for (int p = 1; p <= 10; ++p) {
    bids.push_back(high("ten", p, static_cast<std::uint64_t>(p)));
    if (p <= 8) {
      a.papers[p].push_back({"ten", AssignmentSource::kHighBid});
      ++a.reviewers["ten"].assigned;
    }
  }
  for (int p = 11; p <= 15; ++p) {
    a.papers[p].push_back({"none", AssignmentSource::kExpertise});
    ++a.reviewers["none"].assigned;
  }
  DistributionReport r = distribution_report(a, bids);
  REQUIRE(r.reviewers.size() == 2);
  CHECK(r.reviewers[0].reviewer == "none");
  CHECK_FALSE(r.reviewers[0].satisfaction_percent);
  CHECK(r.reviewers[0].assigned == 5);
  CHECK(*r.reviewers[1].satisfaction_percent == doctest::Approx(80.0));
  std::string text = as_text(r);
  CHECK(text.find("80%") != std::string::npos);
  CHECK(text.find("n/a") != std::string::npos);
  CHECK(as_json(r)["reviewers"][0]["satisfaction_percent"] == "n/a");
  CHECK(r.total_assignments == 13);
}

TEST_CASE("report of an empty assignment") {
  DistributionReport r = distribution_report(Assignment{}, {});
  CHECK(r.total_papers == 0);
  CHECK(r.total_assignments == 0);
  CHECK(r.total_bids_placed == 0);
  CHECK(r.total_bids_satisfied == 0);
  CHECK(as_text(r).find("Totals: 0 papers, 0 assignments, 0 bids, 0 satisfied (n/a)") !=
        std::string::npos);
}

}  // TEST_SUITE
