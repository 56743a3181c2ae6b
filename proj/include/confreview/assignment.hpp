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

// Paper distribution: a bid-driven greedy assignment of reviewers to papers
// with an expertise-based fallback and load balancing.
//
// Papers are processed in ascending id. Each paper is filled in up to three
// phases until `reviewers_per_paper` reviewers hold it:
//
//   1. reviewers with a high bid on the paper, least loaded first;
//   2. reviewers with a low bid on the paper, least loaded first;
//   3. every remaining reviewer that is allowed to review the paper, best
//      expertise first, then those without an R on any of the paper's
//      topics, then least loaded.
//
// Bid phases ignore topic willingness (a bid beats a W) and the load cap, but
// skip reviewers that already hold `max_preference_papers` bid-based papers;
// those reviewers stay available to phase 3, which keeps a pool of experts
// free for papers that drew few bids. Conflicts of interest exclude a
// reviewer in every phase.

#ifndef CONFREVIEW_ASSIGNMENT_HPP_
#define CONFREVIEW_ASSIGNMENT_HPP_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "confreview/model.hpp"

namespace confreview {

// Mean topic weight (X=3, Y=2, Z=1) as an exact fraction.
class ExpertiseScore {
 public:
  ExpertiseScore(int weight_sum, int topic_count);

  int weight_sum() const { return weight_sum_; }
  int topic_count() const { return topic_count_; }
  double value() const { return static_cast<double>(weight_sum_) / topic_count_; }

  std::strong_ordering operator<=>(const ExpertiseScore& other) const;
  bool operator==(const ExpertiseScore& other) const;

 private:
  int weight_sum_;
  int topic_count_;
};

// nullopt means the reviewer is excluded from expertise-based assignment of
// this paper (conflict of interest or a W on one of its topics).
std::optional<ExpertiseScore> expertise_score(const ReviewerProfile& reviewer,
                                              const PaperRecord& paper);

// True when the reviewer marked R on at least one of the paper's topics.
bool has_reluctance(const ReviewerProfile& reviewer, const PaperRecord& paper);

struct DistributionInput {
  std::vector<PaperRecord> papers;
  std::vector<ReviewerProfile> reviewers;
  std::vector<Bid> bids;  // resolved again to the latest bid per pair
  Config config;
};

inline constexpr std::string_view kPoolOfExpertsWarning =
    "pool of experts is not full enough";

// ceil(papers * need / reviewers) + slack; 0 when there are no reviewers.
int load_cap(std::size_t paper_count, std::size_t reviewer_count, const Config& config);

Assignment propose_distribution(const DistributionInput& input);

struct ReviewerReportRow {
  ReviewerId reviewer;
  int assigned = 0;
  int bids_placed = 0;
  int bids_satisfied = 0;
  std::optional<double> satisfaction_percent;  // nullopt when no bids
};

struct DistributionReport {
  std::vector<ReviewerReportRow> reviewers;
  std::vector<Shortfall> papers_short;
  int total_papers = 0;
  int total_assignments = 0;
  int total_bids_placed = 0;
  int total_bids_satisfied = 0;
  std::optional<double> total_satisfaction_percent;
  std::vector<std::string> warnings;
  // paper id -> assigned reviewers with their source, in assignment order
  std::map<PaperId, std::vector<Assignee>> papers;
};

DistributionReport distribution_report(const Assignment& assignment,
                                       std::span<const Bid> bids);
std::string as_text(const DistributionReport& report);
nlohmann::json as_json(const DistributionReport& report);

}  // namespace confreview

#endif  // CONFREVIEW_ASSIGNMENT_HPP_
