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

// The review process, end to end: two-phase submission, bidding, conflict of
// interest declarations, distribution, reviews with their visibility gate,
// conflict discussion, decisions, notifications and camera-ready upload.
//
// Every mutating operation runs inside one registry commit, so its checks and
// its effects see the same version of the store.

#ifndef CONFREVIEW_WORKFLOW_HPP_
#define CONFREVIEW_WORKFLOW_HPP_

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confreview/assignment.hpp"
#include "confreview/model.hpp"
#include "confreview/registry.hpp"
#include "confreview/store.hpp"

namespace confreview {

using Clock = std::function<Timestamp()>;
Timestamp system_now();

struct Phase1Result {
  PaperId id = 0;
  IssuedCredentials credentials;
  std::vector<std::string> warnings;
};

struct BidSelection {
  PaperId paper = 0;
  BidPriority priority = BidPriority::kHigh;
};

struct RejectedBid {
  PaperId paper = 0;
  std::string reason;
};

struct BidResult {
  std::vector<Bid> effective;  // the reviewer's effective bids after the call
  std::vector<RejectedBid> rejected;
};

struct ReviewInput {
  Classification classification = Classification::kC;
  KnowledgeLevel overall_expertise = KnowledgeLevel::kZ;
  std::string comments_for_authors;
  std::string comments_for_pc;
};

struct DashboardEntry {
  PaperId paper = 0;
  std::string title;
  ReviewState state = ReviewState::kWhite;
  bool own_review_submitted = false;
  std::optional<Timestamp> own_review_updated_at;
  std::vector<std::pair<std::string, std::string>> links;  // (label, path)
};

// The reviewer's page: paper numbers with their state, plus the links that
// become available per paper.
struct Dashboard {
  ReviewerId reviewer;
  int poll_interval_seconds = 300;
  std::vector<DashboardEntry> papers;
};

class Workflow {
 public:
  explicit Workflow(Registry& registry, Clock clock = system_now);

  Registry& registry() { return registry_; }
  const Registry& registry() const { return registry_; }
  Timestamp now() const { return clock_(); }

  // Identity used by local administrative tools that own the store directory.
  static Credentials local_maintainer();

  // Administration.
  void configure(const Credentials& creds, const Config& config,
                 std::optional<std::vector<Topic>> topics = std::nullopt);
  IssuedCredentials create_account(const Credentials& creds, const std::string& login,
                                   Role role);
  // Adds new reviewers (issuing credentials and mailing them) and updates the
  // profiles of known ones. Returns the credentials issued.
  std::vector<IssuedCredentials> import_reviewers(const Credentials& creds,
                                                  std::span<const ReviewerProfile> profiles);
  ReviewerProfile update_expertise(const Credentials& creds,
                                   const std::optional<ReviewerId>& reviewer,
                                   const std::map<TopicId, KnowledgeLevel>& expertise,
                                   const std::map<TopicId, Willingness>& willingness);

  // Authors.
  Phase1Result submit_phase1(const PaperMetadata& metadata);
  PaperRecord update_phase1(const Credentials& creds, PaperId paper,
                            const PaperMetadata& metadata);
  PaperRecord upload_paper(const Credentials& creds, PaperId paper, std::string_view bytes,
                           const std::string& filename);
  PaperRecord upload_camera_ready(const Credentials& creds, PaperId paper,
                                  std::string_view bytes, const std::string& filename,
                                  std::optional<int> page_count);
  PaperRecord paper(const Credentials& creds, PaperId paper) const;
  std::string read_paper_file(const Credentials& creds, PaperId paper,
                              bool camera_ready = false) const;

  // Reviewers: bidding and conflicts of interest.
  BidResult submit_bids(const Credentials& creds, std::span<const BidSelection> selections,
                        const std::optional<ReviewerId>& reviewer = std::nullopt);
  ReviewerProfile declare_coi(const Credentials& creds, PaperId paper,
                              const std::optional<ReviewerId>& reviewer = std::nullopt);

  // Distribution.
  DistributionInput distribution_input(const StoreData& data) const;
  Assignment propose_distribution(const Credentials& creds) const;
  void commit_distribution(const Credentials& creds, const Assignment& assignment);

  // Reviews.
  Review submit_review(const Credentials& creds, PaperId paper, const ReviewInput& input,
                       const std::optional<ReviewerId>& reviewer = std::nullopt);
  std::vector<Review> visible_reviews(const Credentials& creds, PaperId paper) const;
  OutboxMessage send_conflict_message(const Credentials& creds, PaperId paper,
                                      const std::string& text);
  Assignment volunteer_for_paper(const Credentials& creds, PaperId paper);
  Dashboard dashboard(const Credentials& creds, const ReviewerId& reviewer) const;

  // Decisions and notifications.
  DecisionRecord record_decisions(const Credentials& creds, const std::set<PaperId>& accepted);
  std::vector<OutboxMessage> generate_notifications(const Credentials& creds);

 private:
  Registry& registry_;
  Clock clock_;
};

// RFC 5322 style rendering of an outbox message.
std::string render_eml(const OutboxMessage& message, const std::string& from);

}  // namespace confreview

#endif  // CONFREVIEW_WORKFLOW_HPP_
