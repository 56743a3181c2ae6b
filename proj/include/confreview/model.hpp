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

// Domain types shared by every part of the review system: submissions,
// reviewer profiles, bids, reviews, assignments and the conference
// configuration. All types are plain values.

#ifndef CONFREVIEW_MODEL_HPP_
#define CONFREVIEW_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confreview {

using PaperId = int;
using TopicId = int;
using ReviewerId = std::string;
// UTC seconds since the epoch.
using Timestamp = std::int64_t;

// Topic knowledge. Declaration order is best-first: X > Y > Z.
enum class KnowledgeLevel { kX, kY, kZ };

// Reluctance to review a topic. W (will not) is stronger than R (rather not).
enum class Willingness { kR, kW };

enum class BidPriority { kHigh, kLow };

// Declaration order is best-first: A > B > C > D.
enum class Classification { kA, kB, kC, kD };

enum class PaperStatus {
  kMetadataOnly,
  kFullPaperUploaded,
  kAccepted,
  kRejected,
  kCameraReadyReceived,
};

enum class ReviewState {
  kWhite,
  kPink,
  kLightGreen,
  kOrange,
  kGreen,
  kLightYellow,
  kYellow,
  kRed,
  kGold,
  kGrey,
};

// Numeric weight of a knowledge level: X=3, Y=2, Z=1.
int knowledge_weight(KnowledgeLevel level);
// Merit of a classification: A=4 ... D=1.
int merit(Classification c);
// True when `a` ranks strictly above `b`.
bool better_than(Classification a, Classification b);
bool better_than(KnowledgeLevel a, KnowledgeLevel b);
bool stronger_than(Willingness a, Willingness b);

char to_char(KnowledgeLevel level);
char to_char(Willingness w);
char to_char(Classification c);
std::optional<KnowledgeLevel> knowledge_from_char(char c);
std::optional<Willingness> willingness_from_char(char c);
std::optional<Classification> classification_from_char(char c);

std::string_view to_string(BidPriority p);
std::string_view to_string(PaperStatus s);
// Lowercase wire names: white, pink, lightgreen, ..., grey.
std::string_view to_string(ReviewState s);
std::optional<BidPriority> bid_priority_from_string(std::string_view s);
std::optional<PaperStatus> paper_status_from_string(std::string_view s);
std::optional<ReviewState> review_state_from_string(std::string_view s);

struct Topic {
  TopicId id = 0;
  std::string name;

  bool operator==(const Topic&) const = default;
};

struct ContactInfo {
  std::string first_name;
  std::string last_name;
  std::string email;
  std::string phone;
  std::string fax;
  std::string address;

  bool operator==(const ContactInfo&) const = default;
};

struct Author {
  std::string first_name;
  std::string last_name;
  std::string affiliation;

  bool operator==(const Author&) const = default;
};

// What an author fills in during phase 1 and may later correct.
struct PaperMetadata {
  std::string title;
  std::string abstract;
  ContactInfo contact;
  std::vector<Author> authors;
  std::set<TopicId> topics;
  std::string remarks;

  bool operator==(const PaperMetadata&) const = default;
};

struct PaperRecord : PaperMetadata {
  PaperId id = 0;
  PaperStatus status = PaperStatus::kMetadataOnly;
  std::optional<std::string> paper_file;
  std::optional<std::string> camera_ready_file;
  std::optional<int> page_count;

  bool operator==(const PaperRecord&) const = default;

  bool decided() const;
  bool accepted() const;
};

struct ReviewerProfile {
  ReviewerId id;
  std::string name;
  std::string email;
  std::map<TopicId, KnowledgeLevel> expertise;
  std::map<TopicId, Willingness> willingness;
  std::set<PaperId> coi_papers;

  bool operator==(const ReviewerProfile&) const = default;

  bool has_conflict(PaperId paper) const { return coi_papers.contains(paper); }
};

struct Bid {
  ReviewerId reviewer;
  PaperId paper = 0;
  BidPriority priority = BidPriority::kHigh;
  std::uint64_t sequence = 0;

  bool operator==(const Bid&) const = default;
};

struct Review {
  PaperId paper = 0;
  ReviewerId reviewer;
  Classification classification = Classification::kC;
  KnowledgeLevel overall_expertise = KnowledgeLevel::kZ;
  std::string comments_for_authors;
  std::string comments_for_pc;
  Timestamp submitted_at = 0;
  Timestamp updated_at = 0;

  bool operator==(const Review&) const = default;
};

// How a reviewer came to be on a paper's list.
enum class AssignmentSource { kHighBid, kLowBid, kExpertise, kVolunteer, kManual };
std::string_view to_string(AssignmentSource s);
std::optional<AssignmentSource> assignment_source_from_string(std::string_view s);

struct Assignee {
  ReviewerId reviewer;
  AssignmentSource source = AssignmentSource::kExpertise;

  bool operator==(const Assignee&) const = default;
};

struct ReviewerTally {
  int assigned = 0;
  int bids_satisfied = 0;

  bool operator==(const ReviewerTally&) const = default;
};

struct Shortfall {
  PaperId paper = 0;
  int missing = 0;

  bool operator==(const Shortfall&) const = default;
};

struct Assignment {
  std::map<PaperId, std::vector<Assignee>> papers;
  std::map<ReviewerId, ReviewerTally> reviewers;
  std::vector<Shortfall> shortfalls;
  std::vector<std::string> warnings;
  int load_cap = 0;

  bool operator==(const Assignment&) const = default;

  std::vector<ReviewerId> reviewers_of(PaperId paper) const;
  bool is_assigned(PaperId paper, const ReviewerId& reviewer) const;
  std::vector<PaperId> papers_of(const ReviewerId& reviewer) const;
};

struct Config {
  std::string conference_name = "Conference";
  std::string chair_email;
  int reviewers_per_paper = 4;
  // Cap on bid-based assignments per reviewer; keeps a pool of experts free
  // for papers that attracted few bids.
  int max_preference_papers = 8;
  int hard_cap_slack = 1;
  int poll_interval_seconds = 300;
  std::optional<Timestamp> phase1_deadline;
  std::optional<Timestamp> full_paper_deadline;
  // Shifts proceedings page numbers (front matter).
  int page_offset = 0;

  bool operator==(const Config&) const = default;
};

// Returns the list of invariant violations; empty means valid.
std::vector<std::string> validate_config(const Config& config);

// Checks the invariants of a submission against the conference topics.
// An empty result means the record is valid.
std::vector<std::string> validate_paper(const PaperRecord& record,
                                        std::span<const Topic> topics);
std::vector<std::string> validate_topics(std::span<const Topic> topics);

// Forward-only lifecycle:
// metadata-only -> full-paper-uploaded -> {accepted | rejected};
// accepted -> camera-ready-received.
bool can_transition(PaperStatus from, PaperStatus to);
bool is_terminal(PaperStatus s);

// Keeps, per (reviewer, paper), only the bid with the highest sequence.
// Output is ordered by (reviewer, paper). Idempotent.
std::vector<Bid> effective_bids(std::span<const Bid> bids);

// Parses a per-topic code such as "X", "YR" or "ZW".
struct TopicCode {
  KnowledgeLevel level;
  std::optional<Willingness> willingness;
};
std::optional<TopicCode> parse_topic_code(std::string_view code);
std::string format_topic_code(const TopicCode& code);

}  // namespace confreview

#endif  // CONFREVIEW_MODEL_HPP_
