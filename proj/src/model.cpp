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

#include "confreview/model.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace confreview {

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view name) {
  for (const auto& [value, text] : table) {
    if (text == name) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return "?";
}

constexpr std::array<std::pair<BidPriority, std::string_view>, 2> kPriorityNames{{
    {BidPriority::kHigh, "high"},
    {BidPriority::kLow, "low"},
}};

constexpr std::array<std::pair<PaperStatus, std::string_view>, 5> kStatusNames{{
    {PaperStatus::kMetadataOnly, "metadata-only"},
    {PaperStatus::kFullPaperUploaded, "full-paper-uploaded"},
    {PaperStatus::kAccepted, "accepted"},
    {PaperStatus::kRejected, "rejected"},
    {PaperStatus::kCameraReadyReceived, "camera-ready-received"},
}};

constexpr std::array<std::pair<ReviewState, std::string_view>, 10> kStateNames{{
    {ReviewState::kWhite, "white"},
    {ReviewState::kPink, "pink"},
    {ReviewState::kLightGreen, "lightgreen"},
    {ReviewState::kOrange, "orange"},
    {ReviewState::kGreen, "green"},
    {ReviewState::kLightYellow, "lightyellow"},
    {ReviewState::kYellow, "yellow"},
    {ReviewState::kRed, "red"},
    {ReviewState::kGold, "gold"},
    {ReviewState::kGrey, "grey"},
}};

constexpr std::array<std::pair<AssignmentSource, std::string_view>, 5> kSourceNames{{
    {AssignmentSource::kHighBid, "high"},
    {AssignmentSource::kLowBid, "low"},
    {AssignmentSource::kExpertise, "expertise"},
    {AssignmentSource::kVolunteer, "volunteer"},
    {AssignmentSource::kManual, "manual"},
}};

}  // namespace

int knowledge_weight(KnowledgeLevel level) {
  switch (level) {
    case KnowledgeLevel::kX: return 3;
    case KnowledgeLevel::kY: return 2;
    case KnowledgeLevel::kZ: return 1;
  }
  return 0;
}

int merit(Classification c) { return 4 - static_cast<int>(c); }

bool better_than(Classification a, Classification b) { return merit(a) > merit(b); }

bool better_than(KnowledgeLevel a, KnowledgeLevel b) {
  return knowledge_weight(a) > knowledge_weight(b);
}

bool stronger_than(Willingness a, Willingness b) {
  return a == Willingness::kW && b == Willingness::kR;
}

char to_char(KnowledgeLevel level) { return "XYZ"[static_cast<int>(level)]; }
char to_char(Willingness w) { return "RW"[static_cast<int>(w)]; }
char to_char(Classification c) { return "ABCD"[static_cast<int>(c)]; }

std::optional<KnowledgeLevel> knowledge_from_char(char c) {
  switch (c) {
    case 'X': return KnowledgeLevel::kX;
    case 'Y': return KnowledgeLevel::kY;
    case 'Z': return KnowledgeLevel::kZ;
    default: return std::nullopt;
  }
}

std::optional<Willingness> willingness_from_char(char c) {
  switch (c) {
    case 'R': return Willingness::kR;
    case 'W': return Willingness::kW;
    default: return std::nullopt;
  }
}

std::optional<Classification> classification_from_char(char c) {
  switch (c) {
    case 'A': return Classification::kA;
    case 'B': return Classification::kB;
    case 'C': return Classification::kC;
    case 'D': return Classification::kD;
    default: return std::nullopt;
  }
}

std::string_view to_string(BidPriority p) { return name_of(kPriorityNames, p); }
std::string_view to_string(PaperStatus s) { return name_of(kStatusNames, s); }
std::string_view to_string(ReviewState s) { return name_of(kStateNames, s); }
std::string_view to_string(AssignmentSource s) { return name_of(kSourceNames, s); }

std::optional<BidPriority> bid_priority_from_string(std::string_view s) {
  return lookup(kPriorityNames, s);
}
std::optional<PaperStatus> paper_status_from_string(std::string_view s) {
  return lookup(kStatusNames, s);
}
std::optional<ReviewState> review_state_from_string(std::string_view s) {
  return lookup(kStateNames, s);
}
std::optional<AssignmentSource> assignment_source_from_string(std::string_view s) {
  return lookup(kSourceNames, s);
}

bool PaperRecord::decided() const {
  return status == PaperStatus::kAccepted || status == PaperStatus::kRejected ||
         status == PaperStatus::kCameraReadyReceived;
}

bool PaperRecord::accepted() const {
  return status == PaperStatus::kAccepted ||
         status == PaperStatus::kCameraReadyReceived;
}

std::vector<ReviewerId> Assignment::reviewers_of(PaperId paper) const {
  std::vector<ReviewerId> out;
  if (auto it = papers.find(paper); it != papers.end()) {
    for (const auto& a : it->second) out.push_back(a.reviewer);
  }
  return out;
}

bool Assignment::is_assigned(PaperId paper, const ReviewerId& reviewer) const {
  auto it = papers.find(paper);
  if (it == papers.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Assignee& a) { return a.reviewer == reviewer; });
}

std::vector<PaperId> Assignment::papers_of(const ReviewerId& reviewer) const {
  std::vector<PaperId> out;
  for (const auto& [paper, list] : papers) {
    for (const auto& a : list) {
      if (a.reviewer == reviewer) {
        out.push_back(paper);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> validate_config(const Config& config) {
  std::vector<std::string> report;
  if (config.reviewers_per_paper < 1) report.emplace_back("reviewers_per_paper must be >= 1");
  if (config.max_preference_papers < 1) report.emplace_back("max_preference_papers must be >= 1");
  if (config.hard_cap_slack < 0) report.emplace_back("hard_cap_slack must be >= 0");
  if (config.poll_interval_seconds < 1) report.emplace_back("poll_interval_seconds must be >= 1");
  if (config.page_offset < 0) report.emplace_back("page_offset must be >= 0");
  return report;
}

std::vector<std::string> validate_topics(std::span<const Topic> topics) {
  std::vector<std::string> report;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (topics[i].id != static_cast<TopicId>(i + 1)) {
      report.push_back("topic ids must be contiguous from 1 (found " +
                       std::to_string(topics[i].id) + " at position " +
                       std::to_string(i + 1) + ")");
    }
    if (topics[i].name.empty()) {
      report.push_back("topic " + std::to_string(topics[i].id) + " has an empty name");
    }
  }
  return report;
}

std::vector<std::string> validate_paper(const PaperRecord& record,
                                        std::span<const Topic> topics) {
  std::vector<std::string> report;
  if (record.id < 0) report.emplace_back("id must be positive");
  if (record.topics.empty()) report.emplace_back("topics empty");
  for (TopicId t : record.topics) {
    bool known = std::any_of(topics.begin(), topics.end(),
                             [t](const Topic& topic) { return topic.id == t; });
    if (!known) report.push_back("unknown topic " + std::to_string(t));
  }
  if (record.authors.empty()) report.emplace_back("no authors");
  if (record.page_count && *record.page_count < 1) {
    report.emplace_back("page_count must be positive");
  }
  if (record.status == PaperStatus::kCameraReadyReceived && !record.page_count) {
    report.emplace_back("camera-ready paper without page_count");
  }
  return report;
}

bool can_transition(PaperStatus from, PaperStatus to) {
  switch (from) {
    case PaperStatus::kMetadataOnly:
      return to == PaperStatus::kFullPaperUploaded;
    case PaperStatus::kFullPaperUploaded:
      return to == PaperStatus::kAccepted || to == PaperStatus::kRejected;
    case PaperStatus::kAccepted:
      return to == PaperStatus::kCameraReadyReceived;
    case PaperStatus::kRejected:
    case PaperStatus::kCameraReadyReceived:
      return false;
  }
  return false;
}

bool is_terminal(PaperStatus s) {
  return s == PaperStatus::kRejected || s == PaperStatus::kCameraReadyReceived;
}

std::vector<Bid> effective_bids(std::span<const Bid> bids) {
  std::map<std::pair<ReviewerId, PaperId>, Bid> latest;
  for (const Bid& bid : bids) {
    auto key = std::make_pair(bid.reviewer, bid.paper);
    auto it = latest.find(key);
    if (it == latest.end() || it->second.sequence < bid.sequence) {
      latest.insert_or_assign(key, bid);
    }
  }
  std::vector<Bid> out;
  out.reserve(latest.size());
  for (auto& [key, bid] : latest) out.push_back(std::move(bid));
  return out;
}

std::optional<TopicCode> parse_topic_code(std::string_view code) {
  if (code.empty() || code.size() > 2) return std::nullopt;
  auto level = knowledge_from_char(code[0]);
  if (!level) return std::nullopt;
  TopicCode out{*level, std::nullopt};
  if (code.size() == 2) {
    auto w = willingness_from_char(code[1]);
    if (!w) return std::nullopt;
    out.willingness = *w;
  }
  return out;
}

std::string format_topic_code(const TopicCode& code) {
  std::string out(1, to_char(code.level));
  if (code.willingness) out.push_back(to_char(*code.willingness));
  return out;
}

}  // namespace confreview
