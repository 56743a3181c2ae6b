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

#include "confreview/store.hpp"

#include <charconv>

namespace confreview {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kAuthorContact: return "author-contact";
    case Role::kReviewer: return "reviewer";
    case Role::kChair: return "chair";
    case Role::kMaintainer: return "maintainer";
  }
  return "?";
}

std::optional<Role> role_from_string(std::string_view s) {
  if (s == "author-contact") return Role::kAuthorContact;
  if (s == "reviewer") return Role::kReviewer;
  if (s == "chair") return Role::kChair;
  if (s == "maintainer") return Role::kMaintainer;
  return std::nullopt;
}

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::kCredentials: return "credentials";
    case MessageKind::kConflictDiscussion: return "conflict-discussion";
    case MessageKind::kNotification: return "notification";
  }
  return "?";
}

std::optional<MessageKind> message_kind_from_string(std::string_view s) {
  if (s == "credentials") return MessageKind::kCredentials;
  if (s == "conflict-discussion") return MessageKind::kConflictDiscussion;
  if (s == "notification") return MessageKind::kNotification;
  return std::nullopt;
}

std::optional<PaperId> Credentials::paper() const {
  if (role != Role::kAuthorContact) return std::nullopt;
  PaperId id = 0;
  auto [ptr, ec] = std::from_chars(subject.data(), subject.data() + subject.size(), id);
  if (ec != std::errc() || ptr != subject.data() + subject.size()) return std::nullopt;
  return id;
}

const PaperRecord* StoreData::find_paper(PaperId id) const {
  auto it = papers.find(id);
  return it == papers.end() ? nullptr : &it->second;
}

const ReviewerProfile* StoreData::find_reviewer(const ReviewerId& id) const {
  auto it = reviewers.find(id);
  return it == reviewers.end() ? nullptr : &it->second;
}

const Review* StoreData::find_review(PaperId paper, const ReviewerId& reviewer) const {
  auto it = reviews.find({paper, reviewer});
  return it == reviews.end() ? nullptr : &it->second;
}

std::vector<Review> StoreData::reviews_of(PaperId paper) const {
  std::vector<Review> out;
  for (auto it = reviews.lower_bound({paper, ReviewerId{}});
       it != reviews.end() && it->first.first == paper; ++it) {
    out.push_back(it->second);
  }
  return out;
}

std::vector<Bid> StoreData::effective_bids() const { return confreview::effective_bids(bids); }

std::vector<PaperRecord> StoreData::paper_list() const {
  std::vector<PaperRecord> out;
  out.reserve(papers.size());
  for (const auto& [id, p] : papers) out.push_back(p);
  return out;
}

std::vector<ReviewerProfile> StoreData::reviewer_list() const {
  std::vector<ReviewerProfile> out;
  out.reserve(reviewers.size());
  for (const auto& [id, r] : reviewers) out.push_back(r);
  return out;
}

}  // namespace confreview
