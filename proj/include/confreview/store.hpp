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

#ifndef CONFREVIEW_STORE_HPP_
#define CONFREVIEW_STORE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "confreview/model.hpp"

namespace confreview {

enum class Role { kAuthorContact, kReviewer, kChair, kMaintainer };
std::string_view to_string(Role r);
std::optional<Role> role_from_string(std::string_view s);

// An authenticated identity. `subject` is the paper id (as text) for author
// contacts and the reviewer handle for reviewers; empty otherwise.
struct Credentials {
  std::string login;
  Role role = Role::kReviewer;
  std::string subject;

  bool operator==(const Credentials&) const = default;

  std::optional<PaperId> paper() const;
  bool is_reviewer(const ReviewerId& id) const {
    return role == Role::kReviewer && subject == id;
  }
};

// A freshly issued login. The password is only ever visible here.
struct IssuedCredentials {
  std::string login;
  std::string password;
};

struct CredentialRecord {
  std::string login;
  std::string password_hash;  // pbkdf2-sha256$<iterations>$<salt hex>$<hash hex>
  Role role = Role::kReviewer;
  std::string subject;

  bool operator==(const CredentialRecord&) const = default;
};

enum class MessageKind { kCredentials, kConflictDiscussion, kNotification };
std::string_view to_string(MessageKind k);
std::optional<MessageKind> message_kind_from_string(std::string_view s);

struct OutboxMessage {
  std::uint64_t id = 0;
  MessageKind kind = MessageKind::kNotification;
  PaperId paper = 0;  // 0 for messages not tied to a paper
  std::vector<std::string> to;
  std::vector<std::string> cc;
  std::string subject;
  std::string body;
  Timestamp created_at = 0;
  std::string file_name;  // name of the .eml file in the outbox directory

  bool operator==(const OutboxMessage&) const = default;
};

struct DiscussionEntry {
  std::uint64_t id = 0;
  PaperId paper = 0;
  ReviewerId sender;
  std::string text;
  Timestamp created_at = 0;

  bool operator==(const DiscussionEntry&) const = default;
};

// Raised when a reviewer declares a conflict on a paper already assigned to
// them. The assignment is left alone until the chair acts.
struct ChairFlag {
  PaperId paper = 0;
  ReviewerId reviewer;
  std::string reason;
  Timestamp raised_at = 0;

  bool operator==(const ChairFlag&) const = default;
};

struct DecisionRecord {
  std::set<PaperId> accepted;
  std::set<PaperId> rejected;
  Timestamp recorded_at = 0;

  bool operator==(const DecisionRecord&) const = default;
};

struct Counters {
  PaperId next_paper_id = 1;
  std::uint64_t next_bid_sequence = 1;
  std::uint64_t next_message_id = 1;

  bool operator==(const Counters&) const = default;
};

// The complete state of one conference. Snapshots are immutable copies.
struct StoreData {
  std::uint64_t version = 0;
  Config config;
  std::vector<Topic> topics;
  std::map<PaperId, PaperRecord> papers;
  std::map<ReviewerId, ReviewerProfile> reviewers;
  std::vector<Bid> bids;  // full bid history, in sequence order
  std::map<std::pair<PaperId, ReviewerId>, Review> reviews;
  std::optional<Assignment> assignment;
  std::map<std::string, CredentialRecord> credentials;
  std::vector<OutboxMessage> outbox;
  std::vector<DiscussionEntry> discussions;
  std::vector<ChairFlag> chair_flags;
  std::optional<DecisionRecord> decisions;
  Counters counters;

  bool operator==(const StoreData&) const = default;

  const PaperRecord* find_paper(PaperId id) const;
  const ReviewerProfile* find_reviewer(const ReviewerId& id) const;
  const Review* find_review(PaperId paper, const ReviewerId& reviewer) const;
  std::vector<Review> reviews_of(PaperId paper) const;
  std::vector<Bid> effective_bids() const;
  std::vector<PaperRecord> paper_list() const;
  std::vector<ReviewerProfile> reviewer_list() const;
};

using Snapshot = std::shared_ptr<const StoreData>;

}  // namespace confreview

#endif  // CONFREVIEW_STORE_HPP_
