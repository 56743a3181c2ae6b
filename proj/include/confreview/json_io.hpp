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

// JSON forms of the domain records. These are the on-disk record schemas
// and the API payloads; docs/schemas.md describes each one.

#ifndef CONFREVIEW_JSON_IO_HPP_
#define CONFREVIEW_JSON_IO_HPP_

#include "json.hpp"

#include "confreview/model.hpp"
#include "confreview/store.hpp"

namespace confreview {

using nlohmann::json;

void to_json(json& j, KnowledgeLevel v);
void from_json(const json& j, KnowledgeLevel& v);
void to_json(json& j, Willingness v);
void from_json(const json& j, Willingness& v);
void to_json(json& j, Classification v);
void from_json(const json& j, Classification& v);
void to_json(json& j, BidPriority v);
void from_json(const json& j, BidPriority& v);
void to_json(json& j, PaperStatus v);
void from_json(const json& j, PaperStatus& v);
void to_json(json& j, ReviewState v);
void from_json(const json& j, ReviewState& v);
void to_json(json& j, AssignmentSource v);
void from_json(const json& j, AssignmentSource& v);
void to_json(json& j, Role v);
void from_json(const json& j, Role& v);
void to_json(json& j, MessageKind v);
void from_json(const json& j, MessageKind& v);

void to_json(json& j, const Topic& v);
void from_json(const json& j, Topic& v);
void to_json(json& j, const ContactInfo& v);
void from_json(const json& j, ContactInfo& v);
void to_json(json& j, const Author& v);
void from_json(const json& j, Author& v);
void to_json(json& j, const PaperMetadata& v);
void from_json(const json& j, PaperMetadata& v);
void to_json(json& j, const PaperRecord& v);
void from_json(const json& j, PaperRecord& v);
void to_json(json& j, const ReviewerProfile& v);
void from_json(const json& j, ReviewerProfile& v);
void to_json(json& j, const Bid& v);
void from_json(const json& j, Bid& v);
void to_json(json& j, const Review& v);
void from_json(const json& j, Review& v);
void to_json(json& j, const Assignee& v);
void from_json(const json& j, Assignee& v);
void to_json(json& j, const ReviewerTally& v);
void from_json(const json& j, ReviewerTally& v);
void to_json(json& j, const Shortfall& v);
void from_json(const json& j, Shortfall& v);
void to_json(json& j, const Assignment& v);
void from_json(const json& j, Assignment& v);
void to_json(json& j, const Config& v);
void from_json(const json& j, Config& v);
void to_json(json& j, const Credentials& v);
void to_json(json& j, const CredentialRecord& v);
void from_json(const json& j, CredentialRecord& v);
void to_json(json& j, const OutboxMessage& v);
void from_json(const json& j, OutboxMessage& v);
void to_json(json& j, const DiscussionEntry& v);
void from_json(const json& j, DiscussionEntry& v);
void to_json(json& j, const ChairFlag& v);
void from_json(const json& j, ChairFlag& v);
void to_json(json& j, const DecisionRecord& v);
void from_json(const json& j, DecisionRecord& v);
void to_json(json& j, const Counters& v);
void from_json(const json& j, Counters& v);

// Review without the confidential PC comments, for views that must not
// carry them.
json review_for_display(const Review& review, bool include_pc_comments);

}  // namespace confreview

#endif  // CONFREVIEW_JSON_IO_HPP_
