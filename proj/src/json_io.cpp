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

#include "confreview/json_io.hpp"

#include <string>

#include "confreview/error.hpp"

namespace confreview {

namespace {

[[noreturn]] void bad_value(std::string_view what, const json& j) {
  throw Error(ErrorKind::kValidation,
              "invalid " + std::string(what) + ": " + j.dump());
}

char single_char(const json& j, std::string_view what) {
  if (!j.is_string() || j.get_ref<const std::string&>().size() != 1) bad_value(what, j);
  return j.get_ref<const std::string&>()[0];
}

template <typename T>
json int_keyed(const std::map<int, T>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

template <typename T>
std::map<int, T> int_keyed_from(const json& j) {
  std::map<int, T> out;
  if (j.is_null()) return out;
  if (!j.is_object()) bad_value("object", j);
  for (const auto& [k, v] : j.items()) {
    std::size_t pos = 0;
    int key = 0;
    try {
      key = std::stoi(k, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != k.size()) bad_value("numeric key", json(k));
    out.emplace(key, v.template get<T>());
  }
  return out;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

}  // namespace

void to_json(json& j, KnowledgeLevel v) { j = std::string(1, to_char(v)); }
void from_json(const json& j, KnowledgeLevel& v) {
  auto parsed = knowledge_from_char(single_char(j, "knowledge level"));
  if (!parsed) bad_value("knowledge level", j);
  v = *parsed;
}

void to_json(json& j, Willingness v) { j = std::string(1, to_char(v)); }
void from_json(const json& j, Willingness& v) {
  auto parsed = willingness_from_char(single_char(j, "willingness"));
  if (!parsed) bad_value("willingness", j);
  v = *parsed;
}

void to_json(json& j, Classification v) { j = std::string(1, to_char(v)); }
void from_json(const json& j, Classification& v) {
  auto parsed = classification_from_char(single_char(j, "classification"));
  if (!parsed) bad_value("classification", j);
  v = *parsed;
}

void to_json(json& j, BidPriority v) { j = std::string(to_string(v)); }
void from_json(const json& j, BidPriority& v) {
  if (!j.is_string()) bad_value("priority", j);
  auto parsed = bid_priority_from_string(j.get_ref<const std::string&>());
  if (!parsed) bad_value("priority", j);
  v = *parsed;
}

void to_json(json& j, PaperStatus v) { j = std::string(to_string(v)); }
void from_json(const json& j, PaperStatus& v) {
  if (!j.is_string()) bad_value("status", j);
  auto parsed = paper_status_from_string(j.get_ref<const std::string&>());
  if (!parsed) bad_value("status", j);
  v = *parsed;
}

void to_json(json& j, ReviewState v) { j = std::string(to_string(v)); }
void from_json(const json& j, ReviewState& v) {
  if (!j.is_string()) bad_value("state", j);
  auto parsed = review_state_from_string(j.get_ref<const std::string&>());
  if (!parsed) bad_value("state", j);
  v = *parsed;
}

void to_json(json& j, AssignmentSource v) { j = std::string(to_string(v)); }
void from_json(const json& j, AssignmentSource& v) {
  if (!j.is_string()) bad_value("assignment source", j);
  auto parsed = assignment_source_from_string(j.get_ref<const std::string&>());
  if (!parsed) bad_value("assignment source", j);
  v = *parsed;
}

void to_json(json& j, Role v) { j = std::string(to_string(v)); }
void from_json(const json& j, Role& v) {
  if (!j.is_string()) bad_value("role", j);
  auto parsed = role_from_string(j.get_ref<const std::string&>());
  if (!parsed) bad_value("role", j);
  v = *parsed;
}

void to_json(json& j, MessageKind v) { j = std::string(to_string(v)); }
void from_json(const json& j, MessageKind& v) {
  if (!j.is_string()) bad_value("message kind", j);
  auto parsed = message_kind_from_string(j.get_ref<const std::string&>());
  if (!parsed) bad_value("message kind", j);
  v = *parsed;
}

void to_json(json& j, const Topic& v) { j = json{{"id", v.id}, {"name", v.name}}; }
void from_json(const json& j, Topic& v) {
  v.id = j.at("id").get<int>();
  v.name = j.at("name").get<std::string>();
}

void to_json(json& j, const ContactInfo& v) {
  j = json{{"first_name", v.first_name}, {"last_name", v.last_name},
           {"email", v.email},           {"phone", v.phone},
           {"fax", v.fax},               {"address", v.address}};
}
void from_json(const json& j, ContactInfo& v) {
  v.first_name = get_or<std::string>(j, "first_name", "");
  v.last_name = get_or<std::string>(j, "last_name", "");
  v.email = get_or<std::string>(j, "email", "");
  v.phone = get_or<std::string>(j, "phone", "");
  v.fax = get_or<std::string>(j, "fax", "");
  v.address = get_or<std::string>(j, "address", "");
}

void to_json(json& j, const Author& v) {
  j = json{{"first_name", v.first_name},
           {"last_name", v.last_name},
           {"affiliation", v.affiliation}};
}
void from_json(const json& j, Author& v) {
  v.first_name = get_or<std::string>(j, "first_name", "");
  v.last_name = get_or<std::string>(j, "last_name", "");
  v.affiliation = get_or<std::string>(j, "affiliation", "");
}

void to_json(json& j, const PaperMetadata& v) {
  j = json{{"title", v.title},     {"abstract", v.abstract}, {"contact", v.contact},
           {"authors", v.authors}, {"topics", v.topics},     {"remarks", v.remarks}};
}
void from_json(const json& j, PaperMetadata& v) {
  if (!j.is_object()) bad_value("paper metadata", j);
  v.title = get_or<std::string>(j, "title", "");
  v.abstract = get_or<std::string>(j, "abstract", "");
  v.contact = get_or<ContactInfo>(j, "contact", {});
  v.authors = get_or<std::vector<Author>>(j, "authors", {});
  v.topics = get_or<std::set<TopicId>>(j, "topics", {});
  v.remarks = get_or<std::string>(j, "remarks", "");
}

void to_json(json& j, const PaperRecord& v) {
  to_json(j, static_cast<const PaperMetadata&>(v));
  j["id"] = v.id;
  j["status"] = v.status;
  put_opt(j, "paper_file", v.paper_file);
  put_opt(j, "camera_ready_file", v.camera_ready_file);
  put_opt(j, "page_count", v.page_count);
}
void from_json(const json& j, PaperRecord& v) {
  from_json(j, static_cast<PaperMetadata&>(v));
  v.id = j.at("id").get<int>();
  v.status = j.at("status").get<PaperStatus>();
  v.paper_file = get_opt<std::string>(j, "paper_file");
  v.camera_ready_file = get_opt<std::string>(j, "camera_ready_file");
  v.page_count = get_opt<int>(j, "page_count");
}

void to_json(json& j, const ReviewerProfile& v) {
  j = json{{"id", v.id},
           {"name", v.name},
           {"email", v.email},
           {"expertise", int_keyed(v.expertise)},
           {"willingness", int_keyed(v.willingness)},
           {"coi_papers", v.coi_papers}};
}
void from_json(const json& j, ReviewerProfile& v) {
  v.id = j.at("id").get<std::string>();
  v.name = get_or<std::string>(j, "name", "");
  v.email = get_or<std::string>(j, "email", "");
  v.expertise = int_keyed_from<KnowledgeLevel>(j.value("expertise", json()));
  v.willingness = int_keyed_from<Willingness>(j.value("willingness", json()));
  v.coi_papers = get_or<std::set<PaperId>>(j, "coi_papers", {});
}

void to_json(json& j, const Bid& v) {
  j = json{{"reviewer", v.reviewer},
           {"paper", v.paper},
           {"priority", v.priority},
           {"sequence", v.sequence}};
}
void from_json(const json& j, Bid& v) {
  v.reviewer = j.at("reviewer").get<std::string>();
  v.paper = j.at("paper").get<int>();
  v.priority = j.at("priority").get<BidPriority>();
  v.sequence = j.at("sequence").get<std::uint64_t>();
}

void to_json(json& j, const Review& v) {
  j = json{{"paper", v.paper},
           {"reviewer", v.reviewer},
           {"classification", v.classification},
           {"overall_expertise", v.overall_expertise},
           {"comments_for_authors", v.comments_for_authors},
           {"comments_for_pc", v.comments_for_pc},
           {"submitted_at", v.submitted_at},
           {"updated_at", v.updated_at}};
}
void from_json(const json& j, Review& v) {
  v.paper = j.at("paper").get<int>();
  v.reviewer = get_or<std::string>(j, "reviewer", "");
  v.classification = j.at("classification").get<Classification>();
  v.overall_expertise = j.at("overall_expertise").get<KnowledgeLevel>();
  v.comments_for_authors = get_or<std::string>(j, "comments_for_authors", "");
  v.comments_for_pc = get_or<std::string>(j, "comments_for_pc", "");
  v.submitted_at = get_or<Timestamp>(j, "submitted_at", 0);
  v.updated_at = get_or<Timestamp>(j, "updated_at", 0);
}

json review_for_display(const Review& review, bool include_pc_comments) {
  json j = review;
  if (!include_pc_comments) j.erase("comments_for_pc");
  return j;
}

void to_json(json& j, const Assignee& v) {
  j = json{{"reviewer", v.reviewer}, {"source", v.source}};
}
void from_json(const json& j, Assignee& v) {
  v.reviewer = j.at("reviewer").get<std::string>();
  v.source = j.at("source").get<AssignmentSource>();
}

void to_json(json& j, const ReviewerTally& v) {
  j = json{{"assigned", v.assigned}, {"bids_satisfied", v.bids_satisfied}};
}
void from_json(const json& j, ReviewerTally& v) {
  v.assigned = j.at("assigned").get<int>();
  v.bids_satisfied = j.at("bids_satisfied").get<int>();
}

void to_json(json& j, const Shortfall& v) {
  j = json{{"paper", v.paper}, {"missing", v.missing}};
}
void from_json(const json& j, Shortfall& v) {
  v.paper = j.at("paper").get<int>();
  v.missing = j.at("missing").get<int>();
}

void to_json(json& j, const Assignment& v) {
  j = json{{"papers", int_keyed(v.papers)},
           {"reviewers", v.reviewers},
           {"shortfalls", v.shortfalls},
           {"warnings", v.warnings},
           {"load_cap", v.load_cap}};
}
void from_json(const json& j, Assignment& v) {
  v.papers = int_keyed_from<std::vector<Assignee>>(j.at("papers"));
  v.reviewers = j.at("reviewers").get<std::map<ReviewerId, ReviewerTally>>();
  v.shortfalls = j.at("shortfalls").get<std::vector<Shortfall>>();
  v.warnings = j.at("warnings").get<std::vector<std::string>>();
  v.load_cap = j.at("load_cap").get<int>();
}

void to_json(json& j, const Config& v) {
  j = json{{"conference_name", v.conference_name},
           {"chair_email", v.chair_email},
           {"reviewers_per_paper", v.reviewers_per_paper},
           {"max_preference_papers", v.max_preference_papers},
           {"hard_cap_slack", v.hard_cap_slack},
           {"poll_interval_seconds", v.poll_interval_seconds},
           {"page_offset", v.page_offset}};
  put_opt(j, "phase1_deadline", v.phase1_deadline);
  put_opt(j, "full_paper_deadline", v.full_paper_deadline);
}
void from_json(const json& j, Config& v) {
  Config d;
  v.conference_name = get_or<std::string>(j, "conference_name", d.conference_name);
  v.chair_email = get_or<std::string>(j, "chair_email", d.chair_email);
  v.reviewers_per_paper = get_or<int>(j, "reviewers_per_paper", d.reviewers_per_paper);
  v.max_preference_papers = get_or<int>(j, "max_preference_papers", d.max_preference_papers);
  v.hard_cap_slack = get_or<int>(j, "hard_cap_slack", d.hard_cap_slack);
  v.poll_interval_seconds = get_or<int>(j, "poll_interval_seconds", d.poll_interval_seconds);
  v.page_offset = get_or<int>(j, "page_offset", d.page_offset);
  v.phase1_deadline = get_opt<Timestamp>(j, "phase1_deadline");
  v.full_paper_deadline = get_opt<Timestamp>(j, "full_paper_deadline");
}

void to_json(json& j, const Credentials& v) {
  j = json{{"login", v.login}, {"role", v.role}, {"subject", v.subject}};
}

void to_json(json& j, const CredentialRecord& v) {
  j = json{{"login", v.login},
           {"password_hash", v.password_hash},
           {"role", v.role},
           {"subject", v.subject}};
}
void from_json(const json& j, CredentialRecord& v) {
  v.login = j.at("login").get<std::string>();
  v.password_hash = j.at("password_hash").get<std::string>();
  v.role = j.at("role").get<Role>();
  v.subject = get_or<std::string>(j, "subject", "");
}

void to_json(json& j, const OutboxMessage& v) {
  j = json{{"id", v.id},           {"kind", v.kind},       {"paper", v.paper},
           {"to", v.to},           {"cc", v.cc},           {"subject", v.subject},
           {"body", v.body},       {"created_at", v.created_at},
           {"file_name", v.file_name}};
}
void from_json(const json& j, OutboxMessage& v) {
  v.id = j.at("id").get<std::uint64_t>();
  v.kind = j.at("kind").get<MessageKind>();
  v.paper = j.at("paper").get<int>();
  v.to = j.at("to").get<std::vector<std::string>>();
  v.cc = j.at("cc").get<std::vector<std::string>>();
  v.subject = j.at("subject").get<std::string>();
  v.body = j.at("body").get<std::string>();
  v.created_at = j.at("created_at").get<Timestamp>();
  v.file_name = j.at("file_name").get<std::string>();
}

void to_json(json& j, const DiscussionEntry& v) {
  j = json{{"id", v.id},
           {"paper", v.paper},
           {"sender", v.sender},
           {"text", v.text},
           {"created_at", v.created_at}};
}
void from_json(const json& j, DiscussionEntry& v) {
  v.id = j.at("id").get<std::uint64_t>();
  v.paper = j.at("paper").get<int>();
  v.sender = j.at("sender").get<std::string>();
  v.text = j.at("text").get<std::string>();
  v.created_at = j.at("created_at").get<Timestamp>();
}

void to_json(json& j, const ChairFlag& v) {
  j = json{{"paper", v.paper},
           {"reviewer", v.reviewer},
           {"reason", v.reason},
           {"raised_at", v.raised_at}};
}
void from_json(const json& j, ChairFlag& v) {
  v.paper = j.at("paper").get<int>();
  v.reviewer = j.at("reviewer").get<std::string>();
  v.reason = j.at("reason").get<std::string>();
  v.raised_at = j.at("raised_at").get<Timestamp>();
}

void to_json(json& j, const DecisionRecord& v) {
  j = json{{"accepted", v.accepted},
           {"rejected", v.rejected},
           {"recorded_at", v.recorded_at}};
}
void from_json(const json& j, DecisionRecord& v) {
  v.accepted = j.at("accepted").get<std::set<PaperId>>();
  v.rejected = j.at("rejected").get<std::set<PaperId>>();
  v.recorded_at = j.at("recorded_at").get<Timestamp>();
}

void to_json(json& j, const Counters& v) {
  j = json{{"next_paper_id", v.next_paper_id},
           {"next_bid_sequence", v.next_bid_sequence},
           {"next_message_id", v.next_message_id}};
}
void from_json(const json& j, Counters& v) {
  v.next_paper_id = j.at("next_paper_id").get<int>();
  v.next_bid_sequence = j.at("next_bid_sequence").get<std::uint64_t>();
  v.next_message_id = j.at("next_message_id").get<std::uint64_t>();
}

}  // namespace confreview
