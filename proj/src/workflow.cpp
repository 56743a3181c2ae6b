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

#include "confreview/workflow.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <sstream>

#include "confreview/error.hpp"
#include "confreview/review_state.hpp"

namespace confreview {

Timestamp system_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

namespace {

const PaperRecord& paper_or_throw(const StoreData& data, PaperId id) {
  const PaperRecord* p = data.find_paper(id);
  if (!p) throw Error(ErrorKind::kNotFound, "unknown paper " + std::to_string(id));
  return *p;
}

PaperRecord& paper_or_throw(StoreData& data, PaperId id) {
  auto it = data.papers.find(id);
  if (it == data.papers.end()) {
    throw Error(ErrorKind::kNotFound, "unknown paper " + std::to_string(id));
  }
  return it->second;
}

const ReviewerProfile& reviewer_or_throw(const StoreData& data, const ReviewerId& id) {
  const ReviewerProfile* r = data.find_reviewer(id);
  if (!r) throw Error(ErrorKind::kNotFound, "unknown reviewer " + id);
  return *r;
}

// The reviewer an operation acts for: the caller itself, or the reviewer
// named by a maintainer acting on their behalf.
ReviewerId acting_reviewer(const Credentials& creds, const std::optional<ReviewerId>& named) {
  if (creds.role == Role::kReviewer) {
    if (named && *named != creds.subject) {
      throw Error(ErrorKind::kForbidden, "reviewers may only act for themselves");
    }
    return creds.subject;
  }
  if (creds.role == Role::kMaintainer) {
    if (!named) throw Error(ErrorKind::kValidation, "reviewer id required");
    return *named;
  }
  throw Error(ErrorKind::kForbidden, "only reviewers may perform this action");
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string file_extension(const std::string& filename) {
  auto dot = filename.rfind('.');
  std::string ext;
  if (dot != std::string::npos) {
    for (char c : filename.substr(dot + 1)) {
      if (std::isalnum(static_cast<unsigned char>(c))) {
        ext.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
    }
  }
  if (ext.empty() || ext.size() > 10) ext = "bin";
  return ext;
}

std::vector<std::string> check_metadata(const PaperMetadata& meta, PaperId id,
                                        std::span<const Topic> topics) {
  PaperRecord probe;
  static_cast<PaperMetadata&>(probe) = meta;
  probe.id = id;
  auto report = validate_paper(probe, topics);
  if (is_blank(meta.title)) report.emplace_back("title empty");
  if (is_blank(meta.abstract)) report.emplace_back("abstract empty");
  if (is_blank(meta.contact.email)) report.emplace_back("contact email empty");
  return report;
}

std::string format_rfc5322_date(Timestamp t) {
  std::time_t tt = static_cast<std::time_t>(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "%a, %d %b %Y %H:%M:%S +0000", &tm);
  return buf;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

// Adds a message to the outbox and writes its .eml file with the commit.
// `delivered_body`, if given, is written to the file instead of the stored body.
OutboxMessage queue_message(Transaction& tx, OutboxMessage message,
                            const std::optional<std::string>& delivered_body = std::nullopt) {
  StoreData& data = tx.data();
  message.id = data.counters.next_message_id++;
  std::string stem = std::string(to_string(message.kind)) + "-" +
                     std::to_string(message.paper) + "-" + std::to_string(message.created_at);
  std::string name = stem + ".eml";
  for (int n = 2; std::any_of(data.outbox.begin(), data.outbox.end(),
                              [&](const OutboxMessage& m) { return m.file_name == name; });
       ++n) {
    name = stem + "-" + std::to_string(n) + ".eml";
  }
  message.file_name = name;
  OutboxMessage delivered = message;
  if (delivered_body) delivered.body = *delivered_body;
  std::string from = data.config.chair_email.empty() ? "noreply@localhost" : data.config.chair_email;
  tx.put_blob("outbox/" + name, render_eml(delivered, data.config.conference_name + " <" + from + ">"));
  data.outbox.push_back(message);
  return message;
}

std::string credentials_body(const std::string& greeting_name, const Config& config,
                             const std::string& purpose, const std::string& login,
                             const std::string& password) {
  std::ostringstream out;
  out << "Dear " << greeting_name << ",\n\n"
      << purpose << "\n\n"
      << "  Login:    " << login << "\n"
      << "  Password: " << password << "\n\n"
      << "Kind regards,\n"
      << config.conference_name << "\n";
  return out.str();
}

void check_profile(const ReviewerProfile& profile, const StoreData& data) {
  std::vector<std::string> problems;
  if (!is_valid_handle(profile.id)) problems.push_back("invalid reviewer handle '" + profile.id + "'");
  if (is_blank(profile.email)) problems.push_back(profile.id + ": email empty");
  for (const auto& topic : data.topics) {
    if (!profile.expertise.contains(topic.id)) {
      problems.push_back(profile.id + ": no expertise given for topic " + std::to_string(topic.id));
    }
  }
  auto known_topic = [&](TopicId t) {
    return std::any_of(data.topics.begin(), data.topics.end(),
                       [t](const Topic& topic) { return topic.id == t; });
  };
  for (const auto& [t, level] : profile.expertise) {
    if (!known_topic(t)) problems.push_back(profile.id + ": unknown topic " + std::to_string(t));
  }
  for (const auto& [t, w] : profile.willingness) {
    if (!known_topic(t)) problems.push_back(profile.id + ": unknown topic " + std::to_string(t));
  }
  for (PaperId p : profile.coi_papers) {
    if (!data.find_paper(p)) problems.push_back(profile.id + ": unknown paper " + std::to_string(p));
  }
  if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid reviewer profile", problems);
}

}  // namespace

std::string render_eml(const OutboxMessage& message, const std::string& from) {
  std::ostringstream out;
  out << "From: " << from << "\r\n";
  out << "To: " << join(message.to, ", ") << "\r\n";
  if (!message.cc.empty()) out << "Cc: " << join(message.cc, ", ") << "\r\n";
  out << "Subject: " << message.subject << "\r\n";
  out << "Date: " << format_rfc5322_date(message.created_at) << "\r\n";
  out << "X-Message-Kind: " << to_string(message.kind) << "\r\n";
  if (message.paper) out << "X-Paper: " << message.paper << "\r\n";
  out << "MIME-Version: 1.0\r\n";
  out << "Content-Type: text/plain; charset=utf-8\r\n";
  out << "\r\n";
  std::istringstream body(message.body);
  std::string line;
  while (std::getline(body, line)) out << line << "\r\n";
  return out.str();
}

Workflow::Workflow(Registry& registry, Clock clock)
    : registry_(registry), clock_(std::move(clock)) {}

Credentials Workflow::local_maintainer() {
  return Credentials{"local-maintainer", Role::kMaintainer, ""};
}

// ---------------------------------------------------------------------------
// Administration

void Workflow::configure(const Credentials& creds, const Config& config,
                         std::optional<std::vector<Topic>> topics) {
  if (auto problems = validate_config(config); !problems.empty()) {
    throw Error(ErrorKind::kValidation, "invalid configuration", problems);
  }
  if (topics) {
    if (auto problems = validate_topics(*topics); !problems.empty()) {
      throw Error(ErrorKind::kValidation, "invalid topics", problems);
    }
  }
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kManageConference, {});
    data.config = config;
    if (topics) {
      bool same_ids = topics->size() == data.topics.size();
      if (!same_ids && !data.papers.empty()) {
        throw Error(ErrorKind::kLifecycle,
                    "topics cannot be added or removed once papers have been submitted");
      }
      data.topics = *topics;
    }
  });
}

IssuedCredentials Workflow::create_account(const Credentials& creds, const std::string& login,
                                           Role role) {
  if (role != Role::kChair && role != Role::kMaintainer) {
    throw Error(ErrorKind::kValidation, "accounts created here must be chair or maintainer");
  }
  IssuedCredentials issued;
  registry_.commit([&](Transaction& tx) {
    require(tx.data(), creds, Action::kManageConference, {});
    issued = tx.issue_credentials(login, role, "");
  });
  return issued;
}

std::vector<IssuedCredentials> Workflow::import_reviewers(
    const Credentials& creds, std::span<const ReviewerProfile> profiles) {
  std::vector<IssuedCredentials> issued;
  const Timestamp now = clock_();
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kManageConference, {});
    std::set<ReviewerId> seen;
    for (const auto& profile : profiles) {
      check_profile(profile, data);
      if (!seen.insert(profile.id).second) {
        throw Error(ErrorKind::kValidation, "duplicate reviewer " + profile.id);
      }
    }
    for (const auto& profile : profiles) {
      auto it = data.reviewers.find(profile.id);
      if (it != data.reviewers.end()) {
        it->second = profile;
        continue;
      }
      data.reviewers.emplace(profile.id, profile);
      IssuedCredentials creds_issued = tx.issue_credentials(profile.id, Role::kReviewer, profile.id);
      OutboxMessage msg;
      msg.kind = MessageKind::kCredentials;
      msg.to = {profile.email};
      msg.subject = "[" + data.config.conference_name + "] Your reviewer account";
      msg.created_at = now;
      const std::string purpose = "You can now log in to the reviewing system of " +
                                  data.config.conference_name + " with:";
      msg.body = credentials_body(profile.name, data.config, purpose, creds_issued.login, "********");
      queue_message(tx, msg,
                    credentials_body(profile.name, data.config, purpose, creds_issued.login,
                                     creds_issued.password));
      issued.push_back(std::move(creds_issued));
    }
  });
  return issued;
}

ReviewerProfile Workflow::update_expertise(const Credentials& creds,
                                           const std::optional<ReviewerId>& reviewer,
                                           const std::map<TopicId, KnowledgeLevel>& expertise,
                                           const std::map<TopicId, Willingness>& willingness) {
  const ReviewerId who = acting_reviewer(creds, reviewer);
  ReviewerProfile result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kUpdateProfile, {std::nullopt, who});
    ReviewerProfile updated = reviewer_or_throw(data, who);
    updated.expertise = expertise;
    updated.willingness = willingness;
    check_profile(updated, data);
    data.reviewers[who] = updated;
    result = updated;
  });
  return result;
}

// ---------------------------------------------------------------------------
// Authors

Phase1Result Workflow::submit_phase1(const PaperMetadata& metadata) {
  Phase1Result result;
  const Timestamp now = clock_();
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    if (data.config.phase1_deadline && now > *data.config.phase1_deadline) {
      throw Error(ErrorKind::kLifecycle, "deadline passed");
    }
    const PaperId id = data.counters.next_paper_id;
    if (auto report = check_metadata(metadata, id, data.topics); !report.empty()) {
      throw Error(ErrorKind::kValidation, "invalid submission", report);
    }
    for (const auto& [other_id, other] : data.papers) {
      if (other.title == metadata.title && other.contact.email == metadata.contact.email) {
        result.warnings.push_back("possible duplicate of paper " + std::to_string(other_id));
      }
    }
    PaperRecord record;
    static_cast<PaperMetadata&>(record) = metadata;
    record.id = id;
    record.status = PaperStatus::kMetadataOnly;
    data.papers.emplace(id, record);
    ++data.counters.next_paper_id;

    std::string login = "paper" + std::to_string(id);
    for (int n = 2; data.credentials.contains(login); ++n) {
      login = "paper" + std::to_string(id) + "-" + std::to_string(n);
    }
    result.id = id;
    result.credentials = tx.issue_credentials(login, Role::kAuthorContact, std::to_string(id));

    OutboxMessage msg;
    msg.kind = MessageKind::kCredentials;
    msg.paper = id;
    msg.to = {metadata.contact.email};
    msg.subject = "[" + data.config.conference_name + "] Submission " + std::to_string(id) +
                  " received";
    msg.created_at = now;
    const std::string name = metadata.contact.first_name + " " + metadata.contact.last_name;
    const std::string purpose = "Your abstract \"" + metadata.title +
                                "\" has been registered as submission " + std::to_string(id) +
                                ". Use the following login to upload the full paper:";
    msg.body = credentials_body(name, data.config, purpose, login, "********");
    queue_message(tx, msg,
                  credentials_body(name, data.config, purpose, login,
                                   result.credentials.password));
  });
  return result;
}

PaperRecord Workflow::update_phase1(const Credentials& creds, PaperId paper,
                                    const PaperMetadata& metadata) {
  PaperRecord result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kUpdatePaper, {paper, std::nullopt});
    PaperRecord& record = paper_or_throw(data, paper);
    if (record.decided()) throw Error(ErrorKind::kLifecycle, "locked");
    if (auto report = check_metadata(metadata, paper, data.topics); !report.empty()) {
      throw Error(ErrorKind::kValidation, "invalid submission", report);
    }
    static_cast<PaperMetadata&>(record) = metadata;
    result = record;
  });
  return result;
}

PaperRecord Workflow::upload_paper(const Credentials& creds, PaperId paper,
                                   std::string_view bytes, const std::string& filename) {
  PaperRecord result;
  const Timestamp now = clock_();
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kUploadPaper, {paper, std::nullopt});
    PaperRecord& record = paper_or_throw(data, paper);
    if (record.status != PaperStatus::kMetadataOnly &&
        record.status != PaperStatus::kFullPaperUploaded) {
      throw Error(ErrorKind::kLifecycle, "locked");
    }
    if (data.config.full_paper_deadline && now > *data.config.full_paper_deadline) {
      throw Error(ErrorKind::kLifecycle, "deadline passed");
    }
    if (bytes.empty()) throw Error(ErrorKind::kValidation, "empty file");
    const std::string path =
        "files/" + std::to_string(paper) + "/paper." + file_extension(filename);
    if (record.paper_file && *record.paper_file != path) tx.delete_blob(*record.paper_file);
    tx.put_blob(path, bytes);
    record.paper_file = path;
    record.status = PaperStatus::kFullPaperUploaded;
    result = record;
  });
  return result;
}

PaperRecord Workflow::upload_camera_ready(const Credentials& creds, PaperId paper,
                                          std::string_view bytes, const std::string& filename,
                                          std::optional<int> page_count) {
  PaperRecord result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kUploadCameraReady, {paper, std::nullopt});
    PaperRecord& record = paper_or_throw(data, paper);
    if (!record.accepted()) throw Error(ErrorKind::kLifecycle, "paper not accepted");
    if (!page_count) throw Error(ErrorKind::kValidation, "page_count required");
    if (*page_count < 1) throw Error(ErrorKind::kValidation, "page_count must be at least 1");
    if (bytes.empty()) throw Error(ErrorKind::kValidation, "empty file");
    const std::string path =
        "files/" + std::to_string(paper) + "/camera-ready." + file_extension(filename);
    if (record.camera_ready_file && *record.camera_ready_file != path) {
      tx.delete_blob(*record.camera_ready_file);
    }
    tx.put_blob(path, bytes);
    record.camera_ready_file = path;
    record.page_count = page_count;
    record.status = PaperStatus::kCameraReadyReceived;
    result = record;
  });
  return result;
}

PaperRecord Workflow::paper(const Credentials& creds, PaperId paper) const {
  Snapshot snap = registry_.snapshot();
  require(*snap, creds, Action::kReadPaper, {paper, std::nullopt});
  return paper_or_throw(*snap, paper);
}

std::string Workflow::read_paper_file(const Credentials& creds, PaperId paper,
                                      bool camera_ready) const {
  Snapshot snap = registry_.snapshot();
  require(*snap, creds, Action::kReadPaperFile, {paper, std::nullopt});
  const PaperRecord& record = paper_or_throw(*snap, paper);
  const auto& path = camera_ready ? record.camera_ready_file : record.paper_file;
  if (!path) throw Error(ErrorKind::kNotFound, "no file uploaded for paper " + std::to_string(paper));
  auto bytes = registry_.read_blob(*path);
  if (!bytes) throw Error(ErrorKind::kNotFound, "file missing for paper " + std::to_string(paper));
  return *bytes;
}

// ---------------------------------------------------------------------------
// Bidding and conflicts of interest

BidResult Workflow::submit_bids(const Credentials& creds,
                                std::span<const BidSelection> selections,
                                const std::optional<ReviewerId>& reviewer) {
  const ReviewerId who = acting_reviewer(creds, reviewer);
  BidResult result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kSubmitBids, {std::nullopt, who});
    const ReviewerProfile& profile = reviewer_or_throw(data, who);
    for (const auto& s : selections) paper_or_throw(data, s.paper);
    for (const auto& s : selections) {
      if (profile.has_conflict(s.paper)) {
        result.rejected.push_back({s.paper, "conflict of interest"});
        continue;
      }
      data.bids.push_back(Bid{who, s.paper, s.priority, data.counters.next_bid_sequence++});
    }
    for (const Bid& b : effective_bids(data.bids)) {
      if (b.reviewer == who) result.effective.push_back(b);
    }
  });
  return result;
}

ReviewerProfile Workflow::declare_coi(const Credentials& creds, PaperId paper,
                                      const std::optional<ReviewerId>& reviewer) {
  const ReviewerId who = acting_reviewer(creds, reviewer);
  const Timestamp now = clock_();
  ReviewerProfile result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kDeclareCoi, {paper, who});
    paper_or_throw(data, paper);
    reviewer_or_throw(data, who);
    ReviewerProfile& profile = data.reviewers.at(who);
    profile.coi_papers.insert(paper);
    std::erase_if(data.bids, [&](const Bid& b) { return b.reviewer == who && b.paper == paper; });
    if (data.assignment && data.assignment->is_assigned(paper, who)) {
      bool flagged = std::any_of(data.chair_flags.begin(), data.chair_flags.end(),
                                 [&](const ChairFlag& f) { return f.paper == paper && f.reviewer == who; });
      if (!flagged) {
        data.chair_flags.push_back(
            {paper, who, "conflict of interest declared on an assigned paper", now});
        std::sort(data.chair_flags.begin(), data.chair_flags.end(),
                  [](const ChairFlag& a, const ChairFlag& b) {
                    return std::tie(a.paper, a.reviewer) < std::tie(b.paper, b.reviewer);
                  });
      }
    }
    result = profile;
  });
  return result;
}

// ---------------------------------------------------------------------------
// Distribution

DistributionInput Workflow::distribution_input(const StoreData& data) const {
  DistributionInput input;
  for (const auto& [id, p] : data.papers) {
    if (p.status == PaperStatus::kFullPaperUploaded) input.papers.push_back(p);
  }
  input.reviewers = data.reviewer_list();
  for (const Bid& b : data.effective_bids()) {
    bool distributed = std::any_of(input.papers.begin(), input.papers.end(),
                                   [&](const PaperRecord& p) { return p.id == b.paper; });
    if (distributed) input.bids.push_back(b);
  }
  input.config = data.config;
  return input;
}

Assignment Workflow::propose_distribution(const Credentials& creds) const {
  Snapshot snap = registry_.snapshot();
  require(*snap, creds, Action::kRunDistribution, {});
  return confreview::propose_distribution(distribution_input(*snap));
}

void Workflow::commit_distribution(const Credentials& creds, const Assignment& assignment) {
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kRunDistribution, {});
    if (!data.reviews.empty()) {
      throw Error(ErrorKind::kLifecycle,
                  "reviews have been submitted; the distribution can no longer be replaced");
    }
    std::vector<std::string> problems;
    for (const auto& [paper, list] : assignment.papers) {
      if (!data.find_paper(paper)) problems.push_back("unknown paper " + std::to_string(paper));
      std::set<ReviewerId> seen;
      for (const auto& a : list) {
        const ReviewerProfile* r = data.find_reviewer(a.reviewer);
        if (!r) {
          problems.push_back("unknown reviewer " + a.reviewer);
          continue;
        }
        if (!seen.insert(a.reviewer).second) {
          problems.push_back(a.reviewer + " listed twice on paper " + std::to_string(paper));
        }
        if (r->has_conflict(paper)) {
          problems.push_back(a.reviewer + " has a conflict of interest with paper " +
                             std::to_string(paper));
        }
      }
    }
    if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid assignment", problems);
    data.assignment = assignment;
  });
}

// ---------------------------------------------------------------------------
// Reviews

Review Workflow::submit_review(const Credentials& creds, PaperId paper, const ReviewInput& input,
                               const std::optional<ReviewerId>& reviewer) {
  const ReviewerId who = acting_reviewer(creds, reviewer);
  const Timestamp now = clock_();
  Review result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    paper_or_throw(data, paper);
    if (!data.assignment || !data.assignment->is_assigned(paper, who)) {
      throw Error(ErrorKind::kForbidden, "not a reviewer of this paper");
    }
    require(data, creds, Action::kSubmitReview, {paper, who});
    if (data.decisions) throw Error(ErrorKind::kLifecycle, "reviews are frozen after decisions");
    auto key = std::make_pair(paper, who);
    auto it = data.reviews.find(key);
    Review review;
    review.paper = paper;
    review.reviewer = who;
    review.classification = input.classification;
    review.overall_expertise = input.overall_expertise;
    review.comments_for_authors = input.comments_for_authors;
    review.comments_for_pc = input.comments_for_pc;
    if (it == data.reviews.end()) {
      review.submitted_at = now;
      review.updated_at = now;
    } else {
      review.submitted_at = it->second.submitted_at;
      review.updated_at = std::max(now, review.submitted_at);
    }
    data.reviews[key] = review;
    result = review;
  });
  return result;
}

std::vector<Review> Workflow::visible_reviews(const Credentials& creds, PaperId paper) const {
  Snapshot snap = registry_.snapshot();
  paper_or_throw(*snap, paper);
  if (creds.role == Role::kReviewer) {
    if (!snap->assignment || !snap->assignment->is_assigned(paper, creds.subject)) {
      throw Error(ErrorKind::kForbidden, "not a reviewer of this paper");
    }
  }
  require(*snap, creds, Action::kReadReviews, {paper, std::nullopt});
  if (creds.role == Role::kReviewer && !snap->find_review(paper, creds.subject)) {
    return {};  // others' reviews stay hidden until the viewer has submitted
  }
  return snap->reviews_of(paper);
}

OutboxMessage Workflow::send_conflict_message(const Credentials& creds, PaperId paper,
                                              const std::string& text) {
  const ReviewerId who = acting_reviewer(creds, std::nullopt);
  if (is_blank(text)) throw Error(ErrorKind::kValidation, "empty message");
  const Timestamp now = clock_();
  OutboxMessage result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    const PaperRecord& record = paper_or_throw(data, paper);
    if (!data.assignment || !data.assignment->is_assigned(paper, who)) {
      throw Error(ErrorKind::kForbidden, "not a reviewer of this paper");
    }
    require(data, creds, Action::kSendConflictMessage, {paper, who});
    if (!data.find_review(paper, who)) {
      throw Error(ErrorKind::kLifecycle, "submit your review first");
    }
    if (is_blank(data.config.chair_email)) {
      throw Error(ErrorKind::kLifecycle, "chair email not configured");
    }
    std::vector<std::string> to;
    for (const auto& other : data.assignment->reviewers_of(paper)) {
      if (other == who) continue;
      const ReviewerProfile* r = data.find_reviewer(other);
      if (r && !is_blank(r->email) && std::find(to.begin(), to.end(), r->email) == to.end()) {
        to.push_back(r->email);
      }
    }
    if (to.empty()) throw Error(ErrorKind::kLifecycle, "no other reviewers assigned to this paper");

    DiscussionEntry entry{data.counters.next_message_id, paper, who, text, now};
    data.discussions.push_back(entry);

    const ReviewerProfile& sender = reviewer_or_throw(data, who);
    OutboxMessage msg;
    msg.kind = MessageKind::kConflictDiscussion;
    msg.paper = paper;
    msg.to = to;
    msg.cc = {data.config.chair_email};
    msg.subject = "[" + data.config.conference_name + "] Discussion on paper " +
                  std::to_string(paper) + ": " + record.title;
    msg.created_at = now;
    msg.body = "Message from " + sender.name + " (" + who + ") about paper " +
               std::to_string(paper) + ":\n\n" + text + "\n";
    result = queue_message(tx, msg);
  });
  return result;
}

Assignment Workflow::volunteer_for_paper(const Credentials& creds, PaperId paper) {
  const ReviewerId who = acting_reviewer(creds, std::nullopt);
  Assignment result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kVolunteer, {paper, who});
    paper_or_throw(data, paper);
    const ReviewerProfile& profile = reviewer_or_throw(data, who);
    if (!data.assignment) throw Error(ErrorKind::kLifecycle, "papers have not been distributed yet");
    if (data.decisions) throw Error(ErrorKind::kLifecycle, "decisions have been recorded");
    if (profile.has_conflict(paper)) {
      throw Error(ErrorKind::kForbidden, "conflict of interest with this paper");
    }
    if (data.assignment->is_assigned(paper, who)) {
      result = *data.assignment;
      return;
    }
    if (data.reviews_of(paper).empty()) {
      throw Error(ErrorKind::kLifecycle, "paper has no reviews yet");
    }
    data.assignment->papers[paper].push_back({who, AssignmentSource::kVolunteer});
    ++data.assignment->reviewers[who].assigned;
    result = *data.assignment;
  });
  return result;
}

Dashboard Workflow::dashboard(const Credentials& creds, const ReviewerId& reviewer) const {
  Snapshot snap = registry_.snapshot();
  require(*snap, creds, Action::kReadDashboard, {std::nullopt, reviewer});
  reviewer_or_throw(*snap, reviewer);
  Dashboard board;
  board.reviewer = reviewer;
  board.poll_interval_seconds = snap->config.poll_interval_seconds;
  if (!snap->assignment) return board;
  for (PaperId paper : snap->assignment->papers_of(reviewer)) {
    const PaperRecord* record = snap->find_paper(paper);
    if (!record) continue;
    auto reviews = snap->reviews_of(paper);
    auto assigned = snap->assignment->reviewers_of(paper);
    DashboardEntry entry;
    entry.paper = paper;
    entry.title = record->title;
    entry.state = paper_state(*record, reviews, assigned, reviewer);
    const Review* own = snap->find_review(paper, reviewer);
    entry.own_review_submitted = own != nullptr;
    if (own) entry.own_review_updated_at = own->updated_at;
    const std::string base = "/papers/" + std::to_string(paper);
    entry.links.emplace_back("paper", base + "/file");
    entry.links.emplace_back("abstract", base);
    entry.links.emplace_back("review-form", base + "/review-form");
    entry.links.emplace_back("submit-review", "/reviews");
    if (own) {
      entry.links.emplace_back("reviews", base + "/reviews");
      entry.links.emplace_back("message", base + "/messages");
    }
    board.papers.push_back(std::move(entry));
  }
  return board;
}

// ---------------------------------------------------------------------------
// Decisions and notifications

DecisionRecord Workflow::record_decisions(const Credentials& creds,
                                          const std::set<PaperId>& accepted) {
  const Timestamp now = clock_();
  DecisionRecord result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kRecordDecisions, {});
    if (data.decisions) throw Error(ErrorKind::kLifecycle, "decisions already recorded");
    for (PaperId id : accepted) {
      const PaperRecord& p = paper_or_throw(data, id);
      if (p.status != PaperStatus::kFullPaperUploaded) {
        throw Error(ErrorKind::kLifecycle, "paper " + std::to_string(id) + " is " +
                                               std::string(to_string(p.status)) +
                                               " and cannot be accepted");
      }
    }
    DecisionRecord record;
    record.recorded_at = now;
    for (auto& [id, p] : data.papers) {
      if (p.status != PaperStatus::kFullPaperUploaded) continue;
      if (accepted.contains(id)) {
        p.status = PaperStatus::kAccepted;
        record.accepted.insert(id);
      } else {
        p.status = PaperStatus::kRejected;
        record.rejected.insert(id);
      }
    }
    data.decisions = record;
    result = record;
  });
  return result;
}

std::vector<OutboxMessage> Workflow::generate_notifications(const Credentials& creds) {
  const Timestamp now = clock_();
  std::vector<OutboxMessage> result;
  registry_.commit([&](Transaction& tx) {
    StoreData& data = tx.data();
    require(data, creds, Action::kSendNotifications, {});
    if (!data.decisions) throw Error(ErrorKind::kLifecycle, "no decisions recorded yet");
    std::set<PaperId> decided = data.decisions->accepted;
    decided.insert(data.decisions->rejected.begin(), data.decisions->rejected.end());
    const DecisionRecord decisions = *data.decisions;
    for (PaperId id : decided) {
      const PaperRecord& p = paper_or_throw(data, id);
      const bool accepted = decisions.accepted.contains(id);
      std::ostringstream body;
      body << "Dear " << p.contact.first_name << " " << p.contact.last_name << ",\n\n";
      if (accepted) {
        body << "We are pleased to inform you that your paper has been accepted for "
             << data.config.conference_name << ".\n";
      } else {
        body << "We regret to inform you that your paper has not been accepted for "
             << data.config.conference_name << ".\n";
      }
      body << "\nPaper " << id << ": " << p.title << "\n";
      auto reviews = data.reviews_of(id);
      if (reviews.empty()) {
        body << "\nNo reviews were submitted for this paper.\n";
      } else {
        body << "\nThe reviewers' comments are included below.\n";
        int n = 0;
        for (const Review& r : reviews) {
          body << "\n--- Review " << ++n << " ---\n" << r.comments_for_authors;
          if (!r.comments_for_authors.empty() && r.comments_for_authors.back() != '\n') {
            body << '\n';
          }
        }
      }
      if (accepted) {
        body << "\nPlease upload the camera-ready version of your paper, together with its "
                "page count, using your submission login.\n";
      }
      body << "\nKind regards,\nThe program committee chair\n";

      OutboxMessage msg;
      msg.kind = MessageKind::kNotification;
      msg.paper = id;
      msg.to = {p.contact.email};
      msg.subject = "[" + data.config.conference_name + "] Decision on paper " +
                    std::to_string(id) + ": " + p.title;
      msg.created_at = now;
      msg.body = body.str();
      result.push_back(queue_message(tx, msg));
    }
  });
  return result;
}

}  // namespace confreview
