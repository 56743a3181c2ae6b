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

// Builders shared by the unit and acceptance tests.

#ifndef CONFREVIEW_TESTS_FIXTURES_HPP_
#define CONFREVIEW_TESTS_FIXTURES_HPP_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "confreview/assignment.hpp"
#include "confreview/registry.hpp"
#include "confreview/workflow.hpp"
#include "assignment_oracle.hpp"

namespace confreview::testing {

inline std::vector<Topic> make_topics(int n) {
  std::vector<Topic> topics;
  for (int i = 1; i <= n; ++i) topics.push_back({i, "Topic " + std::to_string(i)});
  return topics;
}

inline PaperMetadata make_metadata(const std::string& title, std::set<TopicId> topics,
                                   std::vector<Author> authors = {}) {
  PaperMetadata m;
  m.title = title;
  m.abstract = "Abstract of " + title + ".";
  m.contact = {"Ada", "Contact", "contact-" + title + "@example.org", "", "", ""};
  m.authors = authors.empty() ? std::vector<Author>{{"Ada", "Contact", "Uni"}} : authors;
  m.topics = std::move(topics);
  return m;
}

inline PaperRecord make_paper(PaperId id, std::set<TopicId> topics,
                              PaperStatus status = PaperStatus::kFullPaperUploaded) {
  PaperRecord p;
  static_cast<PaperMetadata&>(p) = make_metadata("Paper " + std::to_string(id), std::move(topics));
  p.id = id;
  p.status = status;
  return p;
}

inline ReviewerProfile make_reviewer(const std::string& id,
                                     std::map<TopicId, KnowledgeLevel> expertise,
                                     std::map<TopicId, Willingness> willingness = {},
                                     std::set<PaperId> coi = {}) {
  ReviewerProfile r;
  r.id = id;
  r.name = "Reviewer " + id;
  r.email = id + "@example.org";
  r.expertise = std::move(expertise);
  r.willingness = std::move(willingness);
  r.coi_papers = std::move(coi);
  return r;
}

inline std::map<TopicId, KnowledgeLevel> uniform_expertise(int topics, KnowledgeLevel level) {
  std::map<TopicId, KnowledgeLevel> m;
  for (int t = 1; t <= topics; ++t) m[t] = level;
  return m;
}

// Random distribution instance: up to `max_papers` papers, up to
// `max_reviewers` reviewers, need up to min(3, reviewers).
inline DistributionInput random_instance(std::mt19937& rng, int max_papers = 8,
                                         int max_reviewers = 6, int max_need = 3) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  DistributionInput in;
  const int topics = uniform(1, 4);
  const int papers = uniform(0, max_papers);
  const int reviewers = uniform(1, max_reviewers);
  in.config.reviewers_per_paper = uniform(1, std::min(max_need, reviewers));
  in.config.max_preference_papers = uniform(1, 4);
  in.config.hard_cap_slack = uniform(0, 2);

  for (int p = 1; p <= papers; ++p) {
    std::set<TopicId> ts;
    const int k = uniform(1, topics);
    while (static_cast<int>(ts.size()) < k) ts.insert(uniform(1, topics));
    // Ids are not contiguous; the input order is shuffled below.
    in.papers.push_back(make_paper(p * 3, ts));
  }
  std::shuffle(in.papers.begin(), in.papers.end(), rng);

  for (int r = 0; r < reviewers; ++r) {
    ReviewerProfile prof;
    prof.id = std::string(1, static_cast<char>('a' + uniform(0, 25))) + std::to_string(r);
    prof.name = prof.id;
    prof.email = prof.id + "@example.org";
    for (int t = 1; t <= topics; ++t) {
      // Leave some topics unrated.
      if (uniform(0, 5) > 0) prof.expertise[t] = static_cast<KnowledgeLevel>(uniform(0, 2));
      int w = uniform(0, 6);
      if (w == 0) prof.willingness[t] = Willingness::kR;
      if (w == 1) prof.willingness[t] = Willingness::kW;
    }
    for (const auto& p : in.papers) {
      if (uniform(0, 7) == 0) prof.coi_papers.insert(p.id);
    }
    in.reviewers.push_back(prof);
  }

  std::uint64_t seq = 1;
  const int bids = papers == 0 ? 0 : uniform(0, papers * reviewers);
  for (int i = 0; i < bids; ++i) {
    const auto& r = in.reviewers[uniform(0, reviewers - 1)];
    const auto& p = in.papers[uniform(0, papers - 1)];
    in.bids.push_back({r.id, p.id, uniform(0, 1) ? BidPriority::kHigh : BidPriority::kLow, seq++});
  }
  std::shuffle(in.bids.begin(), in.bids.end(), rng);
  return in;
}

inline oracle::Instance to_instance(const DistributionInput& in) {
  return {in.papers,
          in.reviewers,
          in.bids,
          in.config.reviewers_per_paper,
          in.config.max_preference_papers,
          in.config.hard_cap_slack};
}

// Deterministic clock for workflow tests: each call advances one second.
struct TickClock {
  std::shared_ptr<std::atomic<Timestamp>> now = std::make_shared<std::atomic<Timestamp>>(1'000'000);
  Timestamp operator()() const { return (*now)++; }
};

inline RegistryOptions memory_options() {
  RegistryOptions o;
  o.kdf_iterations = 1000;
  return o;
}

// A temporary directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("confreview-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

// A conference with `topics` topics, the given reviewers imported and
// `papers` papers submitted and uploaded (titles "P<id>").
struct Conference {
  Registry registry;
  TickClock clock;
  Workflow workflow;
  Credentials admin = Workflow::local_maintainer();
  std::map<PaperId, Credentials> authors;

  explicit Conference(RegistryOptions options = memory_options())
      : registry(std::move(options)), workflow(registry, clock) {}

  void setup(int topics, const std::vector<ReviewerProfile>& reviewers, int papers,
             int need = 2, const std::string& chair_email = "chair@example.org") {
    Config c;
    c.conference_name = "TestConf";
    c.chair_email = chair_email;
    c.reviewers_per_paper = need;
    workflow.configure(admin, c, make_topics(topics));
    for (int i = 0; i < papers; ++i) add_paper({1});
    workflow.import_reviewers(admin, reviewers);
  }

  PaperId add_paper(std::set<TopicId> topics, bool upload = true,
                    std::vector<Author> authors_list = {}) {
    const PaperId next = registry.snapshot()->counters.next_paper_id;
    auto r = workflow.submit_phase1(make_metadata("P" + std::to_string(next), topics, authors_list));
    Credentials creds{r.credentials.login, Role::kAuthorContact, std::to_string(r.id)};
    authors[r.id] = creds;
    if (upload) workflow.upload_paper(creds, r.id, "%PDF-1.4 paper " + std::to_string(r.id), "p.pdf");
    return r.id;
  }

  static Credentials reviewer(const std::string& id) { return {id, Role::kReviewer, id}; }
  static Credentials chair() { return {"chair", Role::kChair, ""}; }

  void assign(std::map<PaperId, std::vector<ReviewerId>> lists) {
    Assignment a;
    for (auto& [paper, ids] : lists) {
      for (auto& id : ids) {
        a.papers[paper].push_back({id, AssignmentSource::kManual});
        ++a.reviewers[id].assigned;
      }
    }
    workflow.commit_distribution(admin, a);
  }

  Review review(PaperId paper, const std::string& who, Classification c,
                KnowledgeLevel k = KnowledgeLevel::kY, std::string for_authors = "ok",
                std::string for_pc = "") {
    return workflow.submit_review(reviewer(who), paper, {c, k, std::move(for_authors), std::move(for_pc)});
  }
};

inline std::vector<ReviewerProfile> simple_reviewers(int n, int topics = 1) {
  std::vector<ReviewerProfile> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(make_reviewer("r" + std::to_string(i), uniform_expertise(topics, KnowledgeLevel::kY)));
  }
  return out;
}

}  // namespace confreview::testing

#endif  // CONFREVIEW_TESTS_FIXTURES_HPP_
