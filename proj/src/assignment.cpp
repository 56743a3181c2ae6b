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

#include "confreview/assignment.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "confreview/error.hpp"
#include "confreview/json_io.hpp"

namespace confreview {

ExpertiseScore::ExpertiseScore(int weight_sum, int topic_count)
    : weight_sum_(weight_sum), topic_count_(topic_count) {
  if (topic_count <= 0) {
    throw Error(ErrorKind::kPrecondition, "expertise score needs at least one topic");
  }
}

std::strong_ordering ExpertiseScore::operator<=>(const ExpertiseScore& other) const {
  // a/b <=> c/d with positive denominators.
  long long lhs = static_cast<long long>(weight_sum_) * other.topic_count_;
  long long rhs = static_cast<long long>(other.weight_sum_) * topic_count_;
  return lhs <=> rhs;
}

bool ExpertiseScore::operator==(const ExpertiseScore& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

std::optional<ExpertiseScore> expertise_score(const ReviewerProfile& reviewer,
                                              const PaperRecord& paper) {
  if (paper.topics.empty()) {
    throw Error(ErrorKind::kPrecondition,
                "paper " + std::to_string(paper.id) + " has no topics");
  }
  if (reviewer.has_conflict(paper.id)) return std::nullopt;
  int sum = 0;
  for (TopicId topic : paper.topics) {
    if (auto w = reviewer.willingness.find(topic);
        w != reviewer.willingness.end() && w->second == Willingness::kW) {
      return std::nullopt;
    }
    // A topic the reviewer never rated counts as the weakest level.
    auto level = reviewer.expertise.find(topic);
    sum += knowledge_weight(level == reviewer.expertise.end() ? KnowledgeLevel::kZ
                                                             : level->second);
  }
  return ExpertiseScore(sum, static_cast<int>(paper.topics.size()));
}

bool has_reluctance(const ReviewerProfile& reviewer, const PaperRecord& paper) {
  return std::any_of(paper.topics.begin(), paper.topics.end(), [&](TopicId t) {
    auto w = reviewer.willingness.find(t);
    return w != reviewer.willingness.end() && w->second == Willingness::kR;
  });
}

int load_cap(std::size_t paper_count, std::size_t reviewer_count, const Config& config) {
  if (reviewer_count == 0) return 0;
  std::size_t slots = paper_count * static_cast<std::size_t>(config.reviewers_per_paper);
  std::size_t per_reviewer = (slots + reviewer_count - 1) / reviewer_count;
  return static_cast<int>(per_reviewer) + config.hard_cap_slack;
}

namespace {

struct ReviewerState {
  const ReviewerProfile* profile = nullptr;
  int load = 0;
  int preference_load = 0;
  int bids_satisfied = 0;
};

void check_input(const DistributionInput& input) {
  if (auto problems = validate_config(input.config); !problems.empty()) {
    throw Error(ErrorKind::kPrecondition, "invalid configuration", problems);
  }
  if (static_cast<std::size_t>(input.config.reviewers_per_paper) > input.reviewers.size()) {
    throw Error(ErrorKind::kPrecondition,
                "reviewers_per_paper (" + std::to_string(input.config.reviewers_per_paper) +
                    ") exceeds the number of reviewers (" +
                    std::to_string(input.reviewers.size()) + ")");
  }
  std::set<PaperId> paper_ids;
  for (const auto& p : input.papers) {
    if (!paper_ids.insert(p.id).second) {
      throw Error(ErrorKind::kPrecondition, "duplicate paper " + std::to_string(p.id));
    }
    if (p.topics.empty()) {
      throw Error(ErrorKind::kPrecondition, "paper " + std::to_string(p.id) + " has no topics");
    }
  }
  std::set<ReviewerId> reviewer_ids;
  for (const auto& r : input.reviewers) {
    if (!reviewer_ids.insert(r.id).second) {
      throw Error(ErrorKind::kPrecondition, "duplicate reviewer " + r.id);
    }
  }
  for (const auto& b : input.bids) {
    if (!paper_ids.contains(b.paper) || !reviewer_ids.contains(b.reviewer)) {
      throw Error(ErrorKind::kPrecondition, "bid of " + b.reviewer + " on paper " +
                                                std::to_string(b.paper) +
                                                " refers to an unknown record");
    }
  }
}

}  // namespace

Assignment propose_distribution(const DistributionInput& input) {
  Assignment result;
  if (input.papers.empty()) return result;
  check_input(input);

  const Config& config = input.config;
  const int need = config.reviewers_per_paper;
  const int cap = load_cap(input.papers.size(), input.reviewers.size(), config);
  result.load_cap = cap;

  std::map<ReviewerId, ReviewerState> state;
  for (const auto& r : input.reviewers) state[r.id].profile = &r;

  // paper -> reviewer -> priority of the effective bid
  std::map<PaperId, std::map<ReviewerId, BidPriority>> bids_on;
  for (const Bid& b : effective_bids(input.bids)) bids_on[b.paper][b.reviewer] = b.priority;

  std::vector<const PaperRecord*> order;
  for (const auto& p : input.papers) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const PaperRecord* a, const PaperRecord* b) { return a->id < b->id; });

  for (const PaperRecord* paper : order) {
    std::vector<Assignee>& chosen = result.papers[paper->id];
    const auto& paper_bids = bids_on[paper->id];
    auto on_paper = [&](const ReviewerId& id) {
      return std::any_of(chosen.begin(), chosen.end(),
                         [&](const Assignee& a) { return a.reviewer == id; });
    };

    for (BidPriority priority : {BidPriority::kHigh, BidPriority::kLow}) {
      if (static_cast<int>(chosen.size()) >= need) break;
      std::vector<ReviewerState*> candidates;
      for (const auto& [reviewer, bid_priority] : paper_bids) {
        ReviewerState& rs = state.at(reviewer);
        if (bid_priority != priority) continue;
        if (rs.profile->has_conflict(paper->id)) continue;
        if (rs.preference_load >= config.max_preference_papers) continue;
        if (on_paper(reviewer)) continue;
        candidates.push_back(&rs);
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const ReviewerState* a, const ReviewerState* b) {
                  return std::tie(a->load, a->profile->id) < std::tie(b->load, b->profile->id);
                });
      for (ReviewerState* rs : candidates) {
        if (static_cast<int>(chosen.size()) >= need) break;
        chosen.push_back({rs->profile->id, priority == BidPriority::kHigh
                                               ? AssignmentSource::kHighBid
                                               : AssignmentSource::kLowBid});
        ++rs->load;
        ++rs->preference_load;
        ++rs->bids_satisfied;
      }
    }

    if (static_cast<int>(chosen.size()) < need) {
      struct Candidate {
        ReviewerState* rs;
        ExpertiseScore score;
        bool reluctant;
      };
      std::vector<Candidate> candidates;
      for (auto& [id, rs] : state) {
        if (on_paper(id) || rs.load >= cap) continue;
        auto score = expertise_score(*rs.profile, *paper);
        if (!score) continue;
        candidates.push_back({&rs, *score, has_reluctance(*rs.profile, *paper)});
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) {
                  if (a.score != b.score) return a.score > b.score;
                  if (a.reluctant != b.reluctant) return !a.reluctant;
                  return std::tie(a.rs->load, a.rs->profile->id) <
                         std::tie(b.rs->load, b.rs->profile->id);
                });
      for (const Candidate& c : candidates) {
        if (static_cast<int>(chosen.size()) >= need) break;
        chosen.push_back({c.rs->profile->id, AssignmentSource::kExpertise});
        ++c.rs->load;
        if (paper_bids.contains(c.rs->profile->id)) ++c.rs->bids_satisfied;
      }
    }

    if (int missing = need - static_cast<int>(chosen.size()); missing > 0) {
      result.shortfalls.push_back({paper->id, missing});
    }
  }

  for (const auto& [id, rs] : state) {
    result.reviewers[id] = ReviewerTally{rs.load, rs.bids_satisfied};
  }
  if (!result.shortfalls.empty()) result.warnings.emplace_back(kPoolOfExpertsWarning);
  return result;
}

DistributionReport distribution_report(const Assignment& assignment,
                                       std::span<const Bid> bids) {
  DistributionReport report;
  std::map<ReviewerId, ReviewerReportRow> rows;
  for (const auto& [id, tally] : assignment.reviewers) rows[id].reviewer = id;

  for (const auto& [paper, list] : assignment.papers) {
    for (const auto& a : list) {
      auto& row = rows[a.reviewer];
      row.reviewer = a.reviewer;
      ++row.assigned;
    }
  }
  for (const Bid& b : effective_bids(bids)) {
    auto& row = rows[b.reviewer];
    row.reviewer = b.reviewer;
    ++row.bids_placed;
    if (assignment.is_assigned(b.paper, b.reviewer)) ++row.bids_satisfied;
  }

  for (auto& [id, row] : rows) {
    if (row.bids_placed > 0) {
      row.satisfaction_percent = 100.0 * row.bids_satisfied / row.bids_placed;
    }
    report.total_assignments += row.assigned;
    report.total_bids_placed += row.bids_placed;
    report.total_bids_satisfied += row.bids_satisfied;
    report.reviewers.push_back(row);
  }
  if (report.total_bids_placed > 0) {
    report.total_satisfaction_percent =
        100.0 * report.total_bids_satisfied / report.total_bids_placed;
  }
  report.total_papers = static_cast<int>(assignment.papers.size());
  report.papers_short = assignment.shortfalls;
  report.warnings = assignment.warnings;
  report.papers = assignment.papers;
  return report;
}

namespace {

std::string percent_text(const std::optional<double>& p) {
  if (!p) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f%%", *p);
  return buf;
}

char source_mark(AssignmentSource s) {
  switch (s) {
    case AssignmentSource::kHighBid: return 'H';
    case AssignmentSource::kLowBid: return 'L';
    case AssignmentSource::kExpertise: return 'E';
    case AssignmentSource::kVolunteer: return 'V';
    case AssignmentSource::kManual: return 'M';
  }
  return '?';
}

}  // namespace

std::string as_text(const DistributionReport& report) {
  std::ostringstream out;
  out << "Paper distribution\n\n";
  out << "Paper  Reviewers (H=high bid, L=low bid, E=expertise, V=volunteer)\n";
  for (const auto& [paper, list] : report.papers) {
    char head[16];
    std::snprintf(head, sizeof head, "%5d  ", paper);
    out << head;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out << ", ";
      out << list[i].reviewer << '(' << source_mark(list[i].source) << ')';
    }
    out << '\n';
  }
  out << "\nReviewer              Assigned  Bids  Satisfied  Percentage\n";
  for (const auto& row : report.reviewers) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s  %8d  %4d  %9d  %10s\n", row.reviewer.c_str(),
                  row.assigned, row.bids_placed, row.bids_satisfied,
                  percent_text(row.satisfaction_percent).c_str());
    out << line;
  }
  char totals[200];
  std::snprintf(totals, sizeof totals,
                "\nTotals: %d papers, %d assignments, %d bids, %d satisfied (%s)\n",
                report.total_papers, report.total_assignments, report.total_bids_placed,
                report.total_bids_satisfied,
                percent_text(report.total_satisfaction_percent).c_str());
  out << totals;
  if (!report.papers_short.empty()) {
    out << "\nPapers short of reviewers:\n";
    for (const auto& s : report.papers_short) {
      out << "  paper " << s.paper << ": " << s.missing << " missing\n";
    }
  }
  for (const auto& w : report.warnings) out << "\nWARNING: " << w << '\n';
  return out.str();
}

nlohmann::json as_json(const DistributionReport& report) {
  json reviewers = json::array();
  for (const auto& row : report.reviewers) {
    json r{{"reviewer", row.reviewer},
           {"assigned", row.assigned},
           {"bids_placed", row.bids_placed},
           {"bids_satisfied", row.bids_satisfied}};
    if (row.satisfaction_percent) {
      r["satisfaction_percent"] = *row.satisfaction_percent;
    } else {
      r["satisfaction_percent"] = "n/a";
    }
    reviewers.push_back(std::move(r));
  }
  json papers = json::object();
  for (const auto& [paper, list] : report.papers) papers[std::to_string(paper)] = list;
  json totals{{"papers", report.total_papers},
              {"assignments", report.total_assignments},
              {"bids_placed", report.total_bids_placed},
              {"bids_satisfied", report.total_bids_satisfied}};
  if (report.total_satisfaction_percent) {
    totals["satisfaction_percent"] = *report.total_satisfaction_percent;
  } else {
    totals["satisfaction_percent"] = "n/a";
  }
  return json{{"reviewers", reviewers},
              {"papers_short", report.papers_short},
              {"totals", totals},
              {"papers", papers},
              {"warnings", report.warnings}};
}

}  // namespace confreview
