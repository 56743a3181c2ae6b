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

#include "confreview/overviews.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "confreview/error.hpp"
#include "confreview/review_state.hpp"

namespace confreview {

using nlohmann::json;

namespace {

bool in_review(const PaperRecord& p) { return p.status != PaperStatus::kMetadataOnly; }

// Exact comparison of submitted/assigned; 0/0 counts as 1.
bool ratio_less(const ProgressRow& a, const ProgressRow& b) {
  long long an = a.assigned == 0 ? 1 : a.submitted, ad = a.assigned == 0 ? 1 : a.assigned;
  long long bn = b.assigned == 0 ? 1 : b.submitted, bd = b.assigned == 0 ? 1 : b.assigned;
  return an * bd < bn * ad;
}

std::string reviewer_name(const StoreData& data, const ReviewerId& id) {
  const ReviewerProfile* r = data.find_reviewer(id);
  return r ? r->name : id;
}

}  // namespace

// ---------------------------------------------------------------------------

ProgressOverview progress_overview(const StoreData& data) {
  if (!data.assignment) {
    throw Error(ErrorKind::kLifecycle, "papers have not been distributed yet");
  }
  ProgressOverview v;
  for (const auto& [id, profile] : data.reviewers) {
    ProgressRow row{id, profile.name, 0, 0};
    for (PaperId p : data.assignment->papers_of(id)) {
      ++row.assigned;
      if (data.find_review(p, id)) ++row.submitted;
    }
    v.rows.push_back(row);
  }
  std::stable_sort(v.rows.begin(), v.rows.end(), [](const ProgressRow& a, const ProgressRow& b) {
    if (ratio_less(a, b)) return true;
    if (ratio_less(b, a)) return false;
    return a.reviewer < b.reviewer;
  });
  return v;
}

std::string as_text(const ProgressOverview& v) {
  std::ostringstream out;
  out << "Review progress (submitted / assigned)\n\n";
  for (const auto& r : v.rows) {
    out << "  " << r.reviewer;
    for (std::size_t i = r.reviewer.size(); i < 12; ++i) out << ' ';
    out << ' ' << r.submitted << " / " << r.assigned << "  " << r.name << "\n";
  }
  return out.str();
}

json as_json(const ProgressOverview& v) {
  json rows = json::array();
  for (const auto& r : v.rows) {
    rows.push_back({{"reviewer", r.reviewer},
                    {"name", r.name},
                    {"submitted", r.submitted},
                    {"assigned", r.assigned}});
  }
  return {{"rows", rows}};
}

// ---------------------------------------------------------------------------

AllReviewsOverview all_reviews_overview(const StoreData& data) {
  AllReviewsOverview v;
  for (const auto& [id, paper] : data.papers) {
    if (!in_review(paper)) continue;
    AllReviewsRow row;
    row.paper = id;
    row.title = paper.title;
    auto reviews = data.reviews_of(id);
    std::vector<ReviewerId> assigned;
    if (data.assignment) assigned = data.assignment->reviewers_of(id);
    row.state = paper_state(paper, reviews, assigned, std::nullopt);
    for (const auto& r : assigned) {
      ReviewCell cell{r, std::nullopt, std::nullopt};
      if (const Review* review = data.find_review(id, r)) {
        cell.classification = review->classification;
        cell.expertise = review->overall_expertise;
      }
      row.cells.push_back(cell);
    }
    for (const auto& review : reviews) {
      if (std::find(assigned.begin(), assigned.end(), review.reviewer) == assigned.end()) {
        row.cells.push_back({review.reviewer, review.classification, review.overall_expertise});
      }
    }
    const std::string base = "/papers/" + std::to_string(id);
    row.links = {{"paper", base + "/file"}, {"abstract", base}, {"reviews", base + "/reviews"}};
    v.rows.push_back(std::move(row));
  }
  return v;
}

std::string as_text(const AllReviewsOverview& v) {
  std::ostringstream out;
  out << "All reviews\n\n";
  for (const auto& row : v.rows) {
    out << "  " << row.paper << "  [" << to_string(row.state) << "]  " << row.title << "\n";
    out << "     ";
    if (row.cells.empty()) out << " (no reviewers)";
    for (const auto& c : row.cells) {
      out << ' ' << c.reviewer << ':';
      if (c.classification) {
        out << to_char(*c.classification) << to_char(*c.expertise);
      } else {
        out << "--";
      }
    }
    out << "\n";
  }
  return out.str();
}

json as_json(const AllReviewsOverview& v) {
  json rows = json::array();
  for (const auto& row : v.rows) {
    json cells = json::array();
    for (const auto& c : row.cells) {
      cells.push_back({{"reviewer", c.reviewer},
                       {"classification", c.classification
                                              ? json(std::string(1, to_char(*c.classification)))
                                              : json(nullptr)},
                       {"expertise", c.expertise ? json(std::string(1, to_char(*c.expertise)))
                                                 : json(nullptr)}});
    }
    json links = json::object();
    for (const auto& [label, path] : row.links) links[label] = path;
    rows.push_back({{"paper", row.paper},
                    {"title", row.title},
                    {"state", to_string(row.state)},
                    {"cells", cells},
                    {"links", links}});
  }
  return {{"rows", rows}};
}

// ---------------------------------------------------------------------------

std::string category_key(const std::vector<Review>& reviews) {
  if (reviews.empty()) return "-";
  std::string key;
  for (const auto& r : reviews) key.push_back(to_char(r.classification));
  std::sort(key.begin(), key.end());
  return key;
}

CategoriesOverview categories_overview(const StoreData& data) {
  std::map<std::string, std::vector<PaperRef>> groups;
  for (const auto& [id, paper] : data.papers) {
    if (!in_review(paper)) continue;
    groups[category_key(data.reviews_of(id))].push_back({id, paper.title});
  }
  CategoriesOverview v;
  for (auto& [key, papers] : groups) {
    if (key != "-") v.groups.push_back({key, std::move(papers)});
  }
  if (auto it = groups.find("-"); it != groups.end()) {
    v.groups.push_back({"-", std::move(it->second)});
  }
  return v;
}

std::string as_text(const CategoriesOverview& v) {
  std::ostringstream out;
  out << "Categories\n";
  for (const auto& g : v.groups) {
    out << "\n" << g.key << "\n";
    for (const auto& p : g.papers) out << "  " << p.paper << "  " << p.title << "\n";
  }
  return out.str();
}

json as_json(const CategoriesOverview& v) {
  json groups = json::array();
  for (const auto& g : v.groups) {
    json papers = json::array();
    for (const auto& p : g.papers) papers.push_back({{"paper", p.paper}, {"title", p.title}});
    groups.push_back({{"key", g.key}, {"papers", papers}});
  }
  return {{"groups", groups}};
}

// ---------------------------------------------------------------------------

ChampionsOverview champions_overview(const StoreData& data) {
  ChampionsOverview v;
  for (const auto& [id, paper] : data.papers) {
    if (!in_review(paper)) continue;
    ChampionRow row{id, paper.title, {}};
    for (const auto& r : data.reviews_of(id)) {
      if (r.classification == Classification::kA) {
        row.champions.emplace_back(r.reviewer, reviewer_name(data, r.reviewer));
      }
    }
    if (!row.champions.empty()) v.rows.push_back(std::move(row));
  }
  std::stable_sort(v.rows.begin(), v.rows.end(), [](const ChampionRow& a, const ChampionRow& b) {
    if (a.champions.size() != b.champions.size()) return a.champions.size() > b.champions.size();
    return a.paper < b.paper;
  });
  return v;
}

std::string as_text(const ChampionsOverview& v) {
  std::ostringstream out;
  out << "Champions\n\n";
  for (const auto& row : v.rows) {
    out << "  " << row.paper << "  " << row.title << "\n";
    for (const auto& [id, name] : row.champions) out << "      " << name << " (" << id << ")\n";
  }
  return out.str();
}

json as_json(const ChampionsOverview& v) {
  json rows = json::array();
  for (const auto& row : v.rows) {
    json champions = json::array();
    for (const auto& [id, name] : row.champions) {
      champions.push_back({{"reviewer", id}, {"name", name}});
    }
    rows.push_back({{"paper", row.paper}, {"title", row.title}, {"champions", champions}});
  }
  return {{"rows", rows}};
}

// ---------------------------------------------------------------------------

LowExpertiseOverview low_expertise_overview(const StoreData& data) {
  LowExpertiseOverview v;
  for (const auto& [id, paper] : data.papers) {
    if (!in_review(paper)) continue;
    auto reviews = data.reviews_of(id);
    if (reviews.empty()) continue;
    bool any_expert = std::any_of(reviews.begin(), reviews.end(), [](const Review& r) {
      return r.overall_expertise == KnowledgeLevel::kX;
    });
    if (any_expert) continue;
    LowExpertiseRow row{id, paper.title, ""};
    for (const auto& r : reviews) row.expertise.push_back(to_char(r.overall_expertise));
    v.rows.push_back(std::move(row));
  }
  return v;
}

std::string as_text(const LowExpertiseOverview& v) {
  std::ostringstream out;
  out << "Papers reviewed by non-experts only\n\n";
  for (const auto& row : v.rows) {
    out << "  " << row.paper << "  " << row.expertise << "  " << row.title << "\n";
  }
  return out.str();
}

json as_json(const LowExpertiseOverview& v) {
  json rows = json::array();
  for (const auto& row : v.rows) {
    rows.push_back({{"paper", row.paper}, {"title", row.title}, {"expertise", row.expertise}});
  }
  return {{"rows", rows}};
}

// ---------------------------------------------------------------------------

TopicListing topic_listing(const StoreData& data, TopicId topic) {
  auto it = std::find_if(data.topics.begin(), data.topics.end(),
                         [topic](const Topic& t) { return t.id == topic; });
  if (it == data.topics.end()) {
    throw Error(ErrorKind::kNotFound, "unknown topic " + std::to_string(topic));
  }
  TopicListing listing{topic, it->name, {}};
  for (const auto& [id, paper] : data.papers) {
    if (paper.topics.contains(topic)) listing.papers.push_back({id, paper.title, paper.abstract});
  }
  return listing;
}

AbstractOverviews topic_abstract_overviews(const StoreData& data) {
  AbstractOverviews v;
  for (const auto& t : data.topics) v.topics.push_back(topic_listing(data, t.id));
  for (const auto& [id, paper] : data.papers) v.combined.push_back({id, paper.title, paper.abstract});
  return v;
}

namespace {

void write_entries(std::ostream& out, const std::vector<AbstractEntry>& entries) {
  if (entries.empty()) out << "  (no papers)\n";
  for (const auto& e : entries) {
    out << "\n[" << e.paper << "] " << e.title << "\n";
    std::istringstream lines(e.abstract);
    std::string line;
    while (std::getline(lines, line)) out << "    " << line << "\n";
  }
}

json entries_json(const std::vector<AbstractEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"paper", e.paper}, {"title", e.title}, {"abstract", e.abstract}});
  }
  return out;
}

}  // namespace

std::string as_text(const TopicListing& v) {
  std::ostringstream out;
  out << "Topic " << v.topic << ". " << v.name << "\n";
  write_entries(out, v.papers);
  return out.str();
}

json as_json(const TopicListing& v) {
  return {{"topic", v.topic}, {"name", v.name}, {"papers", entries_json(v.papers)}};
}

std::string as_text(const AbstractOverviews& v) {
  std::ostringstream out;
  for (const auto& t : v.topics) out << as_text(t) << "\f\n";
  out << "All abstracts\n";
  write_entries(out, v.combined);
  return out.str();
}

json as_json(const AbstractOverviews& v) {
  json topics = json::array();
  for (const auto& t : v.topics) topics.push_back(as_json(t));
  return {{"topics", topics}, {"combined", entries_json(v.combined)}};
}

}  // namespace confreview
