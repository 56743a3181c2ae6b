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

// Monitoring views for the chair and the browse-by-topic listings used while
// bidding. Each view is a pure function of a store snapshot and renders as
// plain text and as JSON.
//
// Papers still in the metadata-only state take no part in the review views;
// they do appear in the abstract listings.

#ifndef CONFREVIEW_OVERVIEWS_HPP_
#define CONFREVIEW_OVERVIEWS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "confreview/model.hpp"
#include "confreview/store.hpp"

namespace confreview {

struct ProgressRow {
  ReviewerId reviewer;
  std::string name;
  int submitted = 0;
  int assigned = 0;
  double ratio() const { return assigned == 0 ? 1.0 : static_cast<double>(submitted) / assigned; }
};

// Laggards first: ascending submitted/assigned, then reviewer id.
struct ProgressOverview {
  std::vector<ProgressRow> rows;
};

// Throws Error(kLifecycle) when no distribution has been committed.
ProgressOverview progress_overview(const StoreData& data);
std::string as_text(const ProgressOverview& v);
nlohmann::json as_json(const ProgressOverview& v);

struct ReviewCell {
  ReviewerId reviewer;
  std::optional<Classification> classification;  // empty until submitted
  std::optional<KnowledgeLevel> expertise;
};

struct AllReviewsRow {
  PaperId paper = 0;
  std::string title;
  ReviewState state = ReviewState::kGrey;
  std::vector<ReviewCell> cells;
  std::vector<std::pair<std::string, std::string>> links;
};

struct AllReviewsOverview {
  std::vector<AllReviewsRow> rows;
};

AllReviewsOverview all_reviews_overview(const StoreData& data);
std::string as_text(const AllReviewsOverview& v);
nlohmann::json as_json(const AllReviewsOverview& v);

struct PaperRef {
  PaperId paper = 0;
  std::string title;
};

struct CategoryGroup {
  std::string key;  // e.g. "AABD"; "-" for papers without reviews
  std::vector<PaperRef> papers;
};

struct CategoriesOverview {
  std::vector<CategoryGroup> groups;
};

// Submitted classifications sorted best first.
std::string category_key(const std::vector<Review>& reviews);
CategoriesOverview categories_overview(const StoreData& data);
std::string as_text(const CategoriesOverview& v);
nlohmann::json as_json(const CategoriesOverview& v);

struct ChampionRow {
  PaperId paper = 0;
  std::string title;
  std::vector<std::pair<ReviewerId, std::string>> champions;  // (id, name)
};

struct ChampionsOverview {
  std::vector<ChampionRow> rows;
};

ChampionsOverview champions_overview(const StoreData& data);
std::string as_text(const ChampionsOverview& v);
nlohmann::json as_json(const ChampionsOverview& v);

struct LowExpertiseRow {
  PaperId paper = 0;
  std::string title;
  std::string expertise;  // e.g. "YZY", in reviewer order
};

struct LowExpertiseOverview {
  std::vector<LowExpertiseRow> rows;
};

LowExpertiseOverview low_expertise_overview(const StoreData& data);
std::string as_text(const LowExpertiseOverview& v);
nlohmann::json as_json(const LowExpertiseOverview& v);

struct AbstractEntry {
  PaperId paper = 0;
  std::string title;
  std::string abstract;
};

struct TopicListing {
  TopicId topic = 0;
  std::string name;
  std::vector<AbstractEntry> papers;
};

struct AbstractOverviews {
  std::vector<TopicListing> topics;
  std::vector<AbstractEntry> combined;
};

AbstractOverviews topic_abstract_overviews(const StoreData& data);
// Throws Error(kNotFound) for an unknown topic.
TopicListing topic_listing(const StoreData& data, TopicId topic);
std::string as_text(const TopicListing& v);
nlohmann::json as_json(const TopicListing& v);
// Single printable document: every topic listing followed by all abstracts.
std::string as_text(const AbstractOverviews& v);
nlohmann::json as_json(const AbstractOverviews& v);

}  // namespace confreview

#endif  // CONFREVIEW_OVERVIEWS_HPP_
