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

// Proceedings front matter: session plan, table of contents, author index.
//
// Sessions template:
//
//   SESSION: Type Systems
//   PAPER: 3
//   PAPER: 1
//   SESSION: Concurrency
//   PAPER: 7
//
// Blank lines and lines starting with '#' are ignored.

#ifndef CONFREVIEW_PROCEEDINGS_HPP_
#define CONFREVIEW_PROCEEDINGS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "confreview/model.hpp"
#include "confreview/store.hpp"

namespace confreview {

struct Session {
  std::string title;
  std::vector<PaperId> papers;

  bool operator==(const Session&) const = default;
};

struct SessionPlan {
  std::vector<Session> sessions;

  bool operator==(const SessionPlan&) const = default;
};

// Collects every problem before throwing Error(kValidation) with one detail
// per problem.
SessionPlan parse_sessions_template(std::string_view text, const StoreData& data);
// Checks an already built plan against the store the same way.
void validate_plan(const SessionPlan& plan, const StoreData& data);

struct TocEntry {
  PaperId paper = 0;
  std::string title;
  std::vector<std::string> authors;  // "First Last"
  int start_page = 0;
  int page_count = 0;
};

struct TocSession {
  std::string title;
  std::vector<TocEntry> entries;
};

struct Toc {
  std::vector<TocSession> sessions;
  int first_page = 1;
  int last_page = 0;  // first_page - 1 when empty
};

// Start pages are a prefix sum of page counts starting at 1 + page_offset.
// Throws Error(kPrecondition) for an empty plan or a paper without a page
// count ("paper N: no page count").
Toc generate_toc(const SessionPlan& plan, const StoreData& data);
std::string as_text(const Toc& toc);
nlohmann::json as_json(const Toc& toc);

struct AuthorIndexEntry {
  std::string last_name;
  std::string first_name;
  std::vector<int> pages;  // ascending start pages
};

struct AuthorIndex {
  std::vector<AuthorIndexEntry> entries;
};

AuthorIndex generate_author_index(const SessionPlan& plan, const StoreData& data);
AuthorIndex generate_author_index(const Toc& toc, const StoreData& data);
// "Last, First — 1, 23"
std::string format_entry(const AuthorIndexEntry& entry);
std::string as_text(const AuthorIndex& index);
nlohmann::json as_json(const AuthorIndex& index);

}  // namespace confreview

#endif  // CONFREVIEW_PROCEEDINGS_HPP_
