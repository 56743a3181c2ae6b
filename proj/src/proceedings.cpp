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

#include "confreview/proceedings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "confreview/error.hpp"

namespace confreview {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void check_paper(const StoreData& data, PaperId id, std::vector<std::string>& problems,
                 const std::string& where) {
  const PaperRecord* p = data.find_paper(id);
  if (!p) {
    problems.push_back(where + "unknown paper " + std::to_string(id));
  } else if (p->status != PaperStatus::kCameraReadyReceived) {
    problems.push_back(where + "paper " + std::to_string(id) + " is not camera-ready");
  }
}

}  // namespace

SessionPlan parse_sessions_template(std::string_view text, const StoreData& data) {
  SessionPlan plan;
  std::vector<std::string> problems;
  std::set<PaperId> seen;
  std::vector<int> session_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(n) + ": ";
    if (line.starts_with("SESSION:")) {
      auto title = trim(line.substr(8));
      if (title.empty()) problems.push_back(where + "session title empty");
      plan.sessions.push_back({std::string(title), {}});
      session_lines.push_back(n);
    } else if (line.starts_with("PAPER:")) {
      auto value = trim(line.substr(6));
      int id = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), id);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || id < 1) {
        problems.push_back(where + "invalid paper id '" + std::string(value) + "'");
        continue;
      }
      if (plan.sessions.empty()) {
        problems.push_back(where + "paper " + std::to_string(id) + " outside any session");
        continue;
      }
      check_paper(data, id, problems, where);
      if (!seen.insert(id).second) {
        problems.push_back(where + "duplicate paper " + std::to_string(id));
      }
      plan.sessions.back().papers.push_back(id);
    } else {
      problems.push_back(where + "unexpected text");
    }
  }
  for (std::size_t i = 0; i < plan.sessions.size(); ++i) {
    if (plan.sessions[i].papers.empty()) {
      problems.push_back("line " + std::to_string(session_lines[i]) + ": empty session '" +
                         plan.sessions[i].title + "'");
    }
  }
  if (plan.sessions.empty()) problems.push_back("no sessions");
  if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid sessions template", problems);
  return plan;
}

void validate_plan(const SessionPlan& plan, const StoreData& data) {
  std::vector<std::string> problems;
  std::set<PaperId> seen;
  if (plan.sessions.empty()) problems.push_back("no sessions");
  for (const auto& s : plan.sessions) {
    if (s.papers.empty()) problems.push_back("empty session '" + s.title + "'");
    for (PaperId id : s.papers) {
      check_paper(data, id, problems, "");
      if (!seen.insert(id).second) problems.push_back("duplicate paper " + std::to_string(id));
    }
  }
  if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid session plan", problems);
}

Toc generate_toc(const SessionPlan& plan, const StoreData& data) {
  if (plan.sessions.empty()) throw Error(ErrorKind::kPrecondition, "session plan is empty");
  std::vector<std::string> missing;
  for (const auto& s : plan.sessions) {
    for (PaperId id : s.papers) {
      const PaperRecord* p = data.find_paper(id);
      if (!p) throw Error(ErrorKind::kNotFound, "unknown paper " + std::to_string(id));
      if (!p->page_count) missing.push_back("paper " + std::to_string(id) + ": no page count");
    }
  }
  if (!missing.empty()) throw Error(ErrorKind::kPrecondition, missing.front(), missing);

  Toc toc;
  toc.first_page = 1 + data.config.page_offset;
  int next = toc.first_page;
  for (const auto& s : plan.sessions) {
    TocSession session{s.title, {}};
    for (PaperId id : s.papers) {
      const PaperRecord& p = *data.find_paper(id);
      TocEntry e{id, p.title, {}, next, *p.page_count};
      for (const auto& a : p.authors) e.authors.push_back(a.first_name + " " + a.last_name);
      next += *p.page_count;
      session.entries.push_back(std::move(e));
    }
    toc.sessions.push_back(std::move(session));
  }
  toc.last_page = next - 1;
  return toc;
}

std::string as_text(const Toc& toc) {
  std::ostringstream out;
  out << "Table of Contents\n";
  for (const auto& s : toc.sessions) {
    out << "\n" << s.title << "\n\n";
    for (const auto& e : s.entries) {
      std::string title = e.title;
      std::string page = std::to_string(e.start_page);
      out << "  " << title;
      std::size_t width = 2 + title.size();
      if (width + page.size() < 72) {
        out << ' ' << std::string(72 - width - page.size() - 1, '.');
      }
      out << page << "\n";
      std::string authors;
      for (std::size_t i = 0; i < e.authors.size(); ++i) {
        if (i) authors += ", ";
        authors += e.authors[i];
      }
      out << "    " << authors << "\n";
    }
  }
  return out.str();
}

json as_json(const Toc& toc) {
  json sessions = json::array();
  for (const auto& s : toc.sessions) {
    json entries = json::array();
    for (const auto& e : s.entries) {
      entries.push_back({{"paper", e.paper},
                         {"title", e.title},
                         {"authors", e.authors},
                         {"start_page", e.start_page},
                         {"page_count", e.page_count}});
    }
    sessions.push_back({{"title", s.title}, {"entries", entries}});
  }
  return {{"sessions", sessions}, {"first_page", toc.first_page}, {"last_page", toc.last_page}};
}

AuthorIndex generate_author_index(const Toc& toc, const StoreData& data) {
  std::map<std::pair<std::string, std::string>, std::set<int>> pages;
  for (const auto& s : toc.sessions) {
    for (const auto& e : s.entries) {
      for (const auto& a : data.find_paper(e.paper)->authors) {
        pages[{a.last_name, a.first_name}].insert(e.start_page);
      }
    }
  }
  AuthorIndex index;
  for (const auto& [name, p] : pages) {
    index.entries.push_back({name.first, name.second, std::vector<int>(p.begin(), p.end())});
  }
  std::stable_sort(index.entries.begin(), index.entries.end(),
                   [](const AuthorIndexEntry& a, const AuthorIndexEntry& b) {
                     auto ka = std::make_pair(lower(a.last_name), lower(a.first_name));
                     auto kb = std::make_pair(lower(b.last_name), lower(b.first_name));
                     if (ka != kb) return ka < kb;
                     return std::tie(a.last_name, a.first_name) <
                            std::tie(b.last_name, b.first_name);
                   });
  return index;
}

AuthorIndex generate_author_index(const SessionPlan& plan, const StoreData& data) {
  return generate_author_index(generate_toc(plan, data), data);
}

std::string format_entry(const AuthorIndexEntry& entry) {
  std::string out = entry.last_name + ", " + entry.first_name + " — ";
  for (std::size_t i = 0; i < entry.pages.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(entry.pages[i]);
  }
  return out;
}

std::string as_text(const AuthorIndex& index) {
  std::string out = "Author Index\n\n";
  for (const auto& e : index.entries) out += format_entry(e) + "\n";
  return out;
}

json as_json(const AuthorIndex& index) {
  json entries = json::array();
  for (const auto& e : index.entries) {
    entries.push_back(
        {{"last_name", e.last_name}, {"first_name", e.first_name}, {"pages", e.pages}});
  }
  return {{"entries", entries}};
}

}  // namespace confreview
