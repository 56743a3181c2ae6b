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

#include "confreview/config_file.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <set>
#include <sstream>

#include "confreview/error.hpp"

namespace confreview {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Content lines with their 1-based numbers; comments and blanks dropped.
std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(n, std::string(t));
  }
  return out;
}

std::string at(int line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (auto n = parse_number<Timestamp>(text)) return n;
  std::tm tm{};
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  std::string s(text);
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();
  char tail = 0;
  int fields = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &year, &month, &day, &tail,
                           &hour, &minute, &second);
  if (fields == 3) {
    if (s.size() != 10) return std::nullopt;
  } else if (fields >= 6 && (tail == 'T' || tail == ' ')) {
    if (fields == 6) second = 0;
    std::size_t expected = fields == 6 ? 16 : 19;
    if (s.size() != expected) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
      second > 60) {
    return std::nullopt;
  }
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = second;
  std::time_t t = timegm(&tm);
  std::tm check{};
  gmtime_r(&t, &check);
  if (check.tm_mday != day) return std::nullopt;  // e.g. February 30
  return static_cast<Timestamp>(t);
}

std::string format_timestamp(Timestamp t) {
  std::time_t tt = static_cast<std::time_t>(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Config parse_config_text(std::string_view text) {
  Config config;
  std::vector<std::string> problems;
  std::set<std::string> seen;
  for (const auto& [n, line] : content_lines(text)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(at(n) + "expected key = value");
      continue;
    }
    std::string key(trim(std::string_view(line).substr(0, eq)));
    std::string value(trim(std::string_view(line).substr(eq + 1)));
    if (!seen.insert(key).second) {
      problems.push_back(at(n) + "duplicate key " + key);
      continue;
    }
    auto integer = [&](int& target) {
      if (auto v = parse_number<int>(value)) {
        target = *v;
      } else {
        problems.push_back(at(n) + key + ": expected an integer");
      }
    };
    auto deadline = [&](std::optional<Timestamp>& target) {
      if (value.empty()) {
        target.reset();
      } else if (auto t = parse_timestamp(value)) {
        target = t;
      } else {
        problems.push_back(at(n) + key + ": expected a date or seconds since epoch");
      }
    };
    if (key == "conference_name") {
      config.conference_name = value;
    } else if (key == "chair_email") {
      config.chair_email = value;
    } else if (key == "reviewers_per_paper") {
      integer(config.reviewers_per_paper);
    } else if (key == "max_preference_papers") {
      integer(config.max_preference_papers);
    } else if (key == "hard_cap_slack") {
      integer(config.hard_cap_slack);
    } else if (key == "poll_interval_seconds") {
      integer(config.poll_interval_seconds);
    } else if (key == "phase1_deadline") {
      deadline(config.phase1_deadline);
    } else if (key == "full_paper_deadline") {
      deadline(config.full_paper_deadline);
    } else if (key == "page_offset") {
      integer(config.page_offset);
    } else {
      problems.push_back(at(n) + "unknown key " + key);
    }
  }
  for (auto& p : validate_config(config)) problems.push_back(std::move(p));
  if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid configuration file", problems);
  return config;
}

std::string format_config_text(const Config& config) {
  std::ostringstream out;
  out << "# Conference settings. Deadlines are UTC; leave empty for none.\n";
  out << "conference_name = " << config.conference_name << "\n";
  out << "chair_email = " << config.chair_email << "\n";
  out << "reviewers_per_paper = " << config.reviewers_per_paper << "\n";
  out << "# bid-based assignments per reviewer, the rest is kept as a pool of experts\n";
  out << "max_preference_papers = " << config.max_preference_papers << "\n";
  out << "hard_cap_slack = " << config.hard_cap_slack << "\n";
  out << "poll_interval_seconds = " << config.poll_interval_seconds << "\n";
  out << "phase1_deadline = "
      << (config.phase1_deadline ? format_timestamp(*config.phase1_deadline) : "") << "\n";
  out << "full_paper_deadline = "
      << (config.full_paper_deadline ? format_timestamp(*config.full_paper_deadline) : "")
      << "\n";
  out << "page_offset = " << config.page_offset << "\n";
  return out.str();
}

std::vector<Topic> parse_topics_text(std::string_view text) {
  std::vector<Topic> topics;
  std::vector<std::string> problems;
  for (const auto& [n, line] : content_lines(text)) {
    auto dot = line.find('.');
    std::optional<int> id;
    if (dot != std::string::npos) id = parse_number<int>(std::string_view(line).substr(0, dot));
    if (!id) {
      problems.push_back(at(n) + "expected '<number>. <name>'");
      continue;
    }
    topics.push_back({*id, std::string(trim(std::string_view(line).substr(dot + 1)))});
  }
  for (auto& p : validate_topics(topics)) problems.push_back(std::move(p));
  if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid topics file", problems);
  return topics;
}

std::string format_topics_text(std::span<const Topic> topics) {
  std::ostringstream out;
  out << "# One conference topic per line, numbered from 1.\n";
  for (const auto& t : topics) out << t.id << ". " << t.name << "\n";
  return out.str();
}

std::vector<ReviewerProfile> parse_roster_text(std::string_view text,
                                               std::span<const Topic> topics) {
  std::vector<ReviewerProfile> out;
  std::vector<std::string> problems;
  std::set<std::string> handles;
  for (const auto& [n, line] : content_lines(text)) {
    auto fields = split(line, '|');
    if (fields.size() < 4 || fields.size() > 5) {
      problems.push_back(at(n) + "expected 'handle | name | email | codes | conflicts'");
      continue;
    }
    ReviewerProfile r;
    r.id = fields[0];
    r.name = fields[1];
    r.email = fields[2];
    if (r.id.empty()) problems.push_back(at(n) + "handle empty");
    if (!handles.insert(r.id).second) problems.push_back(at(n) + "duplicate handle " + r.id);
    if (r.email.empty()) problems.push_back(at(n) + "email empty");

    std::vector<std::string> codes;
    std::istringstream code_stream(fields[3]);
    for (std::string c; code_stream >> c;) codes.push_back(c);
    if (codes.size() != topics.size()) {
      problems.push_back(at(n) + "expected " + std::to_string(topics.size()) +
                         " topic codes, found " + std::to_string(codes.size()));
    }
    for (std::size_t i = 0; i < codes.size() && i < topics.size(); ++i) {
      auto code = parse_topic_code(codes[i]);
      if (!code) {
        problems.push_back(at(n) + "invalid topic code '" + codes[i] + "'");
        continue;
      }
      r.expertise[topics[i].id] = code->level;
      if (code->willingness) r.willingness[topics[i].id] = *code->willingness;
    }
    if (fields.size() == 5 && !fields[4].empty()) {
      std::string ids = fields[4];
      for (auto& c : ids) {
        if (c == ',') c = ' ';
      }
      std::istringstream id_stream(ids);
      for (std::string token; id_stream >> token;) {
        auto id = parse_number<int>(token);
        if (!id || *id < 1) {
          problems.push_back(at(n) + "invalid paper id '" + token + "'");
        } else {
          r.coi_papers.insert(*id);
        }
      }
    }
    out.push_back(std::move(r));
  }
  if (!problems.empty()) throw Error(ErrorKind::kValidation, "invalid reviewer roster", problems);
  return out;
}

std::string format_roster_text(std::span<const ReviewerProfile> reviewers,
                               std::span<const Topic> topics) {
  std::ostringstream out;
  out << "# handle | name | email | one code per topic (X/Y/Z, optional R or W) | "
         "conflicting paper ids\n";
  for (const auto& r : reviewers) {
    out << r.id << " | " << r.name << " | " << r.email << " |";
    for (const auto& t : topics) {
      TopicCode code{KnowledgeLevel::kZ, std::nullopt};
      if (auto it = r.expertise.find(t.id); it != r.expertise.end()) code.level = it->second;
      if (auto it = r.willingness.find(t.id); it != r.willingness.end()) code.willingness = it->second;
      out << ' ' << format_topic_code(code);
    }
    out << " |";
    bool first = true;
    for (PaperId p : r.coi_papers) {
      out << (first ? " " : ", ") << p;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace confreview
