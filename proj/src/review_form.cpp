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

#include "confreview/review_form.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "confreview/error.hpp"

namespace confreview {

namespace {

constexpr std::array<std::string_view, 3> kMarkers = {kAuthorsMarker, kPcMarker, kEndMarker};

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string_view ltrim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  s = ltrim(s);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool needs_escape(std::string_view line) { return ltrim(line).starts_with("---"); }

void write_comment(std::string& out, const std::string& text) {
  if (text.empty()) return;
  for (const auto& line : split_lines(text)) {
    if (needs_escape(line)) out += ' ';
    out += line;
    out += '\n';
  }
}

std::string join_comment(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

int marker_index(std::string_view line) {
  auto t = line;
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  for (std::size_t i = 0; i < kMarkers.size(); ++i) {
    if (t == kMarkers[i]) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::string FormError::to_string() const { return message + " at line " + std::to_string(line); }

std::vector<std::string> ParsedReview::messages() const {
  std::vector<std::string> out;
  for (const auto& e : errors) out.push_back(e.to_string());
  return out;
}

std::string render_template(PaperId paper, const ReviewerId& reviewer) {
  std::string out;
  out += "PAPER: " + std::to_string(paper) + "\n";
  out += "REVIEWER: " + reviewer + "\n";
  out += "CLASSIFICATION: \n";
  out += "EXPERTISE: \n";
  out += std::string(kAuthorsMarker) + "\n";
  out += std::string(kPcMarker) + "\n";
  out += std::string(kEndMarker) + "\n";
  return out;
}

std::string render_template(const StoreData& data, PaperId paper, const ReviewerId& reviewer) {
  if (!data.find_paper(paper)) {
    throw Error(ErrorKind::kNotFound, "unknown paper " + std::to_string(paper));
  }
  if (!data.find_reviewer(reviewer)) throw Error(ErrorKind::kNotFound, "unknown reviewer " + reviewer);
  return render_template(paper, reviewer);
}

std::string render_filled(const Review& review) {
  std::string out;
  out += "PAPER: " + std::to_string(review.paper) + "\n";
  out += "REVIEWER: " + review.reviewer + "\n";
  out += std::string("CLASSIFICATION: ") + to_char(review.classification) + "\n";
  out += std::string("EXPERTISE: ") + to_char(review.overall_expertise) + "\n";
  out += std::string(kAuthorsMarker) + "\n";
  write_comment(out, review.comments_for_authors);
  out += std::string(kPcMarker) + "\n";
  write_comment(out, review.comments_for_pc);
  out += std::string(kEndMarker) + "\n";
  return out;
}

ParsedReview parse_review(std::string_view text, const StoreData* known) {
  ParsedReview result;
  auto error = [&](int line, std::string message) {
    result.errors.push_back({line, std::move(message)});
  };

  std::vector<std::string> lines = split_lines(text);
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  // A trailing newline leaves one empty element that is not a line.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  bool quoted = false;
  for (const auto& l : lines) {
    if (trim(l).empty()) continue;
    quoted = l.starts_with(">");
    break;
  }
  if (quoted) {
    for (auto& l : lines) {
      if (l.starts_with("> ")) {
        l.erase(0, 2);
      } else if (l.starts_with(">")) {
        l.erase(0, 1);
      }
    }
  }

  enum class Section { kHeader, kAuthors, kPc, kEnd };
  Section section = Section::kHeader;
  int expected_marker = 0;
  std::array<bool, 3> seen{};

  std::optional<PaperId> paper;
  std::optional<ReviewerId> reviewer;
  std::optional<Classification> classification;
  std::optional<KnowledgeLevel> expertise;
  std::array<int, 4> field_line{};  // PAPER, REVIEWER, CLASSIFICATION, EXPERTISE
  std::vector<std::string> authors, pc;
  std::vector<std::string>* current = nullptr;

  const std::array<std::string_view, 4> labels = {"PAPER", "REVIEWER", "CLASSIFICATION",
                                                  "EXPERTISE"};

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    const int m = marker_index(line);
    if (m >= 0) {
      if (seen[m]) {
        error(n, "duplicate marker " + std::string(kMarkers[m]));
      } else if (m != expected_marker) {
        error(n, "unexpected marker " + std::string(kMarkers[m]) + ", expected " +
                     std::string(kMarkers[std::min(expected_marker, 2)]));
      }
      seen[m] = true;
      expected_marker = std::max(expected_marker, m + 1);
      section = static_cast<Section>(m + 1);
      current = section == Section::kAuthors ? &authors : section == Section::kPc ? &pc : nullptr;
      continue;
    }

    if (section == Section::kAuthors || section == Section::kPc) {
      std::string content = line;
      if (needs_escape(content)) {
        if (!content.empty() && (content.front() == ' ' || content.front() == '\t')) {
          content.erase(0, 1);
        } else {
          error(n, "unknown marker line");
          continue;
        }
      }
      current->push_back(std::move(content));
      continue;
    }

    if (trim(line).empty()) continue;
    if (section == Section::kEnd) {
      error(n, "text after " + std::string(kEndMarker));
      continue;
    }

    // Header.
    auto colon = line.find(':');
    std::string_view label = colon == std::string::npos
                                 ? std::string_view()
                                 : trim(std::string_view(line).substr(0, colon));
    auto it = std::find(labels.begin(), labels.end(), label);
    if (colon == std::string::npos || it == labels.end()) {
      error(n, needs_escape(line) ? "unknown marker line" : "unexpected text");
      continue;
    }
    const auto field = static_cast<std::size_t>(it - labels.begin());
    std::string_view value = trim(std::string_view(line).substr(colon + 1));
    std::string lower(label);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (field_line[field] != 0) {
      error(n, "duplicate field " + std::string(label));
      continue;
    }
    field_line[field] = n;
    if (value.empty()) {
      error(n, "missing " + lower);
      continue;
    }
    switch (field) {
      case 0: {
        int id = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), id);
        if (ec != std::errc() || ptr != value.data() + value.size() || id < 1) {
          error(n, "invalid paper id");
        } else if (known && !known->find_paper(id)) {
          error(n, "unknown paper " + std::to_string(id));
        } else {
          paper = id;
        }
        break;
      }
      case 1: {
        ReviewerId id(value);
        if (known && !known->find_reviewer(id)) {
          error(n, "unknown reviewer " + id);
        } else {
          reviewer = id;
        }
        break;
      }
      case 2: {
        auto c = value.size() == 1 ? classification_from_char(value[0]) : std::nullopt;
        if (!c) {
          error(n, "invalid classification");
        } else {
          classification = c;
        }
        break;
      }
      case 3: {
        auto k = value.size() == 1 ? knowledge_from_char(value[0]) : std::nullopt;
        if (!k) {
          error(n, "invalid expertise");
        } else {
          expertise = k;
        }
        break;
      }
    }
  }

  const int eof = static_cast<int>(lines.size()) + 1;
  for (std::size_t f = 0; f < labels.size(); ++f) {
    if (field_line[f] == 0) {
      std::string lower(labels[f]);
      for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      error(eof, "missing field " + lower);
    }
  }
  for (std::size_t m = 0; m < kMarkers.size(); ++m) {
    if (!seen[m]) error(eof, "missing marker " + std::string(kMarkers[m]));
  }

  if (result.errors.empty()) {
    Review r;
    r.paper = *paper;
    r.reviewer = *reviewer;
    r.classification = *classification;
    r.overall_expertise = *expertise;
    r.comments_for_authors = join_comment(authors);
    r.comments_for_pc = join_comment(pc);
    result.review = std::move(r);
  }
  return result;
}

}  // namespace confreview
