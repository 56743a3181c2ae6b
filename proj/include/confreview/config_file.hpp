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

// Text files edited by the maintainer.
//
// conference.conf, one "key = value" per line, '#' starts a comment:
//
//   conference_name = ECOOP 2026
//   chair_email = chair@example.org
//   reviewers_per_paper = 4
//   max_preference_papers = 8
//   hard_cap_slack = 1
//   poll_interval_seconds = 300
//   phase1_deadline = 2026-03-01T23:59:59Z     (or seconds since epoch)
//   full_paper_deadline = 2026-03-08
//   page_offset = 0
//
// topics.txt, one topic per line:
//
//   1. Type systems
//   2. Concurrency
//
// reviewers.txt, one reviewer per line, fields separated by '|':
//
//   handle | Full Name | email | X YR ZW | 3, 7
//
// The fourth field lists one code per topic in topic order: knowledge level
// X, Y or Z, optionally followed by R or W. The last field lists papers the
// reviewer has a conflict of interest with and may be empty.

#ifndef CONFREVIEW_CONFIG_FILE_HPP_
#define CONFREVIEW_CONFIG_FILE_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confreview/model.hpp"

namespace confreview {

// Accepts seconds since epoch, YYYY-MM-DD, or YYYY-MM-DDTHH:MM[:SS][Z] (UTC).
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);  // YYYY-MM-DDTHH:MM:SSZ

// All parsers collect every problem, then throw Error(kValidation) listing
// them with line numbers.
Config parse_config_text(std::string_view text);
std::string format_config_text(const Config& config);

std::vector<Topic> parse_topics_text(std::string_view text);
std::string format_topics_text(std::span<const Topic> topics);

std::vector<ReviewerProfile> parse_roster_text(std::string_view text,
                                               std::span<const Topic> topics);
std::string format_roster_text(std::span<const ReviewerProfile> reviewers,
                               std::span<const Topic> topics);

}  // namespace confreview

#endif  // CONFREVIEW_CONFIG_FILE_HPP_
