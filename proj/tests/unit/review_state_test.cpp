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

#include <random>

#include "doctest.h"

#include "confreview/error.hpp"
#include "confreview/review_state.hpp"
#include "fixtures.hpp"
#include "state_oracle.hpp"

using namespace confreview;
using confreview::testing::make_paper;

namespace {

std::vector<Classification> parse(const std::string& letters) {
  std::vector<Classification> out;
  for (char c : letters) out.push_back(*classification_from_char(c));
  return out;
}

// Reviews by r0, r1, ... with the given letters.
std::vector<Review> reviews_of(const std::string& letters) {
  std::vector<Review> out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    Review r;
    r.paper = 1;
    r.reviewer = "r" + std::to_string(i);
    r.classification = *classification_from_char(letters[i]);
    out.push_back(r);
  }
  return out;
}

std::string state(const std::string& letters, std::optional<ReviewerId> viewer = std::nullopt,
                  bool accepted = false) {
  PaperRecord p = make_paper(1, {1});
  std::vector<ReviewerId> assigned;
  for (int i = 0; i < 6; ++i) assigned.push_back("r" + std::to_string(i));
  return std::string(to_string(paper_state(p, reviews_of(letters), assigned, viewer, accepted)));
}

std::string span_text(const std::string& letters) {
  auto s = classification_span(std::span<const Classification>(parse(letters)));
  return {to_char(s.high), to_char(s.low)};
}

}  // namespace

TEST_SUITE("review_state") {

TEST_CASE("span examples") {
  CHECK(span_text("AD") == "AD");
  CHECK(span_text("B") == "BB");
  CHECK(span_text("ABC") == "AC");
  CHECK(span_text("DCBBC") == "BD");
  CHECK_THROWS_AS(classification_span(std::span<const Classification>{}), Error);
}

TEST_CASE("state examples") {
  CHECK(state("BD", std::nullopt, true) == "gold");
  CHECK(state("", "r0") == "white");
  CHECK(state("BD") == "yellow");
  CHECK(state("BC") == "orange");
  CHECK(state("A", "r0") == "pink");
  CHECK(state("") == "grey");
  CHECK(state("AD", "r1") == "red");
  CHECK(state("AC") == "lightyellow");
  CHECK(state("AAB") == "lightgreen");
  CHECK(state("DDC") == "green");
  CHECK(state("A", "r3") == "white");
}

TEST_CASE("a viewer off the list is refused") {
  PaperRecord p = make_paper(1, {1});
  std::vector<ReviewerId> assigned = {"r0"};
  try {
    paper_state(p, reviews_of("A"), assigned, ReviewerId("zz"), false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kForbidden);
    CHECK(std::string(e.what()) == "not a reviewer of this paper");
  }
}

TEST_CASE("acceptance comes from the paper status") {
  PaperRecord p = make_paper(1, {1}, PaperStatus::kAccepted);
  std::vector<ReviewerId> assigned = {"r0"};
  CHECK(paper_state(p, reviews_of("D"), assigned, std::nullopt) == ReviewState::kGold);
  p.status = PaperStatus::kCameraReadyReceived;
  CHECK(paper_state(p, reviews_of("D"), assigned, std::nullopt) == ReviewState::kGold);
  p.status = PaperStatus::kRejected;
  CHECK(paper_state(p, reviews_of("D"), assigned, std::nullopt) == ReviewState::kGreen);
}

TEST_CASE("reviews of other papers are ignored") {
  PaperRecord p = make_paper(1, {1});
  auto reviews = reviews_of("A");
  Review other;
  other.paper = 2;
  other.reviewer = "r1";
  other.classification = Classification::kD;
  reviews.push_back(other);
  std::vector<ReviewerId> assigned = {"r0", "r1"};
  CHECK(paper_state(p, reviews, assigned, std::nullopt) == ReviewState::kLightGreen);
  CHECK(paper_state(p, reviews, assigned, ReviewerId("r0")) == ReviewState::kPink);
}

TEST_CASE("span table agrees with the oracle") {
  const std::string letters = "ABCD";
  for (char hi : letters) {
    for (char lo : letters) {
      if (lo < hi) continue;
      ClassificationSpan s{*classification_from_char(hi), *classification_from_char(lo)};
      CHECK(std::string(to_string(span_state(s))) == oracle::span_color(hi, lo));
    }
  }
}

TEST_CASE("conflict colors are absorbing under insertion") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> letter(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::string ls(1, static_cast<char>('A' + letter(rng)));
    std::string before = state(ls);
    for (int k = 0; k < 4; ++k) {
      std::string prev_span = span_text(ls);
      ls.push_back(static_cast<char>('A' + letter(rng)));
      std::string next_span = span_text(ls);
      CHECK(next_span[0] <= prev_span[0]);
      CHECK(next_span[1] >= prev_span[1]);
      std::string after = state(ls);
      if (is_conflict(*review_state_from_string(before))) {
        CHECK(is_conflict(*review_state_from_string(after)));
      }
      before = after;
    }
  }
}

TEST_CASE("agrees with the table oracle on small multisets") {
  const std::string letters = "ABCD";
  std::vector<std::string> sets = {""};
  for (int size = 1; size <= 3; ++size) {
    std::vector<std::string> next;
    for (const auto& s : sets) {
      for (char c : letters) {
        if (s.empty() || c >= s.back()) next.push_back(s + c);
      }
    }
    for (const auto& s : next) {
      for (bool accepted : {false, true}) {
        CHECK(state(s, std::nullopt, accepted) ==
              oracle::expected_color(s, oracle::Viewer::kChair, accepted));
        // Viewer r5 has not submitted.
        CHECK(state(s, "r5", accepted) ==
              oracle::expected_color(s, oracle::Viewer::kNotSubmitted, accepted));
        CHECK(state(s, "r0", accepted) ==
              oracle::expected_color(s, size == 1 ? oracle::Viewer::kSoleSubmitter
                                                  : oracle::Viewer::kOneOfMany,
                                     accepted));
      }
    }
    sets = next;
  }
}

}  // TEST_SUITE
