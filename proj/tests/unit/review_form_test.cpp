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
#include "confreview/review_form.hpp"
#include "fixtures.hpp"

using namespace confreview;
using namespace confreview::testing;

namespace {

const char* kValid =
    "PAPER: 7\n"
    "REVIEWER: rvds\n"
    "CLASSIFICATION: B\n"
    "EXPERTISE: Y\n"
    "---COMMENTS FOR AUTHORS---\n"
    "Nice work.\n"
    "Second line.\n"
    "---COMMENTS FOR PC---\n"
    "Borderline.\n"
    "---END---\n";

bool has_message(const ParsedReview& r, const std::string& m) {
  auto all = r.messages();
  return std::find(all.begin(), all.end(), m) != all.end();
}

}  // namespace

TEST_SUITE("review_form") {

TEST_CASE("template") {
  std::string t = render_template(7, "rvds");
  CHECK(t.find("PAPER: 7\n") != std::string::npos);
  CHECK(t.find("REVIEWER: rvds\n") != std::string::npos);
  ParsedReview r = parse_review(t);
  CHECK_FALSE(r.ok());
  CHECK(r.messages() ==
        std::vector<std::string>{"missing classification at line 3", "missing expertise at line 4"});

  StoreData d;
  d.papers[7] = make_paper(7, {1});
  d.reviewers["rvds"] = make_reviewer("rvds", {});
  CHECK(render_template(d, 7, "rvds") == t);
  CHECK_THROWS_AS(render_template(d, 8, "rvds"), Error);
  CHECK_THROWS_AS(render_template(d, 7, "nobody"), Error);
}

TEST_CASE("well-formed form") {
  ParsedReview r = parse_review(kValid);
  REQUIRE(r.ok());
  CHECK(r.review->paper == 7);
  CHECK(r.review->reviewer == "rvds");
  CHECK(r.review->classification == Classification::kB);
  CHECK(r.review->overall_expertise == KnowledgeLevel::kY);
  CHECK(r.review->comments_for_authors == "Nice work.\nSecond line.");
  CHECK(r.review->comments_for_pc == "Borderline.");
}

TEST_CASE("invalid classification letter") {
  std::string text = kValid;
  text.replace(text.find("CLASSIFICATION: B"), 17, "CLASSIFICATION: E");
  ParsedReview r = parse_review(text);
  CHECK(r.messages() == std::vector<std::string>{"invalid classification at line 3"});
  CHECK_FALSE(r.review);
}

TEST_CASE("swapped comment sections give two marker errors") {
  std::string text =
      "PAPER: 7\nREVIEWER: rvds\nCLASSIFICATION: B\nEXPERTISE: Y\n"
      "---COMMENTS FOR PC---\nsecret\n---COMMENTS FOR AUTHORS---\nhello\n---END---\n";
  ParsedReview r = parse_review(text);
  CHECK(r.errors.size() == 2);
  CHECK(has_message(r, "unexpected marker ---COMMENTS FOR PC---, expected ---COMMENTS FOR AUTHORS--- at line 5"));
  CHECK(has_message(r, "unexpected marker ---COMMENTS FOR AUTHORS---, expected ---END--- at line 7"));
}

TEST_CASE("errors are collected, not fail-fast") {
  std::string text =
      "PAPER: x\nREVIEWER: rvds\nREVIEWER: again\nCLASSIFICATION: AB\nEXPERTISE: W\nnoise\n"
      "---COMMENTS FOR AUTHORS---\n---COMMENTS FOR PC---\n";
  ParsedReview r = parse_review(text);
  CHECK(r.messages() == std::vector<std::string>{
                            "invalid paper id at line 1",
                            "duplicate field REVIEWER at line 3",
                            "invalid classification at line 4",
                            "invalid expertise at line 5",
                            "unexpected text at line 6",
                            "missing marker ---END--- at line 9",
                        });
}

TEST_CASE("missing fields and markers") {
  ParsedReview r = parse_review("");
  CHECK(r.errors.size() == 7);
  CHECK(has_message(r, "missing field paper at line 1"));
  CHECK(has_message(r, "missing marker ---COMMENTS FOR AUTHORS--- at line 1"));
}

TEST_CASE("unknown ids against a store") {
  StoreData d;
  d.papers[7] = make_paper(7, {1});
  d.reviewers["rvds"] = make_reviewer("rvds", {});
  CHECK(parse_review(kValid, &d).ok());
  std::string text = kValid;
  text.replace(text.find("PAPER: 7"), 8, "PAPER: 9");
  text.replace(text.find("rvds"), 4, "ghost");
  ParsedReview r = parse_review(text, &d);
  CHECK(r.messages() ==
        std::vector<std::string>{"unknown paper 9 at line 1", "unknown reviewer ghost at line 2"});
}

TEST_CASE("blank lines, CRLF and mail quoting are tolerated") {
  std::string text = std::string("\n\n") + kValid + "\n\n";
  CHECK(parse_review(text).ok());

  std::string crlf;
  for (char c : std::string(kValid)) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  ParsedReview r = parse_review(crlf);
  REQUIRE(r.ok());
  CHECK(r.review->comments_for_authors == "Nice work.\nSecond line.");

  std::string quoted;
  std::string line;
  std::istringstream in(kValid);
  while (std::getline(in, line)) quoted += "> " + line + "\n";
  r = parse_review(quoted);
  REQUIRE(r.ok());
  CHECK(*r.review == *parse_review(kValid).review);
}

TEST_CASE("marker-like comment lines are escaped") {
  Review rv;
  rv.paper = 3;
  rv.reviewer = "kim";
  rv.classification = Classification::kD;
  rv.overall_expertise = KnowledgeLevel::kX;
  rv.comments_for_authors = "---END---\n  ---COMMENTS FOR PC---\n\t---\nplain";
  rv.comments_for_pc = "---";
  std::string form = render_filled(rv);
  CHECK(form.find("\n ---END---\n") != std::string::npos);
  ParsedReview r = parse_review(form);
  REQUIRE(r.ok());
  CHECK(*r.review == rv);

  // An unescaped marker-like line is reported.
  std::string bad = kValid;
  bad.insert(bad.find("Nice"), "---oops\n");
  CHECK(parse_review(bad).messages() == std::vector<std::string>{"unknown marker line at line 6"});
}

TEST_CASE("text after the end marker") {
  std::string text = std::string(kValid) + "PS: thanks\n";
  CHECK(parse_review(text).messages() ==
        std::vector<std::string>{"text after ---END--- at line 11"});
}

TEST_CASE("random round trips") {
  std::mt19937 rng(17);
  const std::string alphabet = "abc XYZ-->:\t.#";
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto random_text = [&] {
    std::string s;
    int lines = uniform(0, 4);
    for (int i = 0; i < lines; ++i) {
      if (i) s += '\n';
      int n = uniform(0, 12);
      if (uniform(0, 3) == 0) s += uniform(0, 1) ? "---END---" : " ---COMMENTS FOR PC---";
      for (int k = 0; k < n; ++k) s += alphabet[uniform(0, static_cast<int>(alphabet.size()) - 1)];
    }
    if (uniform(0, 4) == 0) s += '\n';
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    Review rv;
    rv.paper = uniform(1, 500);
    rv.reviewer = "r" + std::to_string(uniform(0, 99));
    rv.classification = static_cast<Classification>(uniform(0, 3));
    rv.overall_expertise = static_cast<KnowledgeLevel>(uniform(0, 2));
    rv.comments_for_authors = random_text();
    rv.comments_for_pc = random_text();
    ParsedReview r = parse_review(render_filled(rv));
    CAPTURE(render_filled(rv));
    REQUIRE(r.ok());
    CHECK(*r.review == rv);
  }
}

TEST_CASE("parsing is total") {
  std::mt19937 rng(23);
  const std::string pieces[] = {"PAPER:", "REVIEWER:", "CLASSIFICATION:", "EXPERTISE:",
                                "---COMMENTS FOR AUTHORS---", "---COMMENTS FOR PC---",
                                "---END---", "\n", "\r\n", "> ", ">", " ", "A", "7", "-", ":",
                                "\xff", std::string(1, '\0'), "99999999999999999999"};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(std::size(pieces)) - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    int n = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < n; ++i) text += pieces[pick(rng)];
    ParsedReview r = parse_review(text);
    CHECK(r.ok() == r.review.has_value());
  }
}

}  // TEST_SUITE
