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

// Off-line review form.
//
//   PAPER: <id>
//   REVIEWER: <handle>
//   CLASSIFICATION: <A|B|C|D>
//   EXPERTISE: <X|Y|Z>
//   ---COMMENTS FOR AUTHORS---
//   free text
//   ---COMMENTS FOR PC---
//   free text
//   ---END---
//
// Comment lines that would start with "---" after leading whitespace are
// written with one extra leading space, which the parser removes again.
// Forms returned by mail may be quoted with "> "; CRLF line ends are fine.

#ifndef CONFREVIEW_REVIEW_FORM_HPP_
#define CONFREVIEW_REVIEW_FORM_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confreview/model.hpp"
#include "confreview/store.hpp"

namespace confreview {

inline constexpr std::string_view kAuthorsMarker = "---COMMENTS FOR AUTHORS---";
inline constexpr std::string_view kPcMarker = "---COMMENTS FOR PC---";
inline constexpr std::string_view kEndMarker = "---END---";

struct FormError {
  int line = 0;  // 1-based
  std::string message;

  std::string to_string() const;  // "<message> at line <n>"
};

struct ParsedReview {
  std::optional<Review> review;  // set iff errors is empty
  std::vector<FormError> errors;

  bool ok() const { return errors.empty(); }
  std::vector<std::string> messages() const;
};

std::string render_template(PaperId paper, const ReviewerId& reviewer);
// Throws Error(kNotFound) for ids missing from the store.
std::string render_template(const StoreData& data, PaperId paper, const ReviewerId& reviewer);
std::string render_filled(const Review& review);

// With a store, paper and reviewer ids are also checked for existence.
// Timestamps of the returned review are zero.
ParsedReview parse_review(std::string_view text, const StoreData* known = nullptr);

}  // namespace confreview

#endif  // CONFREVIEW_REVIEW_FORM_HPP_
