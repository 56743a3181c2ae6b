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

#include "confreview/review_state.hpp"

#include <algorithm>
#include <vector>

#include "confreview/error.hpp"

namespace confreview {

ClassificationSpan classification_span(std::span<const Classification> classifications) {
  if (classifications.empty()) {
    throw Error(ErrorKind::kPrecondition, "classification span of an empty review set");
  }
  ClassificationSpan span{classifications.front(), classifications.front()};
  for (Classification c : classifications) {
    if (better_than(c, span.high)) span.high = c;
    if (better_than(span.low, c)) span.low = c;
  }
  return span;
}

ClassificationSpan classification_span(std::span<const Review> reviews) {
  std::vector<Classification> cs;
  cs.reserve(reviews.size());
  for (const auto& r : reviews) cs.push_back(r.classification);
  return classification_span(cs);
}

ReviewState span_state(const ClassificationSpan& span) {
  using C = Classification;
  // Homogeneous spans fold onto their side: AA, BB -> lightgreen; CC, DD -> green.
  switch (span.high) {
    case C::kA:
      switch (span.low) {
        case C::kA:
        case C::kB: return ReviewState::kLightGreen;
        case C::kC: return ReviewState::kLightYellow;
        case C::kD: return ReviewState::kRed;
      }
      break;
    case C::kB:
      switch (span.low) {
        case C::kB: return ReviewState::kLightGreen;
        case C::kC: return ReviewState::kOrange;
        case C::kD: return ReviewState::kYellow;
        case C::kA: break;
      }
      break;
    case C::kC:
    case C::kD:
      return ReviewState::kGreen;
  }
  throw Error(ErrorKind::kPrecondition, "malformed classification span");
}

ReviewState paper_state(const PaperRecord& paper, std::span<const Review> reviews,
                        std::span<const ReviewerId> assigned,
                        const std::optional<ReviewerId>& viewer, bool accepted) {
  if (viewer && std::find(assigned.begin(), assigned.end(), *viewer) == assigned.end()) {
    throw Error(ErrorKind::kForbidden, "not a reviewer of this paper");
  }
  if (accepted) return ReviewState::kGold;

  std::vector<Classification> cs;
  bool viewer_submitted = false;
  for (const auto& r : reviews) {
    if (r.paper != paper.id) continue;
    cs.push_back(r.classification);
    if (viewer && r.reviewer == *viewer) viewer_submitted = true;
  }

  if (viewer) {
    if (!viewer_submitted) return ReviewState::kWhite;
    if (cs.size() == 1) return ReviewState::kPink;
  } else if (cs.empty()) {
    return ReviewState::kGrey;
  }
  return span_state(classification_span(cs));
}

ReviewState paper_state(const PaperRecord& paper, std::span<const Review> reviews,
                        std::span<const ReviewerId> assigned,
                        const std::optional<ReviewerId>& viewer) {
  return paper_state(paper, reviews, assigned, viewer, paper.accepted());
}

bool is_conflict(ReviewState s) {
  return s == ReviewState::kLightYellow || s == ReviewState::kYellow ||
         s == ReviewState::kRed;
}

}  // namespace confreview
