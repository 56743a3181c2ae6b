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

// Conflict detection. The state of a paper's reviews is derived from the
// best and worst classification it received:
//
//   white        viewer has not yet submitted a review
//   pink         only the viewer's review has been submitted
//   lightgreen   no conflict, A and B only
//   orange       no conflict, B and C only
//   green        no conflict, C and D only
//   lightyellow  conflict, both A and C
//   yellow       conflict, both B and D
//   red          serious conflict, both A and D
//   gold         accepted paper
//   grey         chair view of a paper without any review

#ifndef CONFREVIEW_REVIEW_STATE_HPP_
#define CONFREVIEW_REVIEW_STATE_HPP_

#include <optional>
#include <span>
#include <utility>

#include "confreview/model.hpp"

namespace confreview {

struct ClassificationSpan {
  Classification high;  // best present
  Classification low;   // worst present

  bool operator==(const ClassificationSpan&) const = default;
};

// Throws Error(kPrecondition) on an empty input.
ClassificationSpan classification_span(std::span<const Classification> classifications);
ClassificationSpan classification_span(std::span<const Review> reviews);

// Color of a (high, low) span, ignoring viewer and acceptance.
ReviewState span_state(const ClassificationSpan& span);

// Computes the state of `paper` as seen by `viewer` (a reviewer) or by the
// chair when `viewer` is empty. Only reviews of `paper` are considered.
// Precedence: gold, white, pink, grey, then the span color.
// Throws Error(kForbidden, "not a reviewer of this paper") when the viewer is
// not among `assigned`.
ReviewState paper_state(const PaperRecord& paper, std::span<const Review> reviews,
                        std::span<const ReviewerId> assigned,
                        const std::optional<ReviewerId>& viewer, bool accepted);

// Same, taking acceptance from the paper's status.
ReviewState paper_state(const PaperRecord& paper, std::span<const Review> reviews,
                        std::span<const ReviewerId> assigned,
                        const std::optional<ReviewerId>& viewer);

bool is_conflict(ReviewState s);

}  // namespace confreview

#endif  // CONFREVIEW_REVIEW_STATE_HPP_
