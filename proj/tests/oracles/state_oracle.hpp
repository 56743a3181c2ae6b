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

// Table-driven review color: a literal (best, worst) -> color table and the
// viewer precedence rules, over classification letters.

#ifndef CONFREVIEW_TESTS_STATE_ORACLE_HPP_
#define CONFREVIEW_TESTS_STATE_ORACLE_HPP_

#include <string>

namespace confreview::oracle {

enum class Viewer { kChair, kNotSubmitted, kSoleSubmitter, kOneOfMany };

inline std::string span_color(char best, char worst) {
  struct Row {
    const char* span;
    const char* color;
  };
  static const Row kTable[] = {
      {"AA", "lightgreen"}, {"AB", "lightgreen"}, {"BB", "lightgreen"},
      {"BC", "orange"},
      {"CC", "green"},      {"CD", "green"},      {"DD", "green"},
      {"AC", "lightyellow"},
      {"BD", "yellow"},
      {"AD", "red"},
  };
  const std::string key{best, worst};
  for (const Row& r : kTable) {
    if (key == r.span) return r.color;
  }
  return "?";
}

// `letters` holds every submitted classification, the viewer's included.
inline std::string expected_color(const std::string& letters, Viewer viewer, bool accepted) {
  if (accepted) return "gold";
  if (viewer == Viewer::kNotSubmitted) return "white";
  if (viewer == Viewer::kSoleSubmitter && letters.size() == 1) return "pink";
  if (viewer == Viewer::kChair && letters.empty()) return "grey";
  char best = 'D', worst = 'A';
  for (char c : letters) {
    if (c < best) best = c;
    if (c > worst) worst = c;
  }
  return span_color(best, worst);
}

}  // namespace confreview::oracle

#endif  // CONFREVIEW_TESTS_STATE_ORACLE_HPP_
