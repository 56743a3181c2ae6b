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

#ifndef CONFREVIEW_ERROR_HPP_
#define CONFREVIEW_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace confreview {

// Every failure raised by the library carries one of these kinds. The HTTP
// layer maps them one-to-one onto status codes.
enum class ErrorKind {
  kAuth,          // 401
  kForbidden,     // 403
  kNotFound,      // 404
  kLifecycle,     // 409
  kValidation,    // 422
  kPrecondition,  // 422, caller broke a documented precondition
  kStorage,       // 500
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), kind_(kind), details_(std::move(details)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> details_;
};

inline int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kAuth: return 401;
    case ErrorKind::kForbidden: return 403;
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kLifecycle: return 409;
    case ErrorKind::kValidation:
    case ErrorKind::kPrecondition: return 422;
    case ErrorKind::kStorage: return 500;
  }
  return 500;
}

}  // namespace confreview

#endif  // CONFREVIEW_ERROR_HPP_
