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

// JSON over HTTP/1.1 with Basic authentication. Every route except
// POST /papers requires credentials; they are checked once, before routing.
//
//   POST /papers                      phase 1 submission (public)
//   GET  /papers/{id}                 PUT /papers/{id}
//   PUT  /papers/{id}/file            GET /papers/{id}/file[?camera_ready=1]
//   PUT  /papers/{id}/camera-ready    (page_count as form field or query)
//   GET  /papers/{id}/reviews         GET /papers/{id}/review-form
//   POST /papers/{id}/messages        POST /papers/{id}/volunteer
//   GET  /topics                      GET /topics/{id}/abstracts
//   GET  /abstracts
//   POST /bids                        POST /coi
//   PUT  /reviewers/{id}/expertise    GET /reviewers/{id}/dashboard (ETag)
//   POST /reviews                     POST /reviews/parse[?submit=1]
//   GET  /overviews/{progress|all|categories|champions|low-expertise}[?format=text]
//   GET  /distribution                POST /distribution
//   POST /decisions                   POST /notifications
//   POST /proceedings
//
// Errors are {"error": message, "details": [..]} with status 401, 403, 404,
// 409, 422 or 500.

#ifndef CONFREVIEW_SERVICE_HPP_
#define CONFREVIEW_SERVICE_HPP_

#include <memory>
#include <string>

#include "confreview/workflow.hpp"

namespace confreview {

class Service {
 public:
  explicit Service(Workflow& workflow);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Returns the bound port, or -1.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Dashboard content hash used as its ETag (quoted).
std::string dashboard_etag(const Dashboard& dashboard);

}  // namespace confreview

#endif  // CONFREVIEW_SERVICE_HPP_
