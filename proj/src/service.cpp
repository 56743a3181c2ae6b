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

#include "confreview/service.hpp"

#include <openssl/evp.h>

#include <iostream>
#include <map>
#include <mutex>

#include "httplib.h"

#include "confreview/error.hpp"
#include "confreview/json_io.hpp"
#include "confreview/overviews.hpp"
#include "confreview/proceedings.hpp"
#include "confreview/review_form.hpp"

namespace confreview {

using nlohmann::json;

namespace {

// Set by the pre-routing handler; httplib routes a request on the thread
// that accepted it.
thread_local std::optional<Credentials> t_credentials;

const Credentials& caller() {
  if (!t_credentials) throw Error(ErrorKind::kAuth, "authentication required");
  return *t_credentials;
}

std::optional<std::pair<std::string, std::string>> decode_basic(const std::string& header) {
  constexpr std::string_view kPrefix = "Basic ";
  if (header.size() <= kPrefix.size() || header.compare(0, kPrefix.size(), kPrefix) != 0) {
    return std::nullopt;
  }
  std::string encoded = header.substr(kPrefix.size());
  while (!encoded.empty() && (encoded.back() == ' ' || encoded.back() == '\r')) encoded.pop_back();
  if (encoded.empty() || encoded.size() % 4 != 0) return std::nullopt;
  std::string decoded(encoded.size() / 4 * 3, '\0');
  int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(decoded.data()),
                          reinterpret_cast<const unsigned char*>(encoded.data()),
                          static_cast<int>(encoded.size()));
  if (n < 0) return std::nullopt;
  std::size_t len = static_cast<std::size_t>(n);
  for (auto it = encoded.rbegin(); it != encoded.rend() && *it == '='; ++it) --len;
  decoded.resize(len);
  auto colon = decoded.find(':');
  if (colon == std::string::npos) return std::nullopt;
  return std::make_pair(decoded.substr(0, colon), decoded.substr(colon + 1));
}

PaperId path_id(const httplib::Request& req, std::size_t index = 1) {
  try {
    return std::stoi(req.matches[index].str());
  } catch (const std::exception&) {
    throw Error(ErrorKind::kNotFound, "unknown paper " + req.matches[index].str());
  }
}

json body_json(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message,
                 const std::vector<std::string>& details) {
  reply(res, status, {{"error", message}, {"details", details}});
}

bool wants_text(const httplib::Request& req) {
  return req.has_param("format") && req.get_param_value("format") == "text";
}

template <typename View>
void reply_view(const httplib::Request& req, httplib::Response& res, const View& view) {
  if (wants_text(req)) {
    res.status = 200;
    res.set_content(as_text(view), "text/plain; charset=utf-8");
  } else {
    reply(res, 200, as_json(view));
  }
}

json dashboard_json(const Dashboard& d) {
  json papers = json::array();
  for (const auto& e : d.papers) {
    json links = json::object();
    for (const auto& [label, path] : e.links) links[label] = path;
    papers.push_back({{"paper", e.paper},
                      {"title", e.title},
                      {"state", to_string(e.state)},
                      {"own_review_submitted", e.own_review_submitted},
                      {"own_review_updated_at",
                       e.own_review_updated_at ? json(*e.own_review_updated_at) : json(nullptr)},
                      {"links", links}});
  }
  return {{"reviewer", d.reviewer},
          {"poll_interval_seconds", d.poll_interval_seconds},
          {"papers", papers}};
}

json outbox_json(const OutboxMessage& m) {
  json j = m;
  return j;
}

}  // namespace

std::string dashboard_etag(const Dashboard& dashboard) {
  return "\"" + sha256_hex(dashboard_json(dashboard).dump()) + "\"";
}

struct Service::Impl {
  Workflow& workflow;
  httplib::Server server;
  std::mutex auth_mutex;
  // login -> (stored hash, sha256 of the accepted password)
  std::map<std::string, std::pair<std::string, std::string>> auth_cache;

  explicit Impl(Workflow& wf) : workflow(wf) { install(); }

  Registry& registry() { return workflow.registry(); }

  std::optional<Credentials> authenticate(const std::string& login, const std::string& password) {
    Snapshot snap = registry().snapshot();
    auto it = snap->credentials.find(login);
    const std::string digest = sha256_hex(login + '\0' + password);
    if (it != snap->credentials.end()) {
      std::lock_guard lock(auth_mutex);
      auto cached = auth_cache.find(login);
      if (cached != auth_cache.end() && cached->second.first == it->second.password_hash &&
          cached->second.second == digest) {
        return Credentials{login, it->second.role, it->second.subject};
      }
    }
    try {
      Credentials creds = registry().authenticate(login, password);
      Snapshot now = registry().snapshot();
      if (auto rec = now->credentials.find(login); rec != now->credentials.end()) {
        std::lock_guard lock(auth_mutex);
        auth_cache[login] = {rec->second.password_hash, digest};
      }
      return creds;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const Error& e) {
        reply_error(res, http_status(e.kind()), e.what(), e.details());
      } catch (const json::exception& e) {
        reply_error(res, 422, "malformed request body", {e.what()});
      } catch (const std::exception& e) {
        reply_error(res, 500, "internal error", {e.what()});
      }
    };
  }

  void get(const std::string& pattern, Handler h) { server.Get(pattern, guarded(std::move(h))); }
  void post(const std::string& pattern, Handler h) { server.Post(pattern, guarded(std::move(h))); }
  void put(const std::string& pattern, Handler h) { server.Put(pattern, guarded(std::move(h))); }

  void install() {
    server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      t_credentials.reset();
      const bool public_route = req.method == "POST" && req.path == "/papers";
      if (req.has_header("Authorization")) {
        auto pair = decode_basic(req.get_header_value("Authorization"));
        std::optional<Credentials> creds;
        if (pair) creds = authenticate(pair->first, pair->second);
        if (!creds) {
          res.set_header("WWW-Authenticate", "Basic realm=\"confreview\"");
          reply_error(res, 401, "invalid login or password", {});
          return httplib::Server::HandlerResponse::Handled;
        }
        t_credentials = std::move(creds);
      } else if (!public_route) {
        res.set_header("WWW-Authenticate", "Basic realm=\"confreview\"");
        reply_error(res, 401, "authentication required", {});
        return httplib::Server::HandlerResponse::Handled;
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        reply_error(res, res.status, res.status == 404 ? "no such endpoint" : "request failed", {});
      }
    });

    install_papers();
    install_reviewing();
    install_chair();
  }

  void install_papers() {
    post("/papers", [this](const httplib::Request& req, httplib::Response& res) {
      PaperMetadata meta = body_json(req).get<PaperMetadata>();
      Phase1Result r = workflow.submit_phase1(meta);
      reply(res, 201, {{"id", r.id}, {"login", r.credentials.login}, {"warnings", r.warnings}});
    });
    get(R"(/papers/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, 200, json(workflow.paper(caller(), path_id(req))));
    });
    put(R"(/papers/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      PaperMetadata meta = body_json(req).get<PaperMetadata>();
      reply(res, 200, json(workflow.update_phase1(caller(), path_id(req), meta)));
    });

    auto upload = [](const httplib::Request& req) {
      std::pair<std::string, std::string> out;  // bytes, filename
      if (req.is_multipart_form_data()) {
        if (!req.has_file("file")) throw Error(ErrorKind::kValidation, "missing form field 'file'");
        auto f = req.get_file_value("file");
        out = {f.content, f.filename.empty() ? "paper.bin" : f.filename};
      } else {
        out = {req.body, req.has_param("filename") ? req.get_param_value("filename") : "paper.pdf"};
      }
      return out;
    };
    put(R"(/papers/(\d+)/file)", [this, upload](const httplib::Request& req, httplib::Response& res) {
      auto [bytes, name] = upload(req);
      reply(res, 200, json(workflow.upload_paper(caller(), path_id(req), bytes, name)));
    });
    put(R"(/papers/(\d+)/camera-ready)",
        [this, upload](const httplib::Request& req, httplib::Response& res) {
          auto [bytes, name] = upload(req);
          std::optional<int> pages;
          std::string raw;
          if (req.is_multipart_form_data() && req.has_file("page_count")) {
            raw = req.get_file_value("page_count").content;
          } else if (req.has_param("page_count")) {
            raw = req.get_param_value("page_count");
          }
          if (!raw.empty()) {
            try {
              pages = std::stoi(raw);
            } catch (const std::exception&) {
              throw Error(ErrorKind::kValidation, "page_count must be an integer");
            }
          }
          reply(res, 200,
                json(workflow.upload_camera_ready(caller(), path_id(req), bytes, name, pages)));
        });
    get(R"(/papers/(\d+)/file)", [this](const httplib::Request& req, httplib::Response& res) {
      bool camera = req.has_param("camera_ready") && req.get_param_value("camera_ready") != "0";
      std::string bytes = workflow.read_paper_file(caller(), path_id(req), camera);
      res.status = 200;
      res.set_content(bytes, "application/octet-stream");
    });

    get("/topics", [this](const httplib::Request&, httplib::Response& res) {
      caller();
      reply(res, 200, json(registry().snapshot()->topics));
    });
    get(R"(/topics/(\d+)/abstracts)", [this](const httplib::Request& req, httplib::Response& res) {
      Snapshot snap = registry().snapshot();
      require(*snap, caller(), Action::kReadAbstracts, {});
      reply_view(req, res, topic_listing(*snap, path_id(req)));
    });
    get("/abstracts", [this](const httplib::Request& req, httplib::Response& res) {
      Snapshot snap = registry().snapshot();
      require(*snap, caller(), Action::kReadAbstracts, {});
      reply_view(req, res, topic_abstract_overviews(*snap));
    });
  }

  void install_reviewing() {
    post("/bids", [this](const httplib::Request& req, httplib::Response& res) {
      json body = body_json(req);
      std::vector<BidSelection> selections;
      for (const auto& item : body.at("bids")) {
        selections.push_back({item.at("paper").get<PaperId>(), item.at("priority").get<BidPriority>()});
      }
      std::optional<ReviewerId> who;
      if (body.contains("reviewer")) who = body["reviewer"].get<ReviewerId>();
      BidResult r = workflow.submit_bids(caller(), selections, who);
      json rejected = json::array();
      for (const auto& x : r.rejected) rejected.push_back({{"paper", x.paper}, {"reason", x.reason}});
      reply(res, 200, {{"effective", r.effective}, {"rejected", rejected}});
    });
    post("/coi", [this](const httplib::Request& req, httplib::Response& res) {
      json body = body_json(req);
      std::optional<ReviewerId> who;
      if (body.contains("reviewer")) who = body["reviewer"].get<ReviewerId>();
      reply(res, 200, json(workflow.declare_coi(caller(), body.at("paper").get<PaperId>(), who)));
    });
    put(R"(/reviewers/([A-Za-z0-9._-]+)/expertise)",
        [this](const httplib::Request& req, httplib::Response& res) {
          json body = body_json(req);
          std::map<TopicId, KnowledgeLevel> expertise;
          std::map<TopicId, Willingness> willingness;
          auto topic_key = [](const std::string& k) {
            try {
              return std::stoi(k);
            } catch (const std::exception&) {
              throw Error(ErrorKind::kValidation, "invalid topic id '" + k + "'");
            }
          };
          for (const auto& [k, v] : body.at("expertise").items()) {
            expertise[topic_key(k)] = v.get<KnowledgeLevel>();
          }
          if (body.contains("willingness")) {
            for (const auto& [k, v] : body["willingness"].items()) {
              willingness[topic_key(k)] = v.get<Willingness>();
            }
          }
          reply(res, 200,
                json(workflow.update_expertise(caller(), req.matches[1].str(), expertise,
                                               willingness)));
        });
    get(R"(/reviewers/([A-Za-z0-9._-]+)/dashboard)",
        [this](const httplib::Request& req, httplib::Response& res) {
          Dashboard d = workflow.dashboard(caller(), req.matches[1].str());
          const std::string etag = dashboard_etag(d);
          res.set_header("ETag", etag);
          res.set_header("Cache-Control", "no-cache");
          res.set_header("X-Poll-Interval", std::to_string(d.poll_interval_seconds));
          if (req.has_header("If-None-Match") && req.get_header_value("If-None-Match") == etag) {
            res.status = 304;
            return;
          }
          reply(res, 200, dashboard_json(d));
        });

    post("/reviews", [this](const httplib::Request& req, httplib::Response& res) {
      json body = body_json(req);
      ReviewInput in;
      in.classification = body.at("classification").get<Classification>();
      in.overall_expertise = body.at("overall_expertise").get<KnowledgeLevel>();
      in.comments_for_authors = body.value("comments_for_authors", "");
      in.comments_for_pc = body.value("comments_for_pc", "");
      std::optional<ReviewerId> who;
      if (body.contains("reviewer")) who = body["reviewer"].get<ReviewerId>();
      Review r = workflow.submit_review(caller(), body.at("paper").get<PaperId>(), in, who);
      reply(res, 200, json(r));
    });
    post("/reviews/parse", [this](const httplib::Request& req, httplib::Response& res) {
      const Credentials& creds = caller();
      std::string text = req.body;
      bool submit = req.has_param("submit") && req.get_param_value("submit") != "0";
      if (req.get_header_value("Content-Type").starts_with("application/json")) {
        json body = body_json(req);
        text = body.at("text").get<std::string>();
        submit = submit || body.value("submit", false);
      }
      Snapshot snap = registry().snapshot();
      ParsedReview parsed = parse_review(text, snap.get());
      if (!parsed.ok()) {
        reply_error(res, 422, "invalid review form", parsed.messages());
        return;
      }
      const Review& r = *parsed.review;
      if (!submit) {
        reply(res, 200, {{"review", r}, {"submitted", false}});
        return;
      }
      ReviewInput in{r.classification, r.overall_expertise, r.comments_for_authors,
                     r.comments_for_pc};
      Review stored = workflow.submit_review(creds, r.paper, in, r.reviewer);
      reply(res, 200, {{"review", stored}, {"submitted", true}});
    });
    get(R"(/papers/(\d+)/reviews)", [this](const httplib::Request& req, httplib::Response& res) {
      const Credentials& creds = caller();
      json out = json::array();
      for (const auto& r : workflow.visible_reviews(creds, path_id(req))) {
        out.push_back(review_for_display(r, creds.role != Role::kAuthorContact));
      }
      reply(res, 200, {{"reviews", out}});
    });
    get(R"(/papers/(\d+)/review-form)", [this](const httplib::Request& req, httplib::Response& res) {
      const Credentials& creds = caller();
      const PaperId paper = path_id(req);
      Snapshot snap = registry().snapshot();
      ReviewerId who = creds.subject;
      if (creds.role != Role::kReviewer) {
        if (!req.has_param("reviewer")) throw Error(ErrorKind::kValidation, "reviewer id required");
        who = req.get_param_value("reviewer");
      }
      require(*snap, creds, Action::kReadReviewForm, {paper, who});
      res.status = 200;
      res.set_content(render_template(*snap, paper, who), "text/plain; charset=utf-8");
    });
    post(R"(/papers/(\d+)/messages)", [this](const httplib::Request& req, httplib::Response& res) {
      json body = body_json(req);
      OutboxMessage m =
          workflow.send_conflict_message(caller(), path_id(req), body.at("text").get<std::string>());
      reply(res, 201, outbox_json(m));
    });
    post(R"(/papers/(\d+)/volunteer)", [this](const httplib::Request& req, httplib::Response& res) {
      const PaperId paper = path_id(req);
      Assignment a = workflow.volunteer_for_paper(caller(), paper);
      reply(res, 200, {{"paper", paper}, {"reviewers", a.reviewers_of(paper)}});
    });
  }

  void install_chair() {
    get(R"(/overviews/(progress|all|categories|champions|low-expertise))",
        [this](const httplib::Request& req, httplib::Response& res) {
          const Credentials& creds = caller();
          Snapshot snap = registry().snapshot();
          const std::string which = req.matches[1].str();
          require(*snap, creds, which == "progress" ? Action::kReadProgress : Action::kReadOverviews,
                  {});
          if (which == "progress") {
            reply_view(req, res, progress_overview(*snap));
          } else if (which == "all") {
            reply_view(req, res, all_reviews_overview(*snap));
          } else if (which == "categories") {
            reply_view(req, res, categories_overview(*snap));
          } else if (which == "champions") {
            reply_view(req, res, champions_overview(*snap));
          } else {
            reply_view(req, res, low_expertise_overview(*snap));
          }
        });

    auto report = [this](const Assignment& a) {
      Snapshot snap = registry().snapshot();
      DistributionInput input = workflow.distribution_input(*snap);
      json out = as_json(distribution_report(a, input.bids));
      out["assignment"] = a;
      return out;
    };
    get("/distribution", [this, report](const httplib::Request& req, httplib::Response& res) {
      Assignment a = workflow.propose_distribution(caller());
      if (wants_text(req)) {
        Snapshot snap = registry().snapshot();
        res.status = 200;
        res.set_content(as_text(distribution_report(a, workflow.distribution_input(*snap).bids)),
                        "text/plain; charset=utf-8");
        return;
      }
      reply(res, 200, report(a));
    });
    post("/distribution", [this, report](const httplib::Request&, httplib::Response& res) {
      const Credentials& creds = caller();
      Assignment a = workflow.propose_distribution(creds);
      workflow.commit_distribution(creds, a);
      reply(res, 201, report(a));
    });

    post("/decisions", [this](const httplib::Request& req, httplib::Response& res) {
      json body = body_json(req);
      auto ids = body.at("accepted").get<std::vector<PaperId>>();
      DecisionRecord d = workflow.record_decisions(caller(), {ids.begin(), ids.end()});
      reply(res, 200, json(d));
    });
    post("/notifications", [this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      for (const auto& m : workflow.generate_notifications(caller())) out.push_back(outbox_json(m));
      reply(res, 201, {{"messages", out}});
    });
    post("/proceedings", [this](const httplib::Request& req, httplib::Response& res) {
      const Credentials& creds = caller();
      std::string text = req.body;
      if (req.get_header_value("Content-Type").starts_with("application/json")) {
        text = body_json(req).at("sessions_template").get<std::string>();
      }
      Snapshot snap = registry().snapshot();
      require(*snap, creds, Action::kBuildProceedings, {});
      SessionPlan plan = parse_sessions_template(text, *snap);
      Toc toc = generate_toc(plan, *snap);
      AuthorIndex index = generate_author_index(toc, *snap);
      reply(res, 200,
            {{"toc", as_json(toc)},
             {"author_index", as_json(index)},
             {"toc_text", as_text(toc)},
             {"author_index_text", as_text(index)}});
    });
  }
};

Service::Service(Workflow& workflow) : impl_(std::make_unique<Impl>(workflow)) {}
Service::~Service() = default;

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int Service::bind_to_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}
bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }
void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }
void Service::stop() { impl_->server.stop(); }

}  // namespace confreview
