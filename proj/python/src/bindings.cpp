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

// Records cross the boundary as JSON text; confreview/__init__.py converts
// to and from Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confreview/assignment.hpp"
#include "confreview/error.hpp"
#include "confreview/json_io.hpp"
#include "confreview/overviews.hpp"
#include "confreview/registry.hpp"
#include "confreview/review_form.hpp"
#include "confreview/review_state.hpp"
#include "confreview/workflow.hpp"

namespace py = pybind11;
using namespace confreview;
using nlohmann::json;

namespace {

Classification classification_of(const std::string& s) {
  if (s.size() == 1) {
    if (auto c = classification_from_char(s[0])) return *c;
  }
  throw Error(ErrorKind::kValidation, "invalid classification '" + s + "'");
}

DistributionInput distribution_input_from(const std::string& text) {
  json j = json::parse(text);
  DistributionInput in;
  in.papers = j.at("papers").get<std::vector<PaperRecord>>();
  in.reviewers = j.at("reviewers").get<std::vector<ReviewerProfile>>();
  in.bids = j.value("bids", json::array()).get<std::vector<Bid>>();
  if (j.contains("config")) in.config = j["config"].get<Config>();
  return in;
}

class Conference {
 public:
  explicit Conference(const std::string& root, int kdf_iterations)
      : registry_(RegistryOptions{root, true, kdf_iterations, {}}), workflow_(registry_) {}

  std::uint64_t version() const { return registry_.version(); }

  void configure(const std::string& config, const std::string& topics) {
    std::optional<std::vector<Topic>> t;
    if (!topics.empty()) t = json::parse(topics).get<std::vector<Topic>>();
    workflow_.configure(me(), json::parse(config).get<Config>(), t);
  }

  std::string import_reviewers(const std::string& profiles) {
    auto list = json::parse(profiles).get<std::vector<ReviewerProfile>>();
    json out = json::array();
    for (const auto& c : workflow_.import_reviewers(me(), list)) out.push_back(c.login);
    return out.dump();
  }

  std::string submit_phase1(const std::string& metadata) {
    Phase1Result r = workflow_.submit_phase1(json::parse(metadata).get<PaperMetadata>());
    return json{{"id", r.id}, {"login", r.credentials.login}, {"warnings", r.warnings}}.dump();
  }

  std::string upload_paper(PaperId paper, const py::bytes& bytes, const std::string& filename) {
    return json(workflow_.upload_paper(me(), paper, std::string(bytes), filename)).dump();
  }

  std::string submit_bids(const std::string& reviewer, const std::string& selections) {
    std::vector<BidSelection> list;
    for (const auto& s : json::parse(selections)) {
      list.push_back({s.at("paper").get<PaperId>(), s.at("priority").get<BidPriority>()});
    }
    BidResult r = workflow_.submit_bids(me(), list, reviewer);
    json rejected = json::array();
    for (const auto& x : r.rejected) rejected.push_back({{"paper", x.paper}, {"reason", x.reason}});
    return json{{"effective", r.effective}, {"rejected", rejected}}.dump();
  }

  std::string declare_coi(const std::string& reviewer, PaperId paper) {
    return json(workflow_.declare_coi(me(), paper, reviewer)).dump();
  }

  std::string propose_distribution() const {
    return json(workflow_.propose_distribution(me())).dump();
  }

  void commit_distribution(const std::string& assignment) {
    workflow_.commit_distribution(me(), json::parse(assignment).get<Assignment>());
  }

  std::string submit_review(const std::string& reviewer, PaperId paper,
                            const std::string& classification, const std::string& expertise,
                            const std::string& for_authors, const std::string& for_pc) {
    ReviewInput in{classification_of(classification), json(expertise).get<KnowledgeLevel>(),
                   for_authors, for_pc};
    return json(workflow_.submit_review(me(), paper, in, reviewer)).dump();
  }

  std::string paper_state(PaperId paper, const std::optional<std::string>& viewer) const {
    Snapshot snap = registry_.snapshot();
    const PaperRecord* p = snap->find_paper(paper);
    if (!p) throw Error(ErrorKind::kNotFound, "unknown paper " + std::to_string(paper));
    std::vector<ReviewerId> assigned;
    if (snap->assignment) assigned = snap->assignment->reviewers_of(paper);
    return std::string(to_string(
        confreview::paper_state(*p, snap->reviews_of(paper), assigned, viewer)));
  }

  std::string record_decisions(const std::vector<PaperId>& accepted) {
    return json(workflow_.record_decisions(me(), {accepted.begin(), accepted.end()})).dump();
  }

  std::string generate_notifications() {
    return json(workflow_.generate_notifications(me())).dump();
  }

  std::string overview(const std::string& name) const {
    Snapshot snap = registry_.snapshot();
    if (name == "progress") return as_json(progress_overview(*snap)).dump();
    if (name == "all") return as_json(all_reviews_overview(*snap)).dump();
    if (name == "categories") return as_json(categories_overview(*snap)).dump();
    if (name == "champions") return as_json(champions_overview(*snap)).dump();
    if (name == "low-expertise") return as_json(low_expertise_overview(*snap)).dump();
    if (name == "abstracts") return as_json(topic_abstract_overviews(*snap)).dump();
    throw Error(ErrorKind::kNotFound, "unknown overview '" + name + "'");
  }

  std::optional<py::bytes> read_blob(const std::string& path) const {
    auto b = registry_.read_blob(path);
    if (!b) return std::nullopt;
    return py::bytes(*b);
  }

 private:
  static Credentials me() { return Workflow::local_maintainer(); }

  Registry registry_;
  Workflow workflow_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "confreview core: distribution, review states, review forms, store";

  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string message = e.what();
      for (const auto& d : e.details()) message += "\n  " + d;
      py::set_error(error_type, message.c_str());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("expertise_score",
        [](const std::string& reviewer, const std::string& paper) -> std::optional<double> {
          auto s = confreview::expertise_score(json::parse(reviewer).get<ReviewerProfile>(),
                                               json::parse(paper).get<PaperRecord>());
          if (!s) return std::nullopt;
          return s->value();
        },
        py::arg("reviewer_json"), py::arg("paper_json"));

  m.def("propose_distribution",
        [](const std::string& input) {
          return json(confreview::propose_distribution(distribution_input_from(input))).dump();
        },
        py::arg("input_json"));

  m.def("distribution_report",
        [](const std::string& assignment, const std::string& bids, bool text) {
          auto report = confreview::distribution_report(
              json::parse(assignment).get<Assignment>(),
              json::parse(bids).get<std::vector<Bid>>());
          return text ? as_text(report) : as_json(report).dump();
        },
        py::arg("assignment_json"), py::arg("bids_json"), py::arg("text") = false);

  m.def("classification_span",
        [](const std::string& classes) {
          std::vector<Classification> cs;
          for (char c : classes) cs.push_back(classification_of(std::string(1, c)));
          auto span = confreview::classification_span(cs);
          return std::string{to_char(span.high), to_char(span.low)};
        },
        py::arg("classifications"));

  m.def("span_state",
        [](const std::string& classes) {
          std::vector<Classification> cs;
          for (char c : classes) cs.push_back(classification_of(std::string(1, c)));
          return std::string(to_string(confreview::span_state(confreview::classification_span(cs))));
        },
        py::arg("classifications"));

  m.def("render_template",
        [](PaperId paper, const std::string& reviewer) {
          return confreview::render_template(paper, reviewer);
        },
        py::arg("paper"), py::arg("reviewer"));

  m.def("render_filled",
        [](const std::string& review) {
          return confreview::render_filled(json::parse(review).get<Review>());
        },
        py::arg("review_json"));

  m.def("parse_review",
        [](const std::string& text) {
          ParsedReview r = confreview::parse_review(text);
          std::optional<std::string> review;
          if (r.review) review = json(*r.review).dump();
          return py::make_tuple(review, r.messages());
        },
        py::arg("text"));

  py::class_<Conference>(m, "Conference")
      .def(py::init<const std::string&, int>(), py::arg("root") = "",
           py::arg("kdf_iterations") = 100000)
      .def_property_readonly("version", &Conference::version)
      .def("configure", &Conference::configure, py::arg("config_json"),
           py::arg("topics_json") = "")
      .def("import_reviewers", &Conference::import_reviewers, py::arg("profiles_json"))
      .def("submit_phase1", &Conference::submit_phase1, py::arg("metadata_json"))
      .def("upload_paper", &Conference::upload_paper, py::arg("paper"), py::arg("data"),
           py::arg("filename"))
      .def("submit_bids", &Conference::submit_bids, py::arg("reviewer"),
           py::arg("selections_json"))
      .def("declare_coi", &Conference::declare_coi, py::arg("reviewer"), py::arg("paper"))
      .def("propose_distribution", &Conference::propose_distribution)
      .def("commit_distribution", &Conference::commit_distribution, py::arg("assignment_json"))
      .def("submit_review", &Conference::submit_review, py::arg("reviewer"), py::arg("paper"),
           py::arg("classification"), py::arg("expertise"), py::arg("comments_for_authors") = "",
           py::arg("comments_for_pc") = "")
      .def("paper_state", &Conference::paper_state, py::arg("paper"),
           py::arg("viewer") = std::nullopt)
      .def("record_decisions", &Conference::record_decisions, py::arg("accepted"))
      .def("generate_notifications", &Conference::generate_notifications)
      .def("overview", &Conference::overview, py::arg("name"))
      .def("read_blob", &Conference::read_blob, py::arg("path"));
}
