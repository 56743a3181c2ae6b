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

// Maintainer command line. Operates directly on a store directory.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "confreview/config_file.hpp"
#include "confreview/error.hpp"
#include "confreview/json_io.hpp"
#include "confreview/overviews.hpp"
#include "confreview/proceedings.hpp"
#include "confreview/registry.hpp"
#include "confreview/review_form.hpp"
#include "confreview/service.hpp"
#include "confreview/workflow.hpp"

namespace fs = std::filesystem;
using namespace confreview;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kNotFound, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorKind::kStorage, "cannot write " + path.string());
}

void write_new_file(const fs::path& path, const std::string& content, bool force) {
  if (fs::exists(path) && !force) {
    std::cout << "kept existing " << path.string() << "\n";
    return;
  }
  write_file(path, content);
  std::cout << "wrote " << path.string() << "\n";
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"confreview: conference review management"};
  app.require_subcommand(1);

  std::string store = "store";
  if (const char* env = std::getenv("CONFREVIEW_STORE")) store = env;
  app.add_option("--store", store, "store directory (env CONFREVIEW_STORE)");
  bool no_fsync = false;
  app.add_flag("--no-fsync", no_fsync, "skip fsync on commit");

  // init
  auto* init = app.add_subcommand("init", "create a store and write editable templates");
  std::string template_dir = ".";
  bool force = false;
  init->add_option("--templates", template_dir, "directory for the template files");
  init->add_flag("--force", force, "overwrite existing templates");

  // configure
  auto* configure = app.add_subcommand("configure", "load the config and topics files");
  std::string config_file = "conference.conf";
  std::string topics_file;
  configure->add_option("--config", config_file, "key = value configuration file");
  configure->add_option("--topics", topics_file, "topics file ('1. name' per line)");

  // add-account
  auto* add_account = app.add_subcommand("add-account", "create a chair or maintainer login");
  std::string account_login, account_role = "chair";
  add_account->add_option("login", account_login)->required();
  add_account->add_option("--role", account_role)->check(CLI::IsMember({"chair", "maintainer"}));

  // import-reviewers
  auto* import = app.add_subcommand("import-reviewers", "add or update reviewers from a roster");
  std::string roster_file;
  import->add_option("file", roster_file)->required();

  // distribute
  auto* distribute = app.add_subcommand("distribute", "propose the paper distribution");
  bool commit = false, as_json_output = false;
  distribute->add_flag("--commit", commit, "store the proposed distribution");
  distribute->add_flag("--json", as_json_output, "print the report as JSON");

  // overviews
  auto* overviews = app.add_subcommand("overviews", "write the monitoring overviews");
  std::string overview_dir = "overviews";
  overviews->add_option("--out", overview_dir, "output directory");

  // parse-review
  auto* parse = app.add_subcommand("parse-review", "check an off-line review form");
  std::string review_file;
  bool submit_review = false;
  parse->add_option("file", review_file)->required();
  parse->add_flag("--submit", submit_review, "store the review when the form is valid");

  // review-form
  auto* form = app.add_subcommand("review-form", "print an empty review form");
  int form_paper = 0;
  std::string form_reviewer;
  form->add_option("paper", form_paper)->required();
  form->add_option("reviewer", form_reviewer)->required();

  // decide
  auto* decide = app.add_subcommand("decide", "record the accepted papers; all others are rejected");
  std::vector<int> accepted;
  decide->add_option("--accept", accepted, "accepted paper ids")->delimiter(',');

  // notify
  auto* notify = app.add_subcommand("notify", "queue acceptance and rejection notifications");

  // proceedings
  auto* proceedings = app.add_subcommand("proceedings", "build table of contents and author index");
  std::string sessions_file, proceedings_dir;
  proceedings->add_option("sessions", sessions_file)->required();
  proceedings->add_option("--out", proceedings_dir, "write toc and index files here");

  // serve
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  // status
  auto* status = app.add_subcommand("status", "summarize the store");

  CLI11_PARSE(app, argc, argv);

  try {
    RegistryOptions options;
    options.root = store;
    options.durable = !no_fsync;
    Registry registry(options);
    Workflow workflow(registry);
    const Credentials me = Workflow::local_maintainer();

    if (*init) {
      Snapshot snap = registry.snapshot();
      fs::path dir(template_dir);
      std::vector<Topic> topics = snap->topics;
      if (topics.empty()) topics = {{1, "First topic"}, {2, "Second topic"}};
      write_new_file(dir / "conference.conf", format_config_text(snap->config), force);
      write_new_file(dir / "topics.txt", format_topics_text(topics), force);
      ReviewerProfile example;
      example.id = "jdoe";
      example.name = "Jane Doe";
      example.email = "jdoe@example.org";
      for (const auto& t : topics) example.expertise[t.id] = KnowledgeLevel::kY;
      std::vector<ReviewerProfile> roster = snap->reviewer_list();
      if (roster.empty()) roster.push_back(example);
      write_new_file(dir / "reviewers.txt", format_roster_text(roster, topics), force);
      std::cout << "store " << store << " at version " << registry.version() << "\n";
    } else if (*configure) {
      Config config = parse_config_text(read_file(config_file));
      std::optional<std::vector<Topic>> topics;
      if (!topics_file.empty()) topics = parse_topics_text(read_file(topics_file));
      workflow.configure(me, config, topics);
      std::cout << "configured; store version " << registry.version() << "\n";
    } else if (*add_account) {
      auto creds = workflow.create_account(me, account_login, *role_from_string(account_role));
      std::cout << "login: " << creds.login << "\npassword: " << creds.password << "\n";
    } else if (*import) {
      Snapshot snap = registry.snapshot();
      auto profiles = parse_roster_text(read_file(roster_file), snap->topics);
      auto issued = workflow.import_reviewers(me, profiles);
      std::cout << profiles.size() << " reviewers imported, " << issued.size()
                << " new accounts; credentials queued in the outbox\n";
    } else if (*distribute) {
      Assignment proposal = workflow.propose_distribution(me);
      Snapshot snap = registry.snapshot();
      DistributionReport report =
          distribution_report(proposal, workflow.distribution_input(*snap).bids);
      if (as_json_output) {
        std::cout << as_json(report).dump(2) << "\n";
      } else {
        std::cout << as_text(report);
      }
      if (commit) {
        workflow.commit_distribution(me, proposal);
        std::cerr << "distribution committed; store version " << registry.version() << "\n";
      } else {
        std::cerr << "dry run; use --commit to store this distribution\n";
      }
    } else if (*overviews) {
      Snapshot snap = registry.snapshot();
      fs::path dir(overview_dir);
      auto emit = [&](const std::string& name, const std::string& text, const json& j) {
        write_file(dir / (name + ".txt"), text);
        write_file(dir / (name + ".json"), j.dump(2) + "\n");
      };
      ProgressOverview progress;
      if (snap->assignment) progress = progress_overview(*snap);
      emit("progress", as_text(progress), as_json(progress));
      auto all = all_reviews_overview(*snap);
      emit("all-reviews", as_text(all), as_json(all));
      auto categories = categories_overview(*snap);
      emit("categories", as_text(categories), as_json(categories));
      auto champions = champions_overview(*snap);
      emit("champions", as_text(champions), as_json(champions));
      auto low = low_expertise_overview(*snap);
      emit("low-expertise", as_text(low), as_json(low));
      auto abstracts = topic_abstract_overviews(*snap);
      emit("abstracts", as_text(abstracts), as_json(abstracts));
      for (const auto& t : abstracts.topics) {
        emit("topic-" + std::to_string(t.topic), as_text(t), as_json(t));
      }
      std::cout << "overviews written to " << dir.string() << "\n";
    } else if (*parse) {
      Snapshot snap = registry.snapshot();
      ParsedReview parsed = parse_review(read_file(review_file), snap.get());
      if (!parsed.ok()) {
        for (const auto& m : parsed.messages()) std::cerr << review_file << ": " << m << "\n";
        return 1;
      }
      const Review& r = *parsed.review;
      if (submit_review) {
        Review stored = workflow.submit_review(
            me, r.paper,
            {r.classification, r.overall_expertise, r.comments_for_authors, r.comments_for_pc},
            r.reviewer);
        std::cout << json(stored).dump(2) << "\n";
      } else {
        std::cout << json(r).dump(2) << "\n";
      }
    } else if (*form) {
      std::cout << render_template(*registry.snapshot(), form_paper, form_reviewer);
    } else if (*decide) {
      DecisionRecord d = workflow.record_decisions(me, {accepted.begin(), accepted.end()});
      std::cout << "accepted " << d.accepted.size() << ", rejected " << d.rejected.size() << "\n";
    } else if (*notify) {
      auto messages = workflow.generate_notifications(me);
      for (const auto& m : messages) std::cout << "outbox/" << m.file_name << "\n";
      std::cout << messages.size() << " notifications queued\n";
    } else if (*proceedings) {
      Snapshot snap = registry.snapshot();
      SessionPlan plan = parse_sessions_template(read_file(sessions_file), *snap);
      Toc toc = generate_toc(plan, *snap);
      AuthorIndex index = generate_author_index(toc, *snap);
      if (proceedings_dir.empty()) {
        std::cout << as_text(toc) << "\n" << as_text(index);
      } else {
        fs::path dir(proceedings_dir);
        write_file(dir / "toc.txt", as_text(toc));
        write_file(dir / "toc.json", as_json(toc).dump(2) + "\n");
        write_file(dir / "author-index.txt", as_text(index));
        write_file(dir / "author-index.json", as_json(index).dump(2) + "\n");
        std::cout << "proceedings written to " << dir.string() << "\n";
      }
    } else if (*serve) {
      Service service(workflow);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!service.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
    } else if (*status) {
      Snapshot snap = registry.snapshot();
      std::cout << "version " << snap->version << "\n"
                << "conference " << snap->config.conference_name << "\n"
                << "topics " << snap->topics.size() << "\n"
                << "papers " << snap->papers.size() << "\n"
                << "reviewers " << snap->reviewers.size() << "\n"
                << "reviews " << snap->reviews.size() << "\n"
                << "distributed " << (snap->assignment ? "yes" : "no") << "\n"
                << "decided " << (snap->decisions ? "yes" : "no") << "\n"
                << "outbox " << snap->outbox.size() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.details()) std::cerr << "  " << d << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
