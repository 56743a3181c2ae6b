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

#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "confreview/error.hpp"
#include "confreview/json_io.hpp"
#include "confreview/registry.hpp"
#include "fixtures.hpp"

using namespace confreview;
using namespace confreview::testing;
namespace fs = std::filesystem;

namespace {

RegistryOptions disk(const fs::path& root, std::function<bool(std::string_view)> hook = {}) {
  RegistryOptions o;
  o.root = root;
  o.durable = false;
  o.kdf_iterations = 10;
  o.fault_hook = std::move(hook);
  return o;
}

void add_topic(Registry& reg, int id) {
  reg.commit([&](Transaction& tx) { tx.data().topics.push_back({id, "T" + std::to_string(id)}); });
}

std::string auth_failure(const Registry& reg, const std::string& login, const std::string& pw) {
  try {
    reg.authenticate(login, pw);
  } catch (const Error& e) {
    return std::to_string(static_cast<int>(e.kind())) + ":" + e.what();
  }
  return "ok";
}

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("passwords hash and verify") {
  std::string h = hash_password("s3cret", 50);
  CHECK(h.starts_with("pbkdf2-sha256$50$"));
  CHECK(verify_password("s3cret", h));
  CHECK_FALSE(verify_password("s3cre", h));
  CHECK_FALSE(verify_password("s3cret", "garbage"));
  CHECK(hash_password("s3cret", 50) != h);
  CHECK(generate_password().size() == 12);
  CHECK(generate_password() != generate_password());
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("handles") {
  CHECK(is_valid_handle("jdoe"));
  CHECK(is_valid_handle("a.b-c_9"));
  CHECK_FALSE(is_valid_handle(""));
  CHECK_FALSE(is_valid_handle(".hidden"));
  CHECK_FALSE(is_valid_handle("a/b"));
  CHECK_FALSE(is_valid_handle("a b"));
}

TEST_CASE("authenticate: valid, wrong password, unknown login") {
  Registry reg(memory_options());
  IssuedCredentials issued;
  reg.commit([&](Transaction& tx) { issued = tx.issue_credentials("kim", Role::kReviewer, "kim"); });
  Credentials c = reg.authenticate("kim", issued.password);
  CHECK(c == Credentials{"kim", Role::kReviewer, "kim"});

  std::string wrong = auth_failure(reg, "kim", issued.password + "x");
  std::string unknown = auth_failure(reg, "nobody", issued.password);
  CHECK(wrong != "ok");
  CHECK(wrong == unknown);
  CHECK(wrong == std::to_string(static_cast<int>(ErrorKind::kAuth)) + ":invalid login or password");
}

TEST_CASE("issuing a taken login fails") {
  Registry reg(memory_options());
  reg.commit([&](Transaction& tx) { tx.issue_credentials("kim", Role::kReviewer, "kim"); });
  CHECK_THROWS_AS(
      reg.commit([&](Transaction& tx) { tx.issue_credentials("kim", Role::kChair, ""); }), Error);
}

TEST_CASE("authorize examples") {
  StoreData data;
  data.papers[1] = make_paper(1, {1});
  data.papers[2] = make_paper(2, {1});
  Assignment a;
  a.papers[1] = {{"kim", AssignmentSource::kManual}};
  data.assignment = a;

  Credentials kim{"kim", Role::kReviewer, "kim"};
  CHECK_FALSE(authorize(data, kim, Action::kReadPaperFile, {2, std::nullopt}).allowed);
  CHECK(authorize(data, kim, Action::kReadPaperFile, {1, std::nullopt}).allowed);
  Credentials chair{"chair", Role::kChair, ""};
  CHECK(authorize(data, chair, Action::kReadReviews, {2, std::nullopt}).allowed);
  Credentials author{"paper1", Role::kAuthorContact, "1"};
  AccessDecision d = authorize(data, author, Action::kReadReviews, {1, std::nullopt});
  CHECK_FALSE(d.allowed);
  CHECK(d.rule == "author.reviews-via-notification");
  CHECK_FALSE(authorize(data, author, Action::kReadPaper, {2, std::nullopt}).allowed);
  CHECK(authorize(data, author, Action::kUploadPaper, {1, std::nullopt}).allowed);

  try {
    require(data, kim, Action::kReadPaperFile, {2, std::nullopt});
    FAIL("expected forbidden");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kForbidden);
    CHECK(e.details() == std::vector<std::string>{"reviewer.assigned-papers-only"});
  }
}

// Matrix rows, written out independently of the implementation.
TEST_CASE("authorization soundness under random probes") {
  StoreData data;
  for (int p = 1; p <= 3; ++p) data.papers[p] = make_paper(p, {1});
  Assignment a;
  a.papers[1] = {{"r1", AssignmentSource::kManual}};
  a.papers[2] = {{"r2", AssignmentSource::kManual}};
  data.assignment = a;

  auto expected = [&](const Credentials& c, Action act, const AccessSubject& s) {
    const std::set<Action> chair_row = {
        Action::kReadPaper,     Action::kReadPaperFile,   Action::kReadAbstracts,
        Action::kReadDashboard, Action::kReadReviews,     Action::kReadReviewForm,
        Action::kReadProgress,  Action::kReadOverviews,   Action::kRunDistribution,
        Action::kRecordDecisions};
    const std::set<Action> reviewer_open = {Action::kReadPaper, Action::kReadAbstracts,
                                            Action::kReadProgress};
    const std::set<Action> reviewer_self = {Action::kSubmitBids, Action::kDeclareCoi,
                                            Action::kUpdateProfile, Action::kReadDashboard,
                                            Action::kVolunteer};
    const std::set<Action> reviewer_assigned = {Action::kReadPaperFile, Action::kSubmitReview,
                                                Action::kReadReviews, Action::kReadReviewForm,
                                                Action::kSendConflictMessage};
    const std::set<Action> author_row = {Action::kReadPaper, Action::kUpdatePaper,
                                         Action::kUploadPaper, Action::kReadPaperFile,
                                         Action::kUploadCameraReady};
    switch (c.role) {
      case Role::kMaintainer: return true;
      case Role::kChair: return chair_row.contains(act);
      case Role::kReviewer:
        if (reviewer_open.contains(act)) return true;
        if (reviewer_self.contains(act)) return !s.reviewer || *s.reviewer == c.subject;
        if (reviewer_assigned.contains(act)) {
          return s.paper && a.is_assigned(*s.paper, c.subject);
        }
        return false;
      case Role::kAuthorContact:
        return author_row.contains(act) && s.paper && std::to_string(*s.paper) == c.subject;
    }
    return false;
  };

  const std::vector<Credentials> who = {
      {"m", Role::kMaintainer, ""}, {"c", Role::kChair, ""},
      {"r1", Role::kReviewer, "r1"}, {"r2", Role::kReviewer, "r2"},
      {"paper1", Role::kAuthorContact, "1"}, {"paper3", Role::kAuthorContact, "3"}};
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick_who(0, static_cast<int>(who.size()) - 1);
  std::uniform_int_distribution<int> pick_action(0, kActionCount - 1);
  std::uniform_int_distribution<int> pick_paper(0, 3);
  std::uniform_int_distribution<int> pick_reviewer(0, 2);
  for (int i = 0; i < 5000; ++i) {
    const Credentials& c = who[pick_who(rng)];
    Action act = static_cast<Action>(pick_action(rng));
    AccessSubject s;
    if (int p = pick_paper(rng)) s.paper = p;
    if (int r = pick_reviewer(rng)) s.reviewer = "r" + std::to_string(r);
    AccessDecision d = authorize(data, c, act, s);
    CAPTURE(c.login);
    CAPTURE(to_string(act));
    CHECK(d.allowed == expected(c, act, s));
    CHECK_FALSE(d.rule.empty());
  }
}

TEST_CASE("empty mutation keeps the version") {
  Registry reg(memory_options());
  add_topic(reg, 1);
  CHECK(reg.version() == 1);
  CHECK(reg.commit([](Transaction&) {}) == 1);
  CHECK(reg.commit([](Transaction& tx) { tx.data().topics = tx.before().topics; }) == 1);
}

TEST_CASE("a throwing mutation changes nothing") {
  Registry reg(memory_options());
  add_topic(reg, 1);
  CHECK_THROWS(reg.commit([](Transaction& tx) {
    tx.data().topics.clear();
    tx.put_blob("files/1/paper.pdf", "x");
    throw Error(ErrorKind::kValidation, "no");
  }));
  CHECK(reg.snapshot()->topics.size() == 1);
  CHECK_FALSE(reg.read_blob("files/1/paper.pdf"));
}

TEST_CASE("snapshots are isolated from later commits") {
  Registry reg(memory_options());
  add_topic(reg, 1);
  Snapshot before = reg.snapshot();
  std::string bytes = json(before->topics).dump();
  add_topic(reg, 2);
  CHECK(before->version == 1);
  CHECK(json(before->topics).dump() == bytes);
  CHECK(reg.snapshot()->topics.size() == 2);
}

TEST_CASE("snapshot taken during a commit sees the previous version") {
  Registry reg(memory_options());
  add_topic(reg, 1);
  std::uint64_t seen = 0;
  reg.commit([&](Transaction& tx) {
    tx.data().topics.push_back({2, "T2"});
    seen = reg.snapshot()->version;
  });
  CHECK(seen == 1);
  CHECK(reg.version() == 2);
}

TEST_CASE("blob paths must stay inside the root") {
  Registry reg(memory_options());
  CHECK_THROWS_AS(reg.commit([](Transaction& tx) { tx.put_blob("../x", "y"); }), Error);
  CHECK_THROWS_AS(reg.commit([](Transaction& tx) { tx.put_blob("/abs", "y"); }), Error);
  CHECK_FALSE(reg.read_blob("../etc/passwd"));
}

TEST_CASE("commit then restart keeps data and blobs") {
  TempDir dir;
  {
    Registry reg(disk(dir.path));
    add_topic(reg, 1);
    reg.commit([](Transaction& tx) {
      tx.data().papers[1] = make_paper(1, {1});
      tx.put_blob("files/1/paper.pdf", "%PDF");
    });
  }
  Registry again(disk(dir.path));
  CHECK(again.version() == 2);
  CHECK(again.snapshot()->papers.at(1) == make_paper(1, {1}));
  CHECK(again.read_blob("files/1/paper.pdf") == std::optional<std::string>("%PDF"));
  CHECK(fs::exists(dir.path / "store" / "papers" / "1.json"));
  CHECK(again.list_blobs("files") == std::vector<std::string>{"files/1/paper.pdf"});
}

TEST_CASE("deleted records and blobs disappear") {
  TempDir dir;
  {
    Registry reg(disk(dir.path));
    reg.commit([](Transaction& tx) {
      tx.data().papers[1] = make_paper(1, {1});
      tx.put_blob("files/1/paper.pdf", "%PDF");
    });
    reg.commit([](Transaction& tx) {
      tx.data().papers.erase(1);
      tx.delete_blob("files/1/paper.pdf");
    });
  }
  Registry again(disk(dir.path));
  CHECK(again.snapshot()->papers.empty());
  CHECK_FALSE(again.read_blob("files/1/paper.pdf"));
  CHECK_FALSE(fs::exists(dir.path / "store" / "papers" / "1.json"));
}

TEST_CASE("every fault point either loses or keeps the whole commit") {
  for (std::string_view point : kFaultPoints) {
    CAPTURE(std::string(point));
    TempDir dir;
    bool armed = false;
    {
      Registry reg(disk(dir.path, [&](std::string_view p) { return armed && p == point; }));
      add_topic(reg, 1);
      armed = true;
      CHECK_THROWS_AS(reg.commit([](Transaction& tx) {
                        tx.data().topics.push_back({2, "T2"});
                        tx.data().papers[1] = make_paper(1, {1, 2});
                        tx.put_blob("files/1/paper.pdf", "%PDF");
                      }),
                      InjectedFault);
    }
    Registry again(disk(dir.path));
    Snapshot s = again.snapshot();
    if (fault_point_keeps_commit(point)) {
      CHECK(s->version == 2);
      CHECK(s->topics.size() == 2);
      CHECK(s->papers.size() == 1);
      CHECK(again.read_blob("files/1/paper.pdf") == std::optional<std::string>("%PDF"));
    } else {
      CHECK(s->version == 1);
      CHECK(s->topics.size() == 1);
      CHECK(s->papers.empty());
      CHECK_FALSE(again.read_blob("files/1/paper.pdf"));
    }
    // The registry keeps working after recovery.
    again.commit([](Transaction& tx) { tx.data().topics.push_back({9, "T9"}); });
    Registry third(disk(dir.path));
    CHECK(third.snapshot()->topics.back().id == 9);
    CHECK(third.version() == s->version + 1);
  }
}

TEST_CASE("a corrupted log line is rejected") {
  TempDir dir;
  {
    Registry reg(disk(dir.path));
    add_topic(reg, 1);
    add_topic(reg, 2);
  }
  // Flip a byte inside the first line, which is not the torn tail.
  fs::path log = dir.path / "events.log";
  std::string text;
  {
    std::ifstream in(log, std::ios::binary);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  text[5] = text[5] == 'x' ? 'y' : 'x';
  fs::remove_all(dir.path / "store");
  {
    std::ofstream out(log, std::ios::binary | std::ios::trunc);
    out << text;
  }
  CHECK_THROWS_AS(Registry(disk(dir.path)), Error);
}

TEST_CASE("store can be rebuilt from the log alone") {
  TempDir dir;
  {
    Registry reg(disk(dir.path));
    add_topic(reg, 1);
    add_topic(reg, 2);
  }
  fs::remove_all(dir.path / "store");
  Registry again(disk(dir.path));
  CHECK(again.version() == 2);
  CHECK(again.snapshot()->topics.size() == 2);
}

TEST_CASE("documents round-trip") {
  Conference conf;
  conf.setup(2, simple_reviewers(3, 2), 2);
  conf.assign({{1, {"r1", "r2"}}, {2, {"r2", "r3"}}});
  conf.review(1, "r1", Classification::kA);
  Snapshot s = conf.registry.snapshot();
  StoreData back = from_documents(to_documents(*s), s->version);
  CHECK(back == *s);
}

}  // TEST_SUITE
