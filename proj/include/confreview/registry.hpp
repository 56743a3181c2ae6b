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

// Durable store, credentials and access control.
//
// On-disk layout under the registry root:
//
//   events.log              append-only commit log, one JSON line per version
//                           followed by a tab and the SHA-256 of the line
//   store/meta.json         last version fully written to store/
//   store/<kind>/<key>.json one document per record
//   files/<paper>/<phase>.<ext>   uploaded papers (opaque blobs)
//   outbox/*.eml            outgoing mail
//   staging/                blobs written ahead of their commit
//
// A commit becomes durable when its log line has been fsync'ed. The record
// files are rewritten afterwards; on load every log line newer than
// store/meta.json is replayed, and a torn final line is discarded.

#ifndef CONFREVIEW_REGISTRY_HPP_
#define CONFREVIEW_REGISTRY_HPP_

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "confreview/store.hpp"

namespace confreview {

// Thrown when a fault hook asks the registry to die at a named point.
class InjectedFault : public std::exception {
 public:
  explicit InjectedFault(std::string point) : point_(std::move(point)) {}
  const char* what() const noexcept override { return point_.c_str(); }
  const std::string& point() const { return point_; }

 private:
  std::string point_;
};

// Named points, in commit order. Points up to and including "log-partial"
// lose the commit; later points keep it.
inline constexpr std::string_view kFaultPoints[] = {
    "stage-blob", "before-log", "log-partial", "after-log", "mid-materialize", "before-meta",
};
bool fault_point_keeps_commit(std::string_view point);

struct RegistryOptions {
  // Empty root keeps everything in memory.
  std::filesystem::path root;
  bool durable = true;  // fsync log, records and blobs
  int kdf_iterations = 100000;
  // Returns true to simulate a crash at the given point.
  std::function<bool(std::string_view point)> fault_hook;
};

using Documents = std::map<std::string, std::map<std::string, nlohmann::json>>;

Documents to_documents(const StoreData& data);
StoreData from_documents(const Documents& docs, std::uint64_t version);

std::string sha256_hex(std::string_view data);

std::string hash_password(std::string_view password, int iterations);
bool verify_password(std::string_view password, std::string_view stored);
std::string generate_password(std::size_t length = 12);

// Login names and reviewer handles: [A-Za-z0-9._-], not starting with '.'.
bool is_valid_handle(std::string_view s);

class Registry;

// A mutation in progress. `data()` starts as a copy of the current version;
// throwing from the mutation discards every change.
class Transaction {
 public:
  StoreData& data() { return next_; }
  const StoreData& before() const { return base_; }

  void put_blob(const std::string& relative_path, std::string_view bytes);
  void delete_blob(const std::string& relative_path);
  IssuedCredentials issue_credentials(const std::string& login, Role role,
                                      const std::string& subject);

 private:
  friend class Registry;
  Transaction(Registry& registry, const StoreData& base, StoreData& next)
      : registry_(registry), base_(base), next_(next) {}

  struct StagedBlob {
    std::string final_path;
    std::string staging_name;  // file under staging/ (persistent registries)
    std::string bytes;         // contents (in-memory registries)
  };

  Registry& registry_;
  const StoreData& base_;
  StoreData& next_;
  std::vector<StagedBlob> staged_;
  std::vector<std::string> deleted_;
};

class Registry {
 public:
  explicit Registry(RegistryOptions options = {});
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  Snapshot snapshot() const;
  std::uint64_t version() const;

  // Applies `mutation` atomically. Returns the new version, or the current one
  // when the mutation changed nothing.
  std::uint64_t commit(const std::function<void(Transaction&)>& mutation);

  // Uniform failure for unknown logins and wrong passwords.
  Credentials authenticate(std::string_view login, std::string_view password) const;

  std::optional<std::string> read_blob(const std::string& relative_path) const;
  std::vector<std::string> list_blobs(const std::string& prefix) const;

  bool persistent() const { return !options_.root.empty(); }
  const std::filesystem::path& root() const { return options_.root; }
  const RegistryOptions& options() const { return options_; }

 private:
  friend class Transaction;

  void load();
  void fault(std::string_view point) const;
  bool fault_fires(std::string_view point) const;
  void materialize(const nlohmann::json& entry, bool inject_faults);
  void write_meta(std::uint64_t version);
  std::string stage_blob(std::string_view bytes);
  void append_log(const std::string& line);

  RegistryOptions options_;
  mutable std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  Snapshot current_;
  Documents current_docs_;
  std::map<std::string, std::string> memory_blobs_;
};

enum class Action {
  kReadPaper,
  kUpdatePaper,
  kUploadPaper,
  kReadPaperFile,
  kUploadCameraReady,
  kReadAbstracts,
  kSubmitBids,
  kDeclareCoi,
  kUpdateProfile,
  kReadDashboard,
  kSubmitReview,
  kReadReviews,
  kReadReviewForm,
  kSendConflictMessage,
  kVolunteer,
  kReadProgress,
  kReadOverviews,
  kRunDistribution,
  kRecordDecisions,
  kSendNotifications,
  kBuildProceedings,
  kManageConference,
};
std::string_view to_string(Action a);
inline constexpr int kActionCount = static_cast<int>(Action::kManageConference) + 1;

struct AccessSubject {
  std::optional<PaperId> paper;
  std::optional<ReviewerId> reviewer;
};

struct AccessDecision {
  bool allowed = false;
  std::string rule;
};

AccessDecision authorize(const StoreData& data, const Credentials& creds, Action action,
                         const AccessSubject& subject);
// Throws Error(kForbidden) carrying the violated rule.
void require(const StoreData& data, const Credentials& creds, Action action,
             const AccessSubject& subject);

}  // namespace confreview

#endif  // CONFREVIEW_REGISTRY_HPP_
