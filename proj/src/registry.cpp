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

#include "confreview/registry.hpp"

#include <fcntl.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "confreview/error.hpp"
#include "confreview/json_io.hpp"

namespace fs = std::filesystem;

namespace confreview {

namespace {

constexpr const char* kLogName = "events.log";
constexpr const char* kStoreDir = "store";
constexpr const char* kStagingDir = "staging";

[[noreturn]] void storage_error(const std::string& what) {
  throw Error(ErrorKind::kStorage, what);
}

std::string hex(const unsigned char* data, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xf]);
  }
  return out;
}

std::optional<std::string> unhex(std::string_view s) {
  if (s.size() % 2) return std::nullopt;
  std::string out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      return -1;
    };
    int hi = nibble(s[i]), lo = nibble(s[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>(hi * 16 + lo));
  }
  return out;
}

std::string random_hex(std::size_t bytes) {
  std::vector<unsigned char> buf(bytes);
  if (RAND_bytes(buf.data(), static_cast<int>(buf.size())) != 1) {
    storage_error("random generator failed");
  }
  return hex(buf.data(), buf.size());
}

void write_all(int fd, std::string_view data, const fs::path& path) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      storage_error("write " + path.string() + ": " + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

void fsync_dir(const fs::path& dir) {
  int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

// Writes via a temporary file and rename, so readers never see a torn file.
void write_file_atomic(const fs::path& path, std::string_view data, bool durable) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) storage_error("open " + tmp.string() + ": " + std::strerror(errno));
  try {
    write_all(fd, data, tmp);
  } catch (...) {
    ::close(fd);
    throw;
  }
  if (durable && ::fsync(fd) != 0) {
    ::close(fd);
    storage_error("fsync " + tmp.string() + ": " + std::strerror(errno));
  }
  ::close(fd);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) storage_error("rename " + tmp.string() + ": " + ec.message());
  if (durable) fsync_dir(path.parent_path());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) storage_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool safe_relative(const std::string& rel) {
  if (rel.empty() || rel.front() == '/') return false;
  fs::path p(rel);
  return std::none_of(p.begin(), p.end(), [](const fs::path& part) {
    return part == ".." || part == ".";
  });
}

// Record keys become file names; anything outside the handle alphabet is
// percent-encoded.
std::string encode_key(const std::string& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(key[i]);
    bool plain = std::isalnum(c) || c == '-' || c == '_' || (c == '.' && i > 0);
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

std::string decode_key(const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '%' && i + 2 < name.size()) {
      out.push_back(static_cast<char>(std::stoi(name.substr(i + 1, 2), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(name[i]);
    }
  }
  return out;
}

std::string review_key(PaperId paper, const ReviewerId& reviewer) {
  return std::to_string(paper) + "-" + reviewer;
}

template <typename T>
T parse_doc(const nlohmann::json& j, const std::string& kind) {
  try {
    return j.get<T>();
  } catch (const std::exception& e) {
    storage_error("corrupt " + kind + " record: " + e.what());
  }
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    storage_error("sha256 failed");
  }
  return hex(digest, len);
}

bool fault_point_keeps_commit(std::string_view point) {
  return point == "after-log" || point == "mid-materialize" || point == "before-meta";
}

Documents to_documents(const StoreData& data) {
  Documents docs;
  docs["config"]["config"] = data.config;
  for (const auto& t : data.topics) docs["topics"][std::to_string(t.id)] = t;
  for (const auto& [id, p] : data.papers) docs["papers"][std::to_string(id)] = p;
  for (const auto& [id, r] : data.reviewers) docs["reviewers"][id] = r;
  for (const auto& b : data.bids) docs["bids"][std::to_string(b.sequence)] = b;
  for (const auto& [key, r] : data.reviews) docs["reviews"][review_key(key.first, key.second)] = r;
  if (data.assignment) docs["assignment"]["current"] = *data.assignment;
  for (const auto& [login, c] : data.credentials) docs["credentials"][login] = c;
  for (const auto& m : data.outbox) docs["outbox"][std::to_string(m.id)] = m;
  for (const auto& d : data.discussions) docs["discussions"][std::to_string(d.id)] = d;
  for (const auto& f : data.chair_flags) docs["flags"][review_key(f.paper, f.reviewer)] = f;
  if (data.decisions) docs["decisions"]["current"] = *data.decisions;
  docs["counters"]["state"] = data.counters;
  return docs;
}

StoreData from_documents(const Documents& docs, std::uint64_t version) {
  StoreData data;
  data.version = version;
  auto each = [&](const char* kind, auto&& fn) {
    if (auto it = docs.find(kind); it != docs.end()) {
      for (const auto& [key, doc] : it->second) fn(key, doc);
    }
  };
  each("config", [&](const std::string&, const nlohmann::json& j) {
    data.config = parse_doc<Config>(j, "config");
  });
  each("topics", [&](const std::string&, const nlohmann::json& j) {
    data.topics.push_back(parse_doc<Topic>(j, "topic"));
  });
  std::sort(data.topics.begin(), data.topics.end(),
            [](const Topic& a, const Topic& b) { return a.id < b.id; });
  each("papers", [&](const std::string&, const nlohmann::json& j) {
    auto p = parse_doc<PaperRecord>(j, "paper");
    data.papers.emplace(p.id, std::move(p));
  });
  each("reviewers", [&](const std::string&, const nlohmann::json& j) {
    auto r = parse_doc<ReviewerProfile>(j, "reviewer");
    data.reviewers.emplace(r.id, std::move(r));
  });
  each("bids", [&](const std::string&, const nlohmann::json& j) {
    data.bids.push_back(parse_doc<Bid>(j, "bid"));
  });
  std::sort(data.bids.begin(), data.bids.end(),
            [](const Bid& a, const Bid& b) { return a.sequence < b.sequence; });
  each("reviews", [&](const std::string&, const nlohmann::json& j) {
    auto r = parse_doc<Review>(j, "review");
    data.reviews.emplace(std::make_pair(r.paper, r.reviewer), std::move(r));
  });
  each("assignment", [&](const std::string&, const nlohmann::json& j) {
    data.assignment = parse_doc<Assignment>(j, "assignment");
  });
  each("credentials", [&](const std::string&, const nlohmann::json& j) {
    auto c = parse_doc<CredentialRecord>(j, "credential");
    data.credentials.emplace(c.login, std::move(c));
  });
  each("outbox", [&](const std::string&, const nlohmann::json& j) {
    data.outbox.push_back(parse_doc<OutboxMessage>(j, "outbox message"));
  });
  std::sort(data.outbox.begin(), data.outbox.end(),
            [](const OutboxMessage& a, const OutboxMessage& b) { return a.id < b.id; });
  each("discussions", [&](const std::string&, const nlohmann::json& j) {
    data.discussions.push_back(parse_doc<DiscussionEntry>(j, "discussion"));
  });
  std::sort(data.discussions.begin(), data.discussions.end(),
            [](const DiscussionEntry& a, const DiscussionEntry& b) { return a.id < b.id; });
  each("flags", [&](const std::string&, const nlohmann::json& j) {
    data.chair_flags.push_back(parse_doc<ChairFlag>(j, "flag"));
  });
  std::sort(data.chair_flags.begin(), data.chair_flags.end(),
            [](const ChairFlag& a, const ChairFlag& b) {
              return std::tie(a.paper, a.reviewer) < std::tie(b.paper, b.reviewer);
            });
  each("decisions", [&](const std::string&, const nlohmann::json& j) {
    data.decisions = parse_doc<DecisionRecord>(j, "decisions");
  });
  each("counters", [&](const std::string&, const nlohmann::json& j) {
    data.counters = parse_doc<Counters>(j, "counters");
  });
  return data;
}

std::string hash_password(std::string_view password, int iterations) {
  unsigned char salt[16];
  if (RAND_bytes(salt, sizeof salt) != 1) storage_error("random generator failed");
  unsigned char out[32];
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt, sizeof salt,
                        iterations, EVP_sha256(), sizeof out, out) != 1) {
    storage_error("password hashing failed");
  }
  return "pbkdf2-sha256$" + std::to_string(iterations) + "$" + hex(salt, sizeof salt) + "$" +
         hex(out, sizeof out);
}

bool verify_password(std::string_view password, std::string_view stored) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : stored) {
    if (c == '$') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  if (parts.size() != 4 || parts[0] != "pbkdf2-sha256") return false;
  int iterations = 0;
  try {
    iterations = std::stoi(parts[1]);
  } catch (const std::exception&) {
    return false;
  }
  auto salt = unhex(parts[2]);
  auto expected = unhex(parts[3]);
  if (!salt || !expected || iterations < 1 || expected->empty()) return false;
  std::vector<unsigned char> out(expected->size());
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()),
                        reinterpret_cast<const unsigned char*>(salt->data()),
                        static_cast<int>(salt->size()), iterations, EVP_sha256(),
                        static_cast<int>(out.size()), out.data()) != 1) {
    return false;
  }
  return CRYPTO_memcmp(out.data(), expected->data(), out.size()) == 0;
}

std::string generate_password(std::size_t length) {
  static constexpr std::string_view alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  std::string out;
  while (out.size() < length) {
    unsigned char byte = 0;
    if (RAND_bytes(&byte, 1) != 1) storage_error("random generator failed");
    // 248 = 4 * 62; rejecting the tail keeps the draw uniform.
    if (byte >= 248) continue;
    out.push_back(alphabet[byte % alphabet.size()]);
  }
  return out;
}

bool is_valid_handle(std::string_view s) {
  if (s.empty() || s.size() > 64 || s.front() == '.') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
  });
}

// ---------------------------------------------------------------------------
// Transaction

void Transaction::put_blob(const std::string& relative_path, std::string_view bytes) {
  if (!safe_relative(relative_path)) {
    throw Error(ErrorKind::kValidation, "invalid blob path " + relative_path);
  }
  StagedBlob blob;
  blob.final_path = relative_path;
  if (registry_.persistent()) {
    blob.staging_name = registry_.stage_blob(bytes);
  } else {
    blob.bytes = std::string(bytes);
  }
  std::erase(deleted_, relative_path);
  staged_.push_back(std::move(blob));
}

void Transaction::delete_blob(const std::string& relative_path) {
  if (!safe_relative(relative_path)) {
    throw Error(ErrorKind::kValidation, "invalid blob path " + relative_path);
  }
  deleted_.push_back(relative_path);
}

IssuedCredentials Transaction::issue_credentials(const std::string& login, Role role,
                                                 const std::string& subject) {
  if (!is_valid_handle(login)) throw Error(ErrorKind::kValidation, "invalid login " + login);
  if (next_.credentials.contains(login)) {
    throw Error(ErrorKind::kValidation, "login already in use: " + login);
  }
  IssuedCredentials issued{login, generate_password(12)};
  next_.credentials[login] = CredentialRecord{
      login, hash_password(issued.password, registry_.options_.kdf_iterations), role, subject};
  return issued;
}

// ---------------------------------------------------------------------------
// Registry

Registry::Registry(RegistryOptions options) : options_(std::move(options)) {
  if (options_.kdf_iterations < 1) options_.kdf_iterations = 1;
  if (persistent()) {
    load();
  } else {
    current_ = std::make_shared<const StoreData>();
    current_docs_ = to_documents(*current_);
  }
}

Snapshot Registry::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

std::uint64_t Registry::version() const { return snapshot()->version; }

bool Registry::fault_fires(std::string_view point) const {
  return options_.fault_hook && options_.fault_hook(point);
}

void Registry::fault(std::string_view point) const {
  if (fault_fires(point)) throw InjectedFault(std::string(point));
}

std::string Registry::stage_blob(std::string_view bytes) {
  std::string name = random_hex(16) + ".blob";
  write_file_atomic(options_.root / kStagingDir / name, bytes, options_.durable);
  fault("stage-blob");
  return name;
}

void Registry::append_log(const std::string& line) {
  fs::path path = options_.root / kLogName;
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) storage_error("open " + path.string() + ": " + std::strerror(errno));
  if (fault_fires("log-partial")) {
    write_all(fd, std::string_view(line).substr(0, line.size() / 2), path);
    ::fsync(fd);
    ::close(fd);
    throw InjectedFault("log-partial");
  }
  try {
    write_all(fd, line, path);
  } catch (...) {
    ::close(fd);
    throw;
  }
  if (options_.durable && ::fsync(fd) != 0) {
    ::close(fd);
    storage_error("fsync " + path.string() + ": " + std::strerror(errno));
  }
  ::close(fd);
}

void Registry::write_meta(std::uint64_t version) {
  nlohmann::json meta{{"materialized_version", version}};
  write_file_atomic(options_.root / kStoreDir / "meta.json", meta.dump(2) + "\n",
                    options_.durable);
}

void Registry::materialize(const nlohmann::json& entry, bool inject_faults) {
  const fs::path store = options_.root / kStoreDir;
  bool first = true;
  for (const auto& [kind, records] : entry.at("puts").items()) {
    for (const auto& [key, doc] : records.items()) {
      write_file_atomic(store / kind / (encode_key(key) + ".json"), doc.dump(2) + "\n",
                        options_.durable);
      if (first && inject_faults) fault("mid-materialize");
      first = false;
    }
  }
  for (const auto& [kind, keys] : entry.at("dels").items()) {
    for (const auto& key : keys) {
      std::error_code ec;
      fs::remove(store / kind / (encode_key(key.get<std::string>()) + ".json"), ec);
    }
  }
  for (const auto& rel : entry.at("blob_deletes")) {
    std::error_code ec;
    fs::remove(options_.root / rel.get<std::string>(), ec);
  }
  for (const auto& pair : entry.at("blobs")) {
    fs::path staged = options_.root / kStagingDir / pair.at(0).get<std::string>();
    fs::path target = options_.root / pair.at(1).get<std::string>();
    if (!fs::exists(staged)) continue;  // already moved by an earlier attempt
    fs::create_directories(target.parent_path());
    std::error_code ec;
    fs::rename(staged, target, ec);
    if (ec) storage_error("rename " + staged.string() + ": " + ec.message());
    if (options_.durable) fsync_dir(target.parent_path());
  }
  if (inject_faults) fault("before-meta");
  write_meta(entry.at("v").get<std::uint64_t>());
}

void Registry::load() {
  const fs::path& root = options_.root;
  fs::create_directories(root / kStoreDir);
  fs::create_directories(root / kStagingDir);

  Documents docs;
  std::uint64_t materialized = 0;
  for (const auto& kind_dir : fs::directory_iterator(root / kStoreDir)) {
    if (!kind_dir.is_directory()) continue;
    const std::string kind = kind_dir.path().filename().string();
    for (const auto& file : fs::directory_iterator(kind_dir.path())) {
      if (file.path().extension() != ".json") continue;
      try {
        docs[kind][decode_key(file.path().stem().string())] =
            nlohmann::json::parse(read_file(file.path()));
      } catch (const nlohmann::json::exception& e) {
        storage_error("corrupt record " + file.path().string() + ": " + e.what());
      }
    }
  }
  if (fs::exists(root / kStoreDir / "meta.json")) {
    try {
      materialized = nlohmann::json::parse(read_file(root / kStoreDir / "meta.json"))
                         .at("materialized_version")
                         .get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      storage_error(std::string("corrupt store/meta.json: ") + e.what());
    }
  }

  std::uint64_t version = materialized;
  const fs::path log_path = root / kLogName;
  if (fs::exists(log_path)) {
    const std::string log = read_file(log_path);
    std::size_t pos = 0;
    std::uint64_t last_seen = 0;
    std::vector<nlohmann::json> replay;
    while (pos < log.size()) {
      std::size_t end = log.find('\n', pos);
      const bool complete = end != std::string::npos;
      std::string line = log.substr(pos, complete ? end - pos : std::string::npos);
      std::size_t tab = line.rfind('\t');
      bool valid = tab != std::string::npos &&
                   sha256_hex(std::string_view(line).substr(0, tab)) == line.substr(tab + 1);
      if (!valid) {
        std::size_t next = complete ? end + 1 : log.size();
        if (next < log.size()) {
          storage_error("corrupt events.log line at byte " + std::to_string(pos));
        }
        // Torn final write: the commit never became durable.
        fs::resize_file(log_path, pos);
        break;
      }
      auto entry = nlohmann::json::parse(line.substr(0, tab));
      std::uint64_t v = entry.at("v").get<std::uint64_t>();
      if (last_seen != 0 && v != last_seen + 1) {
        storage_error("events.log version gap after " + std::to_string(last_seen));
      }
      last_seen = v;
      if (v > materialized) replay.push_back(std::move(entry));
      if (!complete) {
        std::ofstream(log_path, std::ios::app) << '\n';
        break;
      }
      pos = end + 1;
    }
    if (last_seen > version) version = last_seen;
    for (const auto& entry : replay) {
      for (const auto& [kind, records] : entry.at("puts").items()) {
        for (const auto& [key, doc] : records.items()) docs[kind][key] = doc;
      }
      for (const auto& [kind, keys] : entry.at("dels").items()) {
        for (const auto& key : keys) docs[kind].erase(key.get<std::string>());
      }
      materialize(entry, false);
    }
  }

  for (const auto& staged : fs::directory_iterator(root / kStagingDir)) {
    std::error_code ec;
    fs::remove(staged.path(), ec);
  }

  current_ = std::make_shared<const StoreData>(from_documents(docs, version));
  current_docs_ = to_documents(*current_);
}

std::uint64_t Registry::commit(const std::function<void(Transaction&)>& mutation) {
  std::lock_guard lock(write_mutex_);
  Snapshot base = snapshot();
  auto next = std::make_shared<StoreData>(*base);
  Transaction tx(*this, *base, *next);

  auto discard_staged = [&] {
    if (!persistent()) return;
    for (const auto& blob : tx.staged_) {
      std::error_code ec;
      fs::remove(options_.root / kStagingDir / blob.staging_name, ec);
    }
  };

  try {
    mutation(tx);
  } catch (const InjectedFault&) {
    throw;
  } catch (...) {
    discard_staged();
    throw;
  }
  next->version = base->version;

  Documents docs = to_documents(*next);
  nlohmann::json puts = nlohmann::json::object();
  nlohmann::json dels = nlohmann::json::object();
  for (const auto& [kind, records] : docs) {
    const auto old_kind = current_docs_.find(kind);
    for (const auto& [key, doc] : records) {
      if (old_kind != current_docs_.end()) {
        auto old = old_kind->second.find(key);
        if (old != old_kind->second.end() && old->second == doc) continue;
      }
      puts[kind][key] = doc;
    }
  }
  for (const auto& [kind, records] : current_docs_) {
    const auto new_kind = docs.find(kind);
    for (const auto& [key, doc] : records) {
      if (new_kind == docs.end() || !new_kind->second.contains(key)) {
        dels[kind].push_back(key);
      }
    }
  }

  if (puts.empty() && dels.empty() && tx.staged_.empty() && tx.deleted_.empty()) {
    return base->version;
  }
  next->version = base->version + 1;

  if (persistent()) {
    nlohmann::json blobs = nlohmann::json::array();
    for (const auto& blob : tx.staged_) blobs.push_back({blob.staging_name, blob.final_path});
    nlohmann::json entry{{"v", next->version}, {"puts", puts},          {"dels", dels},
                         {"blobs", blobs},      {"blob_deletes", tx.deleted_}};
    const std::string body = entry.dump();
    fault("before-log");
    append_log(body + "\t" + sha256_hex(body) + "\n");
    fault("after-log");
    try {
      materialize(entry, true);
    } catch (const InjectedFault&) {
      throw;
    } catch (const std::exception& e) {
      // The log line is durable; the next load replays it.
      std::cerr << "confreview: deferred materialization of version " << next->version
                << ": " << e.what() << '\n';
    }
  } else {
    std::lock_guard snap(snapshot_mutex_);
    for (const auto& rel : tx.deleted_) memory_blobs_.erase(rel);
    for (auto& blob : tx.staged_) memory_blobs_[blob.final_path] = std::move(blob.bytes);
  }

  current_docs_ = std::move(docs);
  std::lock_guard snap(snapshot_mutex_);
  current_ = std::move(next);
  return current_->version;
}

Credentials Registry::authenticate(std::string_view login, std::string_view password) const {
  static const std::string kDummyHash = hash_password("dummy-password", 1);
  Snapshot snap = snapshot();
  auto it = snap->credentials.find(std::string(login));
  if (it == snap->credentials.end()) {
    // Same amount of work as a real check, so timing does not reveal logins.
    std::string dummy = kDummyHash;
    dummy.replace(dummy.find('$') + 1, 1, std::to_string(options_.kdf_iterations));
    verify_password(password, dummy);
    throw Error(ErrorKind::kAuth, "invalid login or password");
  }
  if (!verify_password(password, it->second.password_hash)) {
    throw Error(ErrorKind::kAuth, "invalid login or password");
  }
  return Credentials{it->second.login, it->second.role, it->second.subject};
}

std::optional<std::string> Registry::read_blob(const std::string& relative_path) const {
  if (!safe_relative(relative_path)) return std::nullopt;
  if (!persistent()) {
    std::lock_guard lock(snapshot_mutex_);
    auto it = memory_blobs_.find(relative_path);
    if (it == memory_blobs_.end()) return std::nullopt;
    return it->second;
  }
  fs::path path = options_.root / relative_path;
  if (!fs::is_regular_file(path)) return std::nullopt;
  return read_file(path);
}

std::vector<std::string> Registry::list_blobs(const std::string& prefix) const {
  std::vector<std::string> out;
  if (!persistent()) {
    std::lock_guard lock(snapshot_mutex_);
    for (const auto& [path, bytes] : memory_blobs_) {
      if (path.starts_with(prefix)) out.push_back(path);
    }
    return out;
  }
  fs::path dir = options_.root / prefix;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    out.push_back(fs::relative(entry.path(), options_.root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Access control

std::string_view to_string(Action a) {
  switch (a) {
    case Action::kReadPaper: return "read-paper";
    case Action::kUpdatePaper: return "update-paper";
    case Action::kUploadPaper: return "upload-paper";
    case Action::kReadPaperFile: return "read-paper-file";
    case Action::kUploadCameraReady: return "upload-camera-ready";
    case Action::kReadAbstracts: return "read-abstracts";
    case Action::kSubmitBids: return "submit-bids";
    case Action::kDeclareCoi: return "declare-coi";
    case Action::kUpdateProfile: return "update-profile";
    case Action::kReadDashboard: return "read-dashboard";
    case Action::kSubmitReview: return "submit-review";
    case Action::kReadReviews: return "read-reviews";
    case Action::kReadReviewForm: return "read-review-form";
    case Action::kSendConflictMessage: return "send-conflict-message";
    case Action::kVolunteer: return "volunteer";
    case Action::kReadProgress: return "read-progress";
    case Action::kReadOverviews: return "read-overviews";
    case Action::kRunDistribution: return "run-distribution";
    case Action::kRecordDecisions: return "record-decisions";
    case Action::kSendNotifications: return "send-notifications";
    case Action::kBuildProceedings: return "build-proceedings";
    case Action::kManageConference: return "manage-conference";
  }
  return "?";
}

AccessDecision authorize(const StoreData& data, const Credentials& creds, Action action,
                         const AccessSubject& subject) {
  auto allow = [](std::string rule) { return AccessDecision{true, std::move(rule)}; };
  auto deny = [](std::string rule) { return AccessDecision{false, std::move(rule)}; };

  switch (creds.role) {
    case Role::kMaintainer:
      return allow("maintainer.all");

    case Role::kChair:
      switch (action) {
        case Action::kReadPaper:
        case Action::kReadPaperFile:
        case Action::kReadAbstracts:
        case Action::kReadDashboard:
        case Action::kReadReviews:
        case Action::kReadReviewForm:
        case Action::kReadProgress:
        case Action::kReadOverviews:
        case Action::kRunDistribution:
        case Action::kRecordDecisions:
          return allow("chair.monitor-and-decide");
        default:
          return deny("chair.not-permitted");
      }

    case Role::kReviewer: {
      const ReviewerId& self = creds.subject;
      auto assigned = [&] {
        return subject.paper && data.assignment &&
               data.assignment->is_assigned(*subject.paper, self);
      };
      auto own = [&] { return !subject.reviewer || *subject.reviewer == self; };
      switch (action) {
        case Action::kReadPaper:
        case Action::kReadAbstracts:
        case Action::kReadProgress:
          return allow("reviewer.browse");
        case Action::kSubmitBids:
        case Action::kDeclareCoi:
        case Action::kUpdateProfile:
        case Action::kReadDashboard:
        case Action::kVolunteer:
          return own() ? allow("reviewer.own-profile") : deny("reviewer.own-profile-only");
        case Action::kReadPaperFile:
        case Action::kSubmitReview:
        case Action::kReadReviews:
        case Action::kReadReviewForm:
        case Action::kSendConflictMessage:
          return assigned() ? allow("reviewer.assigned-paper")
                            : deny("reviewer.assigned-papers-only");
        default:
          return deny("reviewer.not-permitted");
      }
    }

    case Role::kAuthorContact: {
      auto own_paper = [&] { return subject.paper && creds.paper() == subject.paper; };
      switch (action) {
        case Action::kReadPaper:
        case Action::kUpdatePaper:
        case Action::kUploadPaper:
        case Action::kReadPaperFile:
        case Action::kUploadCameraReady:
          return own_paper() ? allow("author.own-paper") : deny("author.own-paper-only");
        case Action::kReadReviews:
          return deny("author.reviews-via-notification");
        default:
          return deny("author.not-permitted");
      }
    }
  }
  return deny("unknown-role");
}

void require(const StoreData& data, const Credentials& creds, Action action,
             const AccessSubject& subject) {
  AccessDecision d = authorize(data, creds, action, subject);
  if (!d.allowed) {
    throw Error(ErrorKind::kForbidden,
                std::string("forbidden: ") + std::string(to_string(action)) + " (" + d.rule + ")",
                {d.rule});
  }
}

}  // namespace confreview
