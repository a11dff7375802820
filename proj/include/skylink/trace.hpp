#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "skylink/types.hpp"

namespace skylink {

// Streaming SHA-256 (OpenSSL-backed).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t len);
  void update(const std::string& s) { update(s.data(), s.size()); }
  std::string hex_digest();  // finalizes

 private:
  void* ctx_;
};

std::string sha256_hex(const std::string& data);

enum class RecordKind {
  Send,
  Delivered,
  Dropped,
  Modified,
  Injected,
  StateChange,
  Anomaly,
  TimerFired,
  RunSummary,
};

const char* to_string(RecordKind k);

// Append-only event log of a run. Records are JSON objects, one per line;
// the final RunSummary line carries a SHA-256 hash of all prior lines
// (newlines included).
class TraceLog {
 public:
  // Returns the record seq assigned. Adds "rec", "t" and "kind" fields.
  std::uint64_t append(RecordKind kind, SimTime t, nlohmann::json fields);

  const std::vector<std::string>& lines() const { return lines_; }
  std::uint64_t next_rec() const { return next_rec_; }

  // Appends the RunSummary line (hash of everything appended so far).
  void finish(SimTime t, nlohmann::json summary_fields);
  bool finished() const { return finished_; }

  std::string joined() const;
  const std::string& final_hash() const { return final_hash_; }

  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> lines_;
  Sha256 running_;
  std::uint64_t next_rec_ = 0;
  bool finished_ = false;
  std::string final_hash_;
};

}  // namespace skylink
