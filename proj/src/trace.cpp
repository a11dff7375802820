#include "skylink/trace.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <stdexcept>

namespace skylink {

Sha256::Sha256() {
  auto* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  ctx_ = ctx;
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

void Sha256::update(const void* data, std::size_t len) {
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data, len);
}

std::string Sha256::hex_digest() {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_hex(const std::string& data) {
  Sha256 h;
  h.update(data);
  return h.hex_digest();
}

const char* to_string(RecordKind k) {
  switch (k) {
    case RecordKind::Send: return "Send";
    case RecordKind::Delivered: return "Delivered";
    case RecordKind::Dropped: return "Dropped";
    case RecordKind::Modified: return "Modified";
    case RecordKind::Injected: return "Injected";
    case RecordKind::StateChange: return "StateChange";
    case RecordKind::Anomaly: return "Anomaly";
    case RecordKind::TimerFired: return "TimerFired";
    case RecordKind::RunSummary: return "RunSummary";
  }
  return "?";
}

std::uint64_t TraceLog::append(RecordKind kind, SimTime t, nlohmann::json fields) {
  if (finished_) throw std::logic_error("trace already finished");
  std::uint64_t rec = next_rec_++;
  fields["rec"] = rec;
  fields["t"] = t;
  fields["kind"] = to_string(kind);
  std::string line = fields.dump();
  running_.update(line);
  running_.update("\n", 1);
  lines_.push_back(std::move(line));
  return rec;
}

void TraceLog::finish(SimTime t, nlohmann::json summary_fields) {
  if (finished_) return;
  final_hash_ = running_.hex_digest();
  summary_fields["rec"] = next_rec_++;
  summary_fields["t"] = t;
  summary_fields["kind"] = to_string(RecordKind::RunSummary);
  summary_fields["hash"] = final_hash_;
  lines_.push_back(summary_fields.dump());
  finished_ = true;
}

std::string TraceLog::joined() const {
  std::string out;
  std::size_t total = 0;
  for (const auto& l : lines_) total += l.size() + 1;
  out.reserve(total);
  for (const auto& l : lines_) {
    out += l;
    out += '\n';
  }
  return out;
}

void TraceLog::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open trace file for writing: " + path);
  f << joined();
}

}  // namespace skylink
