#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "skylink/message.hpp"
#include "skylink/types.hpp"

namespace skylink {

enum class SessionState { Establishing, Active, Terminated };

const char* to_string(SessionState s);

struct SessionPolicy {
  SessionPolicyKind kind = SessionPolicyKind::RestrictedToUaaf;
  NodeId peer;          // C2Authorized only
  std::string address;  // C2Authorized only
};

struct PduSession {
  std::uint64_t session_id = 0;
  NodeId owner;
  std::string dnn_snssai;
  SessionPolicy policy;
  SessionState state = SessionState::Establishing;
};

// Only these policy walks are legal: RestrictedToUaaf -> OpenToUss ->
// C2Authorized, and any -> same or Terminated (termination is a state, not
// a policy; modeled via SessionState).
bool policy_transition_legal(SessionPolicyKind from, SessionPolicyKind to);

enum class GateDecision { Deliver, Block };

enum class BlockReason { None, PolicyViolation, SessionTerminated, SessionNotActive };

const char* to_string(BlockReason r);

struct GateResult {
  GateDecision decision = GateDecision::Block;
  BlockReason reason = BlockReason::None;
};

// Decides whether an owner-originated user-plane envelope may be carried by
// `session`. dst_kind is the entity kind of env.dst.
GateResult session_gate(const PduSession& session, const Envelope& env, EntityKind dst_kind);

// Pure policy predicate used by both the live gate and the offline
// verifier: may a session with this policy deliver owner traffic to dst?
bool policy_permits(const SessionPolicy& policy, const NodeId& dst, EntityKind dst_kind);

}  // namespace skylink
