#include "skylink/session.hpp"

namespace skylink {

const char* to_string(SessionState s) {
  switch (s) {
    case SessionState::Establishing: return "Establishing";
    case SessionState::Active: return "Active";
    case SessionState::Terminated: return "Terminated";
  }
  return "?";
}

const char* to_string(BlockReason r) {
  switch (r) {
    case BlockReason::None: return "none";
    case BlockReason::PolicyViolation: return "policy_violation";
    case BlockReason::SessionTerminated: return "session_terminated";
    case BlockReason::SessionNotActive: return "session_not_active";
  }
  return "?";
}

bool policy_transition_legal(SessionPolicyKind from, SessionPolicyKind to) {
  if (from == to) return true;
  if (from == SessionPolicyKind::RestrictedToUaaf) return to == SessionPolicyKind::OpenToUss;
  if (from == SessionPolicyKind::OpenToUss) return to == SessionPolicyKind::C2Authorized;
  return false;
}

bool policy_permits(const SessionPolicy& policy, const NodeId& dst, EntityKind dst_kind) {
  switch (policy.kind) {
    case SessionPolicyKind::RestrictedToUaaf:
      return dst_kind == EntityKind::Uaaf;
    case SessionPolicyKind::OpenToUss:
      return dst_kind == EntityKind::Uaaf || dst_kind == EntityKind::Ufes ||
             dst_kind == EntityKind::Uss;
    case SessionPolicyKind::C2Authorized:
      return dst_kind == EntityKind::Uaaf || dst_kind == EntityKind::Ufes ||
             dst_kind == EntityKind::Uss || dst == policy.peer;
  }
  return false;
}

GateResult session_gate(const PduSession& session, const Envelope& env, EntityKind dst_kind) {
  if (session.state == SessionState::Terminated)
    return {GateDecision::Block, BlockReason::SessionTerminated};
  if (session.state != SessionState::Active)
    return {GateDecision::Block, BlockReason::SessionNotActive};
  if (!policy_permits(session.policy, env.dst, dst_kind))
    return {GateDecision::Block, BlockReason::PolicyViolation};
  return {GateDecision::Deliver, BlockReason::None};
}

}  // namespace skylink
