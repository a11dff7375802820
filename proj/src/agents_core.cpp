#include <algorithm>

#include "skylink/agents.hpp"

namespace skylink {

using json = nlohmann::json;

// ---- AMF -------------------------------------------------------------------

AmfAgent::AmfAgent(NodeId id, const Scenario& sc)
    : Agent(std::move(id), EntityKind::Amf), credentials_(sc.credentials.begin(),
                                                          sc.credentials.end()) {
  for (const auto& [dnn, smf] : sc.dnn_map) dnn_map_[dnn] = smf;
}

NodeId AmfAgent::smf_for(const std::string& dnn) const {
  if (auto it = dnn_map_.find(dnn); it != dnn_map_.end()) return it->second;
  if (auto it = dnn_map_.find("default"); it != dnn_map_.end()) return it->second;
  return {};
}

void AmfAgent::handle_registration(Simulator& sim, const Envelope& env, const Registration& msg) {
  auto it = credentials_.find(env.src);
  const bool valid = it != credentials_.end() && it->second == msg.credentials;
  if (!valid) {
    sim.record_anomaly("registration_denied", id(), json{{"node", env.src}},
                       sim.attacker_of_node(env.src));
    sim.send(id(), env.src, Interface::U1, RegistrationResult{false, "bad_credentials"});
    return;
  }
  if (registered_.insert(env.src).second)
    sim.record_state_change(id(), "registered", json{{"node", env.src}});
  // Re-registration is idempotent.
  sim.send(id(), env.src, Interface::U1, RegistrationResult{true, ""});
}

void AmfAgent::on_message(Simulator& sim, const Envelope& env) {
  if (const auto* m = std::get_if<Registration>(&env.body)) {
    handle_registration(sim, env, *m);
  } else if (const auto* m = std::get_if<SessionRequest>(&env.body)) {
    if (!registered_.count(env.src)) {
      sim.send(id(), env.src, Interface::U1,
               SessionAccept{false, 0, SessionPolicyKind::RestrictedToUaaf, env.src,
                             "not_registered"});
      return;
    }
    SessionRequest fwd = *m;
    fwd.subject = env.src;
    sim.send(id(), smf_for(m->dnn), Interface::Sbi, fwd);
  } else if (const auto* m = std::get_if<SessionAccept>(&env.body)) {
    sim.send(id(), m->subject, Interface::U1, *m);
  } else if (const auto* m = std::get_if<C2SessionRequest>(&env.body)) {
    if (!registered_.count(env.src)) {
      sim.send(id(), env.src, Interface::U1,
               C2SessionAccept{false, 0, env.src, "", 0, 0, "not_registered"});
      return;
    }
    // The AMF picks the SMF from the DNN/S-NSSAI; no default fallback here.
    auto it = dnn_map_.find(m->dnn_snssai);
    if (it == dnn_map_.end()) {
      sim.send(id(), env.src, Interface::U1,
               C2SessionAccept{false, 0, env.src, "", 0, 0, "unknown_dnn"});
      return;
    }
    C2SessionRequest fwd = *m;
    fwd.subject = env.src;
    sim.send(id(), it->second, Interface::Sbi, fwd);
  } else if (const auto* m = std::get_if<C2SessionAccept>(&env.body)) {
    sim.send(id(), m->subject, Interface::U1, *m);
  } else if (const auto* m = std::get_if<PairingRequest>(&env.body)) {
    if (!registered_.count(env.src)) return;
    PairingRequest fwd = *m;
    fwd.subject = env.src;
    sim.send(id(), smf_for(m->dnn), Interface::Sbi, fwd);
  } else if (const auto* m = std::get_if<PositioningRequest>(&env.body)) {
    // Fan the positioning request out to every NG-BS.
    for (const auto& bs : sim.entities_of_kind(EntityKind::NgBs)) {
      PositioningRequest fwd = *m;
      fwd.bs = bs;
      sim.send(id(), bs, Interface::Sbi, fwd);
    }
  } else if (const auto* m = std::get_if<PositioningMeasurement>(&env.body)) {
    sim.send(id(), "lmf", Interface::Sbi, *m);
  }
}

// ---- SMF -------------------------------------------------------------------

SmfAgent::SmfAgent(NodeId id, const Scenario& sc)
    : Agent(std::move(id), EntityKind::Smf), secondary_auth_required_(sc.secondary_auth_required) {}

void SmfAgent::establish_plain_session(Simulator& sim, const Envelope& env,
                                       const SessionRequest& msg) {
  PduSession& s = sim.sessions().create(msg.subject, msg.dnn,
                                        SessionPolicyKind::RestrictedToUaaf, SessionState::Active);
  sim.record_state_change(id(), "session_created",
                          json{{"session", s.session_id},
                               {"owner", s.owner},
                               {"dnn", s.dnn_snssai},
                               {"policy", to_string(s.policy.kind)},
                               {"state", to_string(s.state)}});
  sim.send(id(), env.src, Interface::Sbi,
           SessionAccept{true, s.session_id, s.policy.kind, msg.subject, ""});
}

void SmfAgent::handle_c2_request(Simulator& sim, const Envelope& env, const C2SessionRequest& msg) {
  const auto* sub = sim.subscription_of(msg.subject);
  if (sub == nullptr) {
    sim.send(id(), env.src, Interface::Sbi,
             C2SessionAccept{false, 0, msg.subject, "", 0, 0, "no_subscription"});
    return;
  }
  const bool applicable = secondary_auth_required_ && sub->aerial_allowed;
  if (!applicable) {
    // Plain session without C2 rights.
    PduSession& s = sim.sessions().create(msg.subject, msg.dnn_snssai,
                                          SessionPolicyKind::OpenToUss, SessionState::Active);
    sim.record_state_change(id(), "session_created",
                            json{{"session", s.session_id},
                                 {"owner", s.owner},
                                 {"dnn", s.dnn_snssai},
                                 {"policy", to_string(s.policy.kind)},
                                 {"state", to_string(s.state)}});
    sim.send(id(), env.src, Interface::Sbi,
             C2SessionAccept{true, s.session_id, msg.subject, "", 0, 0, "not_applicable"});
    return;
  }
  PduSession& s = sim.sessions().create(msg.subject, msg.dnn_snssai, SessionPolicyKind::OpenToUss,
                                        SessionState::Establishing);
  sim.record_state_change(id(), "session_created",
                          json{{"session", s.session_id},
                               {"owner", s.owner},
                               {"dnn", s.dnn_snssai},
                               {"policy", to_string(s.policy.kind)},
                               {"state", to_string(s.state)}});
  pending_secondary_[msg.subject] = s.session_id;
  const auto* ident = sim.identity_of(msg.subject);
  sim.send(id(), "uaaf", Interface::Sbi,
           SecondaryAuthInvoke{msg.subject, ident ? ident->gpp3_uav_id : "", msg.caa_id,
                               s.session_id});
}

void SmfAgent::apply_modify(Simulator& sim, const Envelope& env, const SessionModify& msg) {
  PduSession* s = sim.sessions().find(msg.session_id);
  if (s == nullptr) {
    sim.record_anomaly("unknown_session", id(), json{{"session", msg.session_id}});
    return;
  }
  if (!policy_transition_legal(s->policy.kind, msg.new_policy)) {
    sim.record_anomaly("illegal_policy_transition", id(),
                       json{{"session", msg.session_id},
                            {"from", to_string(s->policy.kind)},
                            {"to", to_string(msg.new_policy)}});
    return;
  }
  s->policy.kind = msg.new_policy;
  s->policy.peer = msg.peer;
  s->policy.address = msg.peer_address;
  json f{{"session", s->session_id}, {"policy", to_string(s->policy.kind)}};
  if (!msg.peer.empty()) {
    f["peer"] = msg.peer;
    f["peer_address"] = msg.peer_address;
  }
  sim.record_state_change(id(), "session_policy", std::move(f));
}

void SmfAgent::terminate(Simulator& sim, std::uint64_t session_id, const std::string& reason) {
  PduSession* s = sim.sessions().find(session_id);
  if (s == nullptr || s->state == SessionState::Terminated) return;
  s->state = SessionState::Terminated;
  sim.record_state_change(id(), "session_state",
                          json{{"session", session_id},
                               {"state", to_string(s->state)},
                               {"reason", reason}});
}

void SmfAgent::on_message(Simulator& sim, const Envelope& env) {
  if (const auto* m = std::get_if<SessionRequest>(&env.body)) {
    establish_plain_session(sim, env, *m);
  } else if (const auto* m = std::get_if<C2SessionRequest>(&env.body)) {
    handle_c2_request(sim, env, *m);
  } else if (const auto* m = std::get_if<SecondaryAuthResult>(&env.body)) {
    auto it = pending_secondary_.find(m->subject);
    if (it == pending_secondary_.end()) {
      sim.record_anomaly("unsolicited_result_ignored", id(), json{{"subject", m->subject}},
                         sim.injected_by(env.eseq));
      return;
    }
    std::uint64_t sid = it->second;
    pending_secondary_.erase(it);
    if (!m->success) {
      terminate(sim, sid, "secondary_auth_denied");
      sim.send(id(), "amf", Interface::Sbi,
               C2SessionAccept{false, sid, m->subject, "", 0, 0, m->reason});
      return;
    }
    PduSession* s = sim.sessions().find(sid);
    if (s != nullptr && s->state == SessionState::Establishing) {
      s->state = SessionState::Active;
      sim.record_state_change(id(), "session_state",
                              json{{"session", sid}, {"state", to_string(s->state)}});
    }
    sim.send(id(), "amf", Interface::Sbi,
             C2SessionAccept{true, sid, m->subject, m->new_caa_id, m->token, m->key_material, ""});
  } else if (const auto* m = std::get_if<PairingRequest>(&env.body)) {
    if (env.src == "amf") {
      PduSession& s = sim.sessions().create(m->subject, m->dnn, SessionPolicyKind::OpenToUss,
                                            SessionState::Establishing);
      sim.record_state_change(id(), "session_created",
                              json{{"session", s.session_id},
                                   {"owner", s.owner},
                                   {"dnn", s.dnn_snssai},
                                   {"policy", to_string(s.policy.kind)},
                                   {"state", to_string(s.state)}});
      pending_pairing_[m->subject] = s.session_id;
      sim.send(id(), "ufes", Interface::Sbi, *m);
    }
  } else if (const auto* m = std::get_if<PairingAuthorization>(&env.body)) {
    auto it = pending_pairing_.find(m->uav);
    if (it == pending_pairing_.end()) {
      sim.record_anomaly("unsolicited_result_ignored", id(), json{{"subject", m->uav}},
                         sim.injected_by(env.eseq));
      return;
    }
    std::uint64_t sid = it->second;
    pending_pairing_.erase(it);
    if (!m->authorized) {
      terminate(sim, sid, "pairing_denied");
      sim.send(id(), "amf", Interface::Sbi,
               C2SessionAccept{false, sid, m->uav, "", 0, 0, m->reason});
      return;
    }
    PduSession* s = sim.sessions().find(sid);
    if (s != nullptr) {
      s->policy.kind = SessionPolicyKind::C2Authorized;
      s->policy.peer = m->uavc;
      s->policy.address = m->uavc_address;
      s->state = SessionState::Active;
      sim.record_state_change(id(), "session_policy",
                              json{{"session", sid},
                                   {"policy", to_string(s->policy.kind)},
                                   {"peer", m->uavc},
                                   {"peer_address", m->uavc_address}});
      sim.record_state_change(id(), "session_state",
                              json{{"session", sid}, {"state", to_string(s->state)}});
      sim.register_c2_pair(m->uav, m->uavc);
    }
    sim.send(id(), "amf", Interface::Sbi, C2SessionAccept{true, sid, m->uav, "", 0, 0, ""});
  } else if (const auto* m = std::get_if<SessionModify>(&env.body)) {
    apply_modify(sim, env, *m);
  } else if (const auto* m = std::get_if<SessionTerminate>(&env.body)) {
    terminate(sim, m->session_id, m->reason);
  }
}

// ---- PCF -------------------------------------------------------------------

PcfAgent::PcfAgent(NodeId id, const Scenario&) : Agent(std::move(id), EntityKind::Pcf) {}

void PcfAgent::on_message(Simulator& sim, const Envelope& env) {
  const auto* q = std::get_if<SubscriptionQuery>(&env.body);
  if (q == nullptr) return;
  SubscriptionRecord rec;
  rec.plmn_ue_id = q->ue;
  if (const auto* sub = sim.subscription_of(q->ue)) {
    rec.aerial_allowed = sub->aerial_allowed;
    rec.served_uss = sub->served_uss;
    rec.policy_blob = sub->policy_blob;
  }
  std::string gpp3 = q->gpp3_uav_id;
  if (gpp3.empty()) {
    if (const auto* ident = sim.identity_of(q->ue)) gpp3 = ident->gpp3_uav_id;
  }
  sim.send(id(), q->af, Interface::Sbi, SubscriptionReply{q->ue, rec, gpp3});
}

// ---- BSF -------------------------------------------------------------------

BsfAgent::BsfAgent(NodeId id, const Scenario&) : Agent(std::move(id), EntityKind::Bsf) {}

void BsfAgent::on_message(Simulator& sim, const Envelope& env) {
  const auto* q = std::get_if<SubscriptionQuery>(&env.body);
  if (q == nullptr) return;
  af_bindings_[q->af] = q->ue;
  SubscriptionQuery bound = *q;
  // The 3GPP UAV ID travels with the bound request.
  if (const auto* ident = sim.identity_of(q->ue)) bound.gpp3_uav_id = ident->gpp3_uav_id;
  sim.send(id(), pcf_id_, Interface::Sbi, bound);
}

// ---- UDM -------------------------------------------------------------------

UdmAgent::UdmAgent(NodeId id, const Scenario& sc)
    : Agent(std::move(id), EntityKind::Udm),
      privacy_allow_(sc.privacy_allow.begin(), sc.privacy_allow.end()) {}

void UdmAgent::on_message(Simulator& sim, const Envelope& env) {
  const auto* q = std::get_if<PrivacyQuery>(&env.body);
  if (q == nullptr) return;
  bool allowed = true;  // privacy settings default to allow
  if (auto it = privacy_allow_.find(q->ue); it != privacy_allow_.end()) allowed = it->second;
  sim.send(id(), env.src, Interface::Sbi, PrivacyReply{q->ue, allowed, "amf", q->req_id});
}

// ---- GMLC -------------------------------------------------------------------

GmlcAgent::GmlcAgent(NodeId id, const Scenario&) : Agent(std::move(id), EntityKind::Gmlc) {}

void GmlcAgent::on_message(Simulator& sim, const Envelope& env) {
  if (const auto* m = std::get_if<LocateInvoke>(&env.body)) {
    if (!sim.has_entity(m->ue)) {
      sim.send(id(), "ucf", Interface::Sbi,
               LocationEstimateMsg{std::nullopt, "ue_unknown", m->ue, m->req_id, 0});
      return;
    }
    pending_[m->req_id] = m->ue;
    sim.send(id(), "udm", Interface::Sbi, PrivacyQuery{m->ue, m->req_id});
  } else if (const auto* m = std::get_if<PrivacyReply>(&env.body)) {
    auto it = pending_.find(m->req_id);
    if (it == pending_.end()) return;
    if (!m->allowed) {
      pending_.erase(it);
      sim.send(id(), "ucf", Interface::Sbi,
               LocationEstimateMsg{std::nullopt, "privacy_denied", m->ue, m->req_id, 0});
      return;
    }
    sim.send(id(), "lmf", Interface::Sbi, PositioningRequest{m->ue, m->req_id, ""});
  } else if (const auto* m = std::get_if<LocationEstimateMsg>(&env.body)) {
    pending_.erase(m->req_id);
    sim.send(id(), "ucf", Interface::Sbi, *m);
  }
}

// ---- LMF -------------------------------------------------------------------

LmfAgent::LmfAgent(NodeId id, const Scenario&) : Agent(std::move(id), EntityKind::Lmf) {}

void LmfAgent::on_message(Simulator& sim, const Envelope& env) {
  if (const auto* m = std::get_if<PositioningRequest>(&env.body)) {
    auto stations = sim.entities_of_kind(EntityKind::NgBs);
    if (stations.empty()) {
      sim.send(id(), "gmlc", Interface::Sbi,
               LocationEstimateMsg{std::nullopt, "no_coverage", m->ue, m->req_id, 0});
      return;
    }
    pending_[m->req_id] = Pending{m->ue, stations.size(), {}, 0};
    sim.send(id(), "amf", Interface::Sbi, PositioningRequest{m->ue, m->req_id, ""});
  } else if (const auto* m = std::get_if<PositioningMeasurement>(&env.body)) {
    auto it = pending_.find(m->req_id);
    if (it == pending_.end()) return;
    Pending& p = it->second;
    ++p.replies;
    if (m->observed) p.measurements.push_back(*m->observed);
    if (p.replies < p.expected) return;

    if (p.measurements.empty()) {
      sim.send(id(), "gmlc", Interface::Sbi,
               LocationEstimateMsg{std::nullopt, "no_coverage", p.ue, m->req_id, 0});
    } else {
      Vec3 sum;
      for (const auto& v : p.measurements) sum = sum + v;
      Vec3 estimate = sum * (1.0 / static_cast<double>(p.measurements.size()));
      const Vec3 truth = sim.world().node(p.ue).position;
      sim.record_state_change(id(), "location_estimate",
                              json{{"node", p.ue},
                                   {"req", m->req_id},
                                   {"estimate", json::array({estimate.x, estimate.y, estimate.z})},
                                   {"truth", json::array({truth.x, truth.y, truth.z})},
                                   {"samples", p.measurements.size()}});
      sim.send(id(), "gmlc", Interface::Sbi,
               LocationEstimateMsg{estimate, "", p.ue, m->req_id,
                                   static_cast<int>(p.measurements.size())});
    }
    pending_.erase(it);
  }
}

// ---- NG-BS -------------------------------------------------------------------

NgBsAgent::NgBsAgent(NodeId id, BaseStation bs)
    : Agent(std::move(id), EntityKind::NgBs), bs_(std::move(bs)) {}

void NgBsAgent::on_message(Simulator& sim, const Envelope& env) {
  const auto* m = std::get_if<PositioningRequest>(&env.body);
  if (m == nullptr) return;
  if (!sim.world().has_node(m->ue)) {
    sim.send(id(), "amf", Interface::Sbi,
             PositioningMeasurement{id(), std::nullopt, m->ue, m->req_id});
    return;
  }
  const Vec3 truth = sim.world().node(m->ue).position;
  auto observed = sim.world().ngbs_measure(bs_, truth, sim.rng());
  sim.send(id(), "amf", Interface::Sbi, PositioningMeasurement{id(), observed, m->ue, m->req_id});
}

}  // namespace skylink
