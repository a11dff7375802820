#include "skylink/message.hpp"

namespace skylink {

const char* to_string(AaVerdict v) { return v == AaVerdict::Success ? "Success" : "Denied"; }

const char* to_string(SessionPolicyKind p) {
  switch (p) {
    case SessionPolicyKind::RestrictedToUaaf: return "RestrictedToUaaf";
    case SessionPolicyKind::OpenToUss: return "OpenToUss";
    case SessionPolicyKind::C2Authorized: return "C2Authorized";
  }
  return "?";
}

namespace {

using json = nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json location_json(const Location& l) {
  if (const auto* a = std::get_if<AbsoluteLocation>(&l)) return vec_json(a->pos);
  const auto& r = std::get<RelativeLocation>(l);
  return json{{"cell", r.cell_id}, {"ta", r.tracking_area}};
}

void put(json& j, const char* key, const std::string& v) {
  if (!v.empty()) j[key] = v;
}

struct SummaryVisitor {
  json operator()(const Registration& m) const {
    return json{{"creds", m.credentials}};
  }
  json operator()(const RegistrationResult& m) const {
    json j{{"registered", m.registered}};
    put(j, "reason", m.reason);
    return j;
  }
  json operator()(const SessionRequest& m) const {
    json j{{"dnn", m.dnn}};
    put(j, "subject", m.subject);
    return j;
  }
  json operator()(const SessionAccept& m) const {
    json j{{"accepted", m.accepted}, {"session", m.session_id}, {"policy", to_string(m.policy)}};
    put(j, "subject", m.subject);
    put(j, "reason", m.reason);
    return j;
  }
  json operator()(const AaRequest& m) const {
    json j{{"caa", m.caa_id}};
    put(j, "uss_hint", m.uss_hint);
    put(j, "app", m.app_info);
    return j;
  }
  json operator()(const SubscriptionQuery& m) const {
    json j{{"ue", m.ue}, {"af", m.af}};
    put(j, "gpp3", m.gpp3_uav_id);
    return j;
  }
  json operator()(const SubscriptionReply& m) const {
    return json{{"ue", m.ue},
                {"aerial", m.record.aerial_allowed},
                {"served_uss", m.record.served_uss},
                {"gpp3", m.gpp3_uav_id}};
  }
  json operator()(const AaForward& m) const {
    json j{{"gpp3", m.gpp3_id}, {"caa", m.caa_id}, {"subject", m.subject}, {"nonce", m.aa_nonce}};
    put(j, "app", m.app_info);
    put(j, "uss", m.uss_id);
    return j;
  }
  json operator()(const AaChallenge& m) const {
    return json{{"round", m.round}, {"subject", m.subject}, {"nonce", m.aa_nonce}};
  }
  json operator()(const AaChallengeResponse& m) const {
    return json{{"round", m.round}, {"subject", m.subject}, {"nonce", m.aa_nonce}};
  }
  json operator()(const AaResult& m) const {
    json j{{"verdict", to_string(m.verdict)}, {"subject", m.subject}, {"nonce", m.aa_nonce}};
    put(j, "reason", m.reason);
    put(j, "app_params", m.app_params);
    put(j, "caa", m.caa_id);
    put(j, "gpp3", m.gpp3_id);
    put(j, "origin_uss", m.origin_uss);
    if (m.advise_terminate) j["advise_terminate"] = true;
    return j;
  }
  json operator()(const SessionModify& m) const {
    json j{{"session", m.session_id}, {"policy", to_string(m.new_policy)}};
    put(j, "peer", m.peer);
    put(j, "peer_address", m.peer_address);
    return j;
  }
  json operator()(const SessionTerminate& m) const {
    json j{{"session", m.session_id}};
    put(j, "reason", m.reason);
    return j;
  }
  json operator()(const FlightPermissionRequest& m) const {
    json traj = json::array();
    for (const auto& w : m.trajectory) traj.push_back(vec_json(w));
    return json{{"caa", m.caa_id}, {"reported", location_json(m.reported_location)},
                {"trajectory", traj}};
  }
  json operator()(const LocationRequest& m) const {
    return json{{"caa", m.caa_id}, {"req", m.req_id}};
  }
  json operator()(const LocateInvoke& m) const {
    return json{{"ue", m.ue}, {"req", m.req_id}};
  }
  json operator()(const PrivacyQuery& m) const {
    return json{{"ue", m.ue}, {"req", m.req_id}};
  }
  json operator()(const PrivacyReply& m) const {
    return json{{"ue", m.ue}, {"allowed", m.allowed}, {"amf", m.amf_addr}, {"req", m.req_id}};
  }
  json operator()(const PositioningRequest& m) const {
    json j{{"ue", m.ue}, {"req", m.req_id}};
    put(j, "bs", m.bs);
    return j;
  }
  json operator()(const PositioningMeasurement& m) const {
    json j{{"bs", m.bs_id}, {"ue", m.ue}, {"req", m.req_id}};
    if (m.observed) j["observed"] = vec_json(*m.observed);
    else j["out_of_coverage"] = true;
    return j;
  }
  json operator()(const LocationEstimateMsg& m) const {
    json j{{"ue", m.ue}, {"req", m.req_id}};
    if (m.estimate) {
      j["estimate"] = vec_json(*m.estimate);
      j["samples"] = m.sample_count;
    }
    put(j, "error", m.error);
    return j;
  }
  json operator()(const LocationReport& m) const {
    json j{{"caa", m.caa_id}, {"req", m.req_id}};
    if (m.estimate) j["estimate"] = vec_json(*m.estimate);
    put(j, "error", m.error);
    return j;
  }
  json operator()(const C2SessionRequest& m) const {
    return json{{"caa", m.caa_id}, {"dnn_snssai", m.dnn_snssai}, {"subject", m.subject}};
  }
  json operator()(const SecondaryAuthInvoke& m) const {
    return json{{"subject", m.subject}, {"gpp3", m.gpp3_id}, {"caa", m.caa_id},
                {"session", m.session_id}};
  }
  json operator()(const SecondaryAuthResult& m) const {
    json j{{"success", m.success}, {"subject", m.subject}, {"session", m.session_id}};
    put(j, "new_caa", m.new_caa_id);
    put(j, "origin_uss", m.origin_uss);
    put(j, "reason", m.reason);
    if (m.success) {
      j["token"] = m.token;
      j["key"] = m.key_material;
    }
    return j;
  }
  json operator()(const C2SessionAccept& m) const {
    json j{{"accepted", m.accepted}, {"session", m.session_id}, {"subject", m.subject}};
    put(j, "new_caa", m.new_caa_id);
    put(j, "reason", m.reason);
    if (m.token != 0) j["token"] = m.token;
    return j;
  }
  json operator()(const PairingRequest& m) const {
    json j{{"new_caa", m.new_caa_id}, {"uavc", m.uavc_id}, {"subject", m.subject}};
    put(j, "dnn", m.dnn);
    return j;
  }
  json operator()(const PairingAuthorization& m) const {
    json j{{"authorized", m.authorized}, {"uav", m.uav}, {"uavc", m.uavc}};
    put(j, "address", m.uavc_address);
    put(j, "reason", m.reason);
    if (m.token != 0) j["token"] = m.token;
    return j;
  }
  json operator()(const SecureSessionInit& m) const {
    return json{{"token", m.token}, {"initiator", m.initiator}};
  }
  json operator()(const SecureSessionAck& m) const {
    return json{{"responder", m.responder}};
  }
  json operator()(const C2Payload& m) const {
    json j{{"command", m.command}};
    if (m.tagged) j["tag"] = m.tag;
    return j;
  }
  json operator()(const RidBroadcast& m) const {
    return json{{"caa", m.caa_id}, {"location", location_json(m.location)}};
  }
};

}  // namespace

const char* message_type_name(const Message& m) {
  static const char* names[] = {
      "Registration",        "RegistrationResult",     "SessionRequest",
      "SessionAccept",       "AaRequest",              "SubscriptionQuery",
      "SubscriptionReply",   "AaForward",              "AaChallenge",
      "AaChallengeResponse", "AaResult",               "SessionModify",
      "SessionTerminate",    "FlightPermissionRequest", "LocationRequest",
      "LocateInvoke",        "PrivacyQuery",           "PrivacyReply",
      "PositioningRequest",  "PositioningMeasurement", "LocationEstimateMsg",
      "LocationReport",      "C2SessionRequest",       "SecondaryAuthInvoke",
      "SecondaryAuthResult", "C2SessionAccept",        "PairingRequest",
      "PairingAuthorization", "SecureSessionInit",     "SecureSessionAck",
      "C2Payload",           "RidBroadcast"};
  return names[m.index()];
}

nlohmann::json payload_summary(const Message& m) { return std::visit(SummaryVisitor{}, m); }

bool is_user_plane(const Message& m) {
  switch (m.index()) {
    case 4:   // AaRequest
    case 9:   // AaChallengeResponse
    case 13:  // FlightPermissionRequest
    case 28:  // SecureSessionInit
    case 29:  // SecureSessionAck
    case 30:  // C2Payload
      return true;
    default:
      return false;
  }
}

}  // namespace skylink
