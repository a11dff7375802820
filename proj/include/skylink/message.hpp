#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "skylink/identity.hpp"
#include "skylink/location.hpp"
#include "skylink/types.hpp"

namespace skylink {

enum class AaVerdict { Success, Denied };

enum class SessionPolicyKind { RestrictedToUaaf, OpenToUss, C2Authorized };

const char* to_string(AaVerdict v);
const char* to_string(SessionPolicyKind p);

// ---- workflow message vocabulary (closed sum) -------------------------

struct Registration {
  std::string credentials;
};

struct RegistrationResult {
  bool registered = false;
  std::string reason;
};

struct SessionRequest {
  std::string dnn;
  NodeId subject;
};

struct SessionAccept {
  bool accepted = false;
  std::uint64_t session_id = 0;
  SessionPolicyKind policy = SessionPolicyKind::RestrictedToUaaf;
  NodeId subject;
  std::string reason;
};

struct AaRequest {
  std::string caa_id;
  std::string uss_hint;
  std::string app_info;
};

struct SubscriptionQuery {
  NodeId ue;
  NodeId af;                 // requesting application function (UAAF)
  std::string gpp3_uav_id;   // filled by the BSF when binding the request
};

struct SubscriptionReply {
  NodeId ue;
  SubscriptionRecord record;
  std::string gpp3_uav_id;
};

struct AaForward {
  std::string gpp3_id;
  std::string caa_id;
  std::string app_info;
  std::string uss_id;  // explicit target when the directory has no entry
  NodeId subject;
  std::uint64_t aa_nonce = 0;
};

struct AaChallenge {
  int round = 0;
  NodeId subject;
  std::uint64_t aa_nonce = 0;
};

struct AaChallengeResponse {
  int round = 0;
  NodeId subject;
  std::uint64_t aa_nonce = 0;
};

struct AaResult {
  AaVerdict verdict = AaVerdict::Denied;
  std::string reason;
  std::string app_params;
  NodeId subject;
  std::string caa_id;
  std::string gpp3_id;
  std::string origin_uss;
  std::uint64_t aa_nonce = 0;
  bool advise_terminate = false;
};

struct SessionModify {
  std::uint64_t session_id = 0;
  SessionPolicyKind new_policy = SessionPolicyKind::OpenToUss;
  NodeId peer;               // C2Authorized only
  std::string peer_address;  // C2Authorized only
};

struct SessionTerminate {
  std::uint64_t session_id = 0;
  std::string reason;
};

struct FlightPermissionRequest {
  std::string caa_id;
  Location reported_location = AbsoluteLocation{};
  Waypoints trajectory;
};

struct LocationRequest {
  std::string caa_id;
  std::uint64_t req_id = 0;
};

struct LocateInvoke {
  NodeId ue;
  std::uint64_t req_id = 0;
};

struct PrivacyQuery {
  NodeId ue;
  std::uint64_t req_id = 0;
};

struct PrivacyReply {
  NodeId ue;
  bool allowed = false;
  std::string amf_addr;
  std::uint64_t req_id = 0;
};

struct PositioningRequest {
  NodeId ue;
  std::uint64_t req_id = 0;
  NodeId bs;  // empty until the AMF addresses a concrete NG-BS
};

struct PositioningMeasurement {
  NodeId bs_id;
  std::optional<Vec3> observed;  // nullopt = out of coverage
  NodeId ue;
  std::uint64_t req_id = 0;
};

struct LocationEstimateMsg {
  std::optional<Vec3> estimate;
  std::string error;
  NodeId ue;
  std::uint64_t req_id = 0;
  int sample_count = 0;
};

struct LocationReport {
  std::string caa_id;
  std::optional<Vec3> estimate;
  std::string error;
  std::uint64_t req_id = 0;
};

struct C2SessionRequest {
  std::string caa_id;
  std::string dnn_snssai;
  NodeId subject;
};

struct SecondaryAuthInvoke {
  NodeId subject;
  std::string gpp3_id;
  std::string caa_id;
  std::uint64_t session_id = 0;
};

struct SecondaryAuthResult {
  bool success = false;
  NodeId subject;
  std::string new_caa_id;
  std::uint64_t token = 0;
  std::uint64_t key_material = 0;
  std::string origin_uss;
  std::uint64_t session_id = 0;
  std::string reason;
};

struct C2SessionAccept {
  bool accepted = false;
  std::uint64_t session_id = 0;
  NodeId subject;
  std::string new_caa_id;
  std::uint64_t token = 0;
  std::uint64_t key_material = 0;
  std::string reason;
};

struct PairingRequest {
  std::string new_caa_id;
  NodeId uavc_id;
  std::string dnn;
  NodeId subject;
};

struct PairingAuthorization {
  bool authorized = false;
  NodeId uav;
  NodeId uavc;
  std::string uavc_address;
  std::uint64_t token = 0;
  std::uint64_t key_material = 0;
  std::string reason;
};

struct SecureSessionInit {
  std::uint64_t token = 0;
  NodeId initiator;
};

struct SecureSessionAck {
  NodeId responder;
};

struct C2Payload {
  std::string command;
  std::uint64_t tag = 0;
  bool tagged = false;
};

struct RidBroadcast {
  std::string caa_id;
  Location location = AbsoluteLocation{};
};

using Message = std::variant<
    Registration, RegistrationResult, SessionRequest, SessionAccept, AaRequest, SubscriptionQuery,
    SubscriptionReply, AaForward, AaChallenge, AaChallengeResponse, AaResult, SessionModify,
    SessionTerminate, FlightPermissionRequest, LocationRequest, LocateInvoke, PrivacyQuery,
    PrivacyReply, PositioningRequest, PositioningMeasurement, LocationEstimateMsg, LocationReport,
    C2SessionRequest, SecondaryAuthInvoke, SecondaryAuthResult, C2SessionAccept, PairingRequest,
    PairingAuthorization, SecureSessionInit, SecureSessionAck, C2Payload, RidBroadcast>;

const char* message_type_name(const Message& m);

// Short structured summary for trace records; omits empty fields.
nlohmann::json payload_summary(const Message& m);

// Messages that ride a PDU session when a UE originates them.
bool is_user_plane(const Message& m);

// A timestamped, sequence-numbered message on a named interface.
struct Envelope {
  std::uint64_t eseq = 0;
  SimTime send_time = 0;
  NodeId src;
  NodeId dst;
  Interface iface = Interface::Sbi;
  Message body = RegistrationResult{};
  std::optional<std::uint64_t> nonce;
  std::optional<std::uint64_t> session_id;
  std::uint64_t cause_eseq = 0;  // envelope being processed when this was sent; 0 = none
  bool injected = false;
  bool duplicate = false;
  bool modified = false;
};

}  // namespace skylink
