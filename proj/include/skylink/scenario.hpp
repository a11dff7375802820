#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "skylink/location.hpp"
#include "skylink/types.hpp"
#include "skylink/world.hpp"

namespace skylink {

inline constexpr int kScenarioSchemaVersion = 1;

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

class UnknownReferenceError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

class SchemaVersionError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

// ---- attacker specifications ------------------------------------------

struct UnauthorizedUavSpec {
  NodeId node;
  SimTime at_ms = 0;
};

struct CredentialReplaySpec {
  Interface iface = Interface::U1;
  std::string capture_message = "AaRequest";
  SimTime capture_from_ms = 0;
  SimTime capture_window_ms = 0;
  SimTime replay_at_ms = 0;
};

// One message a fake USS injects. When steal_token is set the attacker is
// handed the victim's real issued token at injection time.
struct FakeUssInjection {
  std::string message = "AaResult";
  NodeId target;   // dst entity
  NodeId subject;  // victim node the forged message speaks about
  SimTime at_ms = 0;
  bool steal_token = false;
  std::string command;  // C2Payload only
};

struct FakeUssSpec {
  std::string forged_uss_id;
  std::vector<FakeUssInjection> injections;
};

struct LocationSpooferSpec {
  NodeId target;
  Vec3 offset;
  SimTime start_ms = 0;
};

enum class JamDirection { Uplink, Downlink, Both };

struct JammerSpec {
  Interface iface = Interface::U1;
  double drop_prob = 1.0;
  SimTime start_ms = 0;
  SimTime stop_ms = 0;
  JamDirection direction = JamDirection::Uplink;
};

struct EavesdropperSpec {
  Interface iface = Interface::U3;
};

struct MitmModifierSpec {
  Interface iface = Interface::U3;
  std::string message = "C2Payload";
  std::string set_command = "hijack";
  SimTime start_ms = 0;
};

struct C2DowngradeSpec {
  NodeId uav;
  NodeId uavc;
  double jam_intensity = 1.0;
  SimTime start_ms = 0;
  std::vector<Interface> listen = {Interface::U3, Interface::U9};
};

using AttackerKind = std::variant<UnauthorizedUavSpec, CredentialReplaySpec, FakeUssSpec,
                                  LocationSpooferSpec, JammerSpec, EavesdropperSpec,
                                  MitmModifierSpec, C2DowngradeSpec>;

struct AttackerSpec {
  std::string id;
  AttackerKind kind;
};

// ---- scenario ----------------------------------------------------------

struct NodeDecl {
  NodeId id;
  Vec3 position;
  Waypoints waypoints;
  double speed_mps = 0.0;
};

struct TpaeDecl {
  NodeId id;
  Vec3 position;
  double range_m = 5000.0;
};

struct IdentityDecl {
  NodeId node;
  std::string gpp3_uav_id;
  std::string caa_level_uav_id;
  std::string app_id;
  std::string served_uss;
};

struct SubscriptionDecl {
  NodeId node;
  bool aerial_allowed = true;
  std::string served_uss;
  std::string policy_blob;
};

struct UssDecl {
  NodeId id;
  std::vector<NodeId> authorized_nodes;
  std::vector<NodeId> known_controllers;
};

// Ordered workflow triggers.
struct StartAa {
  NodeId node;
};
struct RequestLocation {
  NodeId uss;
  std::string caa_id;
};
struct StartC2 {
  NodeId uav;
  NodeId uavc;
};
struct SetSpoof {
  NodeId node;
  Vec3 offset;
};
struct RogueSend {
  NodeId node;
  NodeId dst;
  std::string message = "C2Payload";
};
struct TpaeC2Override {
  NodeId tpae;
  NodeId uav;
  bool with_valid_token = false;
};

using ScriptAction =
    std::variant<StartAa, RequestLocation, StartC2, SetSpoof, RogueSend, TpaeC2Override>;

struct ScriptEntry {
  SimTime t = 0;
  ScriptAction action;
};

struct Timers {
  int channel_latency_default_ms = 10;
  std::map<Interface, int> channel_latency_ms;  // per-interface overrides
  int retx_timer_ms = 200;
  int max_retries = 5;
  int rid_period_ms = 1000;
  int c2_period_ms = 500;

  int latency(Interface i) const {
    auto it = channel_latency_ms.find(i);
    return it == channel_latency_ms.end() ? channel_latency_default_ms : it->second;
  }
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  SimTime horizon_ms = 10000;

  // world
  int tick_ms = 100;
  double noise_sigma_m = 0.0;
  double rid_range_m = 5000.0;
  C2Thresholds c2;
  double location_threshold_m = 50.0;
  std::vector<BaseStation> base_stations;

  // entities
  std::vector<NodeDecl> uavs;
  std::vector<NodeDecl> uavcs;
  std::vector<NodeId> uss_ids;  // derived from uss decls
  std::vector<UssDecl> uss;
  std::vector<TpaeDecl> tpae;

  // provisioning
  std::map<NodeId, std::string> credentials;
  std::vector<IdentityDecl> identities;
  std::vector<SubscriptionDecl> subscriptions;
  std::vector<std::string> valid_uss_list;
  std::map<std::string, NodeId> uss_directory;  // caa id -> uss
  std::map<NodeId, bool> privacy_allow;         // absent = allow
  bool secondary_auth_required = true;
  int extra_rounds = 0;
  std::map<std::string, NodeId> dnn_map;  // dnn -> smf ("default" key supported)

  Timers timers;
  std::vector<ScriptEntry> script;
  std::vector<AttackerSpec> attackers;

  // -- helpers
  bool is_uav(const NodeId& id) const;
  bool is_uavc(const NodeId& id) const;
  bool is_uss(const NodeId& id) const;
  const IdentityDecl* identity_of(const NodeId& node) const;
  const SubscriptionDecl* subscription_of(const NodeId& node) const;
};

// Parses and fully validates a scenario document. Throws ParseError,
// UnknownReferenceError or SchemaVersionError.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace skylink
