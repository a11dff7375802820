#include "skylink/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace skylink {

namespace {

using json = nlohmann::json;

const json& require(const json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + std::string(key) + "' in " + ctx);
  return *it;
}

Vec3 vec_from(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected [x,y,z] in " + ctx);
  Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (!v.finite()) throw ParseError("non-finite coordinates in " + ctx);
  return v;
}

json vec_to(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Interface iface_from(const json& j, const std::string& ctx) {
  auto i = interface_from_string(j.get<std::string>());
  if (!i) throw ParseError("unknown interface '" + j.get<std::string>() + "' in " + ctx);
  return *i;
}

NodeDecl node_decl_from(const json& j, const std::string& ctx) {
  NodeDecl n;
  n.id = require(j, "id", ctx).get<std::string>();
  n.position = vec_from(require(j, "position", ctx), ctx + "/" + n.id);
  n.speed_mps = j.value("speed_mps", 0.0);
  if (auto it = j.find("waypoints"); it != j.end())
    for (const auto& w : *it) n.waypoints.push_back(vec_from(w, ctx + "/waypoints"));
  return n;
}

json node_decl_to(const NodeDecl& n) {
  json j{{"id", n.id}, {"position", vec_to(n.position)}};
  if (n.speed_mps != 0.0) j["speed_mps"] = n.speed_mps;
  if (!n.waypoints.empty()) {
    json w = json::array();
    for (const auto& p : n.waypoints) w.push_back(vec_to(p));
    j["waypoints"] = w;
  }
  return j;
}

AttackerSpec attacker_from(const json& j) {
  AttackerSpec a;
  a.id = require(j, "id", "attacker").get<std::string>();
  const std::string ctx = "attacker " + a.id;
  const std::string kind = require(j, "kind", ctx).get<std::string>();
  if (kind == "UnauthorizedUav") {
    UnauthorizedUavSpec s;
    s.node = require(j, "node", ctx).get<std::string>();
    s.at_ms = j.value("at_ms", 0);
    a.kind = s;
  } else if (kind == "CredentialReplay") {
    CredentialReplaySpec s;
    s.iface = iface_from(require(j, "interface", ctx), ctx);
    s.capture_message = j.value("capture_message", "AaRequest");
    s.capture_from_ms = j.value("capture_from_ms", 0);
    s.capture_window_ms = require(j, "capture_window_ms", ctx).get<SimTime>();
    s.replay_at_ms = require(j, "replay_at_ms", ctx).get<SimTime>();
    a.kind = s;
  } else if (kind == "FakeUss") {
    FakeUssSpec s;
    s.forged_uss_id = require(j, "forged_uss_id", ctx).get<std::string>();
    for (const auto& inj : require(j, "injections", ctx)) {
      FakeUssInjection f;
      f.message = require(inj, "message", ctx).get<std::string>();
      f.target = require(inj, "target", ctx).get<std::string>();
      f.subject = inj.value("subject", "");
      f.at_ms = require(inj, "at_ms", ctx).get<SimTime>();
      f.steal_token = inj.value("steal_token", false);
      f.command = inj.value("command", "");
      s.injections.push_back(std::move(f));
    }
    a.kind = s;
  } else if (kind == "LocationSpoofer") {
    LocationSpooferSpec s;
    s.target = require(j, "target", ctx).get<std::string>();
    s.offset = vec_from(require(j, "offset", ctx), ctx);
    s.start_ms = j.value("start_ms", 0);
    a.kind = s;
  } else if (kind == "Jammer") {
    JammerSpec s;
    s.iface = iface_from(require(j, "interface", ctx), ctx);
    s.drop_prob = require(j, "drop_prob", ctx).get<double>();
    s.start_ms = j.value("start_ms", 0);
    s.stop_ms = require(j, "stop_ms", ctx).get<SimTime>();
    const std::string dir = j.value("direction", "uplink");
    if (dir == "uplink") s.direction = JamDirection::Uplink;
    else if (dir == "downlink") s.direction = JamDirection::Downlink;
    else if (dir == "both") s.direction = JamDirection::Both;
    else throw ParseError("bad jam direction '" + dir + "' in " + ctx);
    a.kind = s;
  } else if (kind == "Eavesdropper") {
    EavesdropperSpec s;
    s.iface = iface_from(require(j, "interface", ctx), ctx);
    a.kind = s;
  } else if (kind == "MitmModifier") {
    MitmModifierSpec s;
    s.iface = iface_from(require(j, "interface", ctx), ctx);
    s.message = j.value("message", "C2Payload");
    s.set_command = j.value("set_command", "hijack");
    s.start_ms = j.value("start_ms", 0);
    a.kind = s;
  } else if (kind == "C2Downgrade") {
    C2DowngradeSpec s;
    s.uav = require(j, "uav", ctx).get<std::string>();
    s.uavc = require(j, "uavc", ctx).get<std::string>();
    s.jam_intensity = j.value("jam_intensity", 1.0);
    s.start_ms = j.value("start_ms", 0);
    if (auto it = j.find("listen"); it != j.end()) {
      s.listen.clear();
      for (const auto& l : *it) s.listen.push_back(iface_from(l, ctx));
    }
    a.kind = s;
  } else {
    throw ParseError("unknown attacker kind '" + kind + "' in " + ctx);
  }
  return a;
}

json attacker_to(const AttackerSpec& a) {
  json j{{"id", a.id}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UnauthorizedUavSpec>) {
          j["kind"] = "UnauthorizedUav";
          j["node"] = s.node;
          j["at_ms"] = s.at_ms;
        } else if constexpr (std::is_same_v<T, CredentialReplaySpec>) {
          j["kind"] = "CredentialReplay";
          j["interface"] = to_string(s.iface);
          j["capture_message"] = s.capture_message;
          j["capture_from_ms"] = s.capture_from_ms;
          j["capture_window_ms"] = s.capture_window_ms;
          j["replay_at_ms"] = s.replay_at_ms;
        } else if constexpr (std::is_same_v<T, FakeUssSpec>) {
          j["kind"] = "FakeUss";
          j["forged_uss_id"] = s.forged_uss_id;
          json inj = json::array();
          for (const auto& f : s.injections) {
            json fj{{"message", f.message}, {"target", f.target}, {"at_ms", f.at_ms}};
            if (!f.subject.empty()) fj["subject"] = f.subject;
            if (f.steal_token) fj["steal_token"] = true;
            if (!f.command.empty()) fj["command"] = f.command;
            inj.push_back(std::move(fj));
          }
          j["injections"] = inj;
        } else if constexpr (std::is_same_v<T, LocationSpooferSpec>) {
          j["kind"] = "LocationSpoofer";
          j["target"] = s.target;
          j["offset"] = vec_to(s.offset);
          j["start_ms"] = s.start_ms;
        } else if constexpr (std::is_same_v<T, JammerSpec>) {
          j["kind"] = "Jammer";
          j["interface"] = to_string(s.iface);
          j["drop_prob"] = s.drop_prob;
          j["start_ms"] = s.start_ms;
          j["stop_ms"] = s.stop_ms;
          j["direction"] = s.direction == JamDirection::Uplink     ? "uplink"
                           : s.direction == JamDirection::Downlink ? "downlink"
                                                                   : "both";
        } else if constexpr (std::is_same_v<T, EavesdropperSpec>) {
          j["kind"] = "Eavesdropper";
          j["interface"] = to_string(s.iface);
        } else if constexpr (std::is_same_v<T, MitmModifierSpec>) {
          j["kind"] = "MitmModifier";
          j["interface"] = to_string(s.iface);
          j["message"] = s.message;
          j["set_command"] = s.set_command;
          j["start_ms"] = s.start_ms;
        } else if constexpr (std::is_same_v<T, C2DowngradeSpec>) {
          j["kind"] = "C2Downgrade";
          j["uav"] = s.uav;
          j["uavc"] = s.uavc;
          j["jam_intensity"] = s.jam_intensity;
          j["start_ms"] = s.start_ms;
          json l = json::array();
          for (auto i : s.listen) l.push_back(to_string(i));
          j["listen"] = l;
        }
      },
      a.kind);
  return j;
}

ScriptEntry script_from(const json& j) {
  ScriptEntry e;
  e.t = require(j, "t", "script entry").get<SimTime>();
  const std::string action = require(j, "action", "script entry").get<std::string>();
  const std::string ctx = "script action " + action;
  if (action == "start_aa") {
    e.action = StartAa{require(j, "node", ctx).get<std::string>()};
  } else if (action == "request_location") {
    e.action = RequestLocation{require(j, "uss", ctx).get<std::string>(),
                               require(j, "caa_id", ctx).get<std::string>()};
  } else if (action == "start_c2") {
    e.action = StartC2{require(j, "uav", ctx).get<std::string>(),
                       require(j, "uavc", ctx).get<std::string>()};
  } else if (action == "set_spoof") {
    e.action = SetSpoof{require(j, "node", ctx).get<std::string>(),
                        vec_from(require(j, "offset", ctx), ctx)};
  } else if (action == "rogue_send") {
    e.action = RogueSend{require(j, "node", ctx).get<std::string>(),
                         require(j, "dst", ctx).get<std::string>(),
                         j.value("message", "C2Payload")};
  } else if (action == "tpae_c2_override") {
    e.action = TpaeC2Override{require(j, "tpae", ctx).get<std::string>(),
                              require(j, "uav", ctx).get<std::string>(),
                              j.value("with_valid_token", false)};
  } else {
    throw ParseError("unknown script action '" + action + "'");
  }
  return e;
}

json script_to(const ScriptEntry& e) {
  json j{{"t", e.t}};
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, StartAa>) {
          j["action"] = "start_aa";
          j["node"] = a.node;
        } else if constexpr (std::is_same_v<T, RequestLocation>) {
          j["action"] = "request_location";
          j["uss"] = a.uss;
          j["caa_id"] = a.caa_id;
        } else if constexpr (std::is_same_v<T, StartC2>) {
          j["action"] = "start_c2";
          j["uav"] = a.uav;
          j["uavc"] = a.uavc;
        } else if constexpr (std::is_same_v<T, SetSpoof>) {
          j["action"] = "set_spoof";
          j["node"] = a.node;
          j["offset"] = vec_to(a.offset);
        } else if constexpr (std::is_same_v<T, RogueSend>) {
          j["action"] = "rogue_send";
          j["node"] = a.node;
          j["dst"] = a.dst;
          j["message"] = a.message;
        } else if constexpr (std::is_same_v<T, TpaeC2Override>) {
          j["action"] = "tpae_c2_override";
          j["tpae"] = a.tpae;
          j["uav"] = a.uav;
          j["with_valid_token"] = a.with_valid_token;
        }
      },
      e.action);
  return j;
}

const std::set<std::string> kReservedIds = {"amf", "smf", "pcf",  "bsf", "udm",
                                            "gmlc", "lmf", "ufes", "uaaf", "ucf"};

void validate(const Scenario& s) {
  if (s.horizon_ms <= 0) throw ParseError("horizon_ms must be positive");

  std::set<NodeId> declared;
  auto declare = [&](const NodeId& id, const char* what) {
    if (id.empty()) throw ParseError(std::string("empty id in ") + what);
    if (kReservedIds.count(id))
      throw ParseError("id '" + id + "' collides with a reserved core NF id");
    if (!declared.insert(id).second) throw ParseError("duplicate entity id '" + id + "'");
  };
  for (const auto& n : s.uavs) declare(n.id, "uavs");
  for (const auto& n : s.uavcs) declare(n.id, "uavcs");
  for (const auto& u : s.uss) declare(u.id, "uss");
  for (const auto& t : s.tpae) declare(t.id, "tpae");
  for (const auto& b : s.base_stations) {
    declare(b.id, "base_stations");
    if (b.coverage_radius_m <= 0.0)
      throw ParseError("coverage_radius_m must be positive for " + b.id);
  }

  auto known = [&](const NodeId& id) { return declared.count(id) != 0; };
  auto check_ref = [&](const NodeId& id, const std::string& where) {
    if (!known(id)) throw UnknownReferenceError("unknown id '" + id + "' referenced by " + where);
  };

  std::set<NodeId> ue_ids;
  for (const auto& n : s.uavs) ue_ids.insert(n.id);
  for (const auto& n : s.uavcs) ue_ids.insert(n.id);

  for (const auto& [node, cred] : s.credentials) check_ref(node, "credentials");
  std::set<std::string> caa_seen;
  for (const auto& i : s.identities) {
    check_ref(i.node, "identities");
    if (!i.served_uss.empty()) check_ref(i.served_uss, "identity of " + i.node);
    if (!caa_seen.insert(i.caa_level_uav_id).second)
      throw ParseError("duplicate CAA id '" + i.caa_level_uav_id + "' in identities");
  }
  for (const auto& sub : s.subscriptions) {
    check_ref(sub.node, "subscriptions");
    if (!sub.served_uss.empty()) check_ref(sub.served_uss, "subscription of " + sub.node);
  }
  for (const auto& u : s.valid_uss_list) check_ref(u, "valid_uss_list");
  for (const auto& [caa, uss] : s.uss_directory) check_ref(uss, "uss_directory");
  for (const auto& [node, allow] : s.privacy_allow) check_ref(node, "privacy");
  for (const auto& u : s.uss) {
    for (const auto& n : u.authorized_nodes) check_ref(n, "uss " + u.id + " authorized_nodes");
    for (const auto& n : u.known_controllers) check_ref(n, "uss " + u.id + " known_controllers");
  }
  for (const auto& [dnn, smf] : s.dnn_map)
    if (smf != "smf") throw UnknownReferenceError("dnn_map must target the core 'smf'");

  for (const auto& e : s.script) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, StartAa>) check_ref(a.node, "start_aa");
          else if constexpr (std::is_same_v<T, RequestLocation>) check_ref(a.uss, "request_location");
          else if constexpr (std::is_same_v<T, StartC2>) {
            check_ref(a.uav, "start_c2");
            check_ref(a.uavc, "start_c2");
          } else if constexpr (std::is_same_v<T, SetSpoof>) check_ref(a.node, "set_spoof");
          else if constexpr (std::is_same_v<T, RogueSend>) {
            check_ref(a.node, "rogue_send");
            if (!known(a.dst) && a.dst != "uaaf")
              throw UnknownReferenceError("unknown id '" + a.dst + "' referenced by rogue_send");
            static const std::set<std::string> kinds = {"AaRequest", "FlightPermissionRequest",
                                                        "C2Payload"};
            if (!kinds.count(a.message))
              throw ParseError("rogue_send message must be one of AaRequest, "
                               "FlightPermissionRequest, C2Payload");
          } else if constexpr (std::is_same_v<T, TpaeC2Override>) {
            check_ref(a.tpae, "tpae_c2_override");
            check_ref(a.uav, "tpae_c2_override");
          }
        },
        e.action);
  }

  std::set<std::string> attacker_ids;
  for (const auto& a : s.attackers) {
    if (!attacker_ids.insert(a.id).second)
      throw ParseError("duplicate attacker id '" + a.id + "'");
    std::visit(
        [&](const auto& spec) {
          using T = std::decay_t<decltype(spec)>;
          const std::string where = "attacker " + a.id;
          if constexpr (std::is_same_v<T, UnauthorizedUavSpec>) {
            check_ref(spec.node, where);
          } else if constexpr (std::is_same_v<T, CredentialReplaySpec>) {
            if (spec.iface == Interface::Sbi) throw ParseError(where + ": Sbi is not tappable");
            if (spec.capture_window_ms < 0) throw ParseError(where + ": bad capture window");
          } else if constexpr (std::is_same_v<T, FakeUssSpec>) {
            if (known(spec.forged_uss_id) || kReservedIds.count(spec.forged_uss_id))
              throw ParseError(where + ": forged_uss_id must not be a real entity");
            for (const auto& f : spec.injections) {
              if (!known(f.target) && !kReservedIds.count(f.target))
                throw UnknownReferenceError("unknown id '" + f.target + "' referenced by " + where);
              if (!f.subject.empty()) check_ref(f.subject, where);
            }
          } else if constexpr (std::is_same_v<T, LocationSpooferSpec>) {
            check_ref(spec.target, where);
          } else if constexpr (std::is_same_v<T, JammerSpec>) {
            if (spec.iface == Interface::Sbi) throw ParseError(where + ": Sbi is not tappable");
            if (spec.drop_prob < 0.0 || spec.drop_prob > 1.0)
              throw ParseError(where + ": drop_prob must be in [0,1]");
            if (spec.stop_ms < spec.start_ms) throw ParseError(where + ": jam window ill-ordered");
          } else if constexpr (std::is_same_v<T, EavesdropperSpec>) {
            if (spec.iface == Interface::Sbi) throw ParseError(where + ": Sbi is not tappable");
          } else if constexpr (std::is_same_v<T, MitmModifierSpec>) {
            if (spec.iface == Interface::Sbi) throw ParseError(where + ": Sbi is not tappable");
          } else if constexpr (std::is_same_v<T, C2DowngradeSpec>) {
            check_ref(spec.uav, where);
            check_ref(spec.uavc, where);
            for (auto i : spec.listen)
              if (i == Interface::Sbi) throw ParseError(where + ": Sbi is not tappable");
          }
        },
        a.kind);
  }

  if (s.c2.t_direct <= s.c2.t_assisted || s.c2.t_direct >= 1.0 || s.c2.t_assisted <= 0.0)
    throw ParseError("c2 thresholds must satisfy 1 > t_direct > t_assisted > 0");
  if (s.c2.hysteresis < 0.0) throw ParseError("c2 hysteresis must be >= 0");
}

}  // namespace

bool Scenario::is_uav(const NodeId& id) const {
  return std::any_of(uavs.begin(), uavs.end(), [&](const NodeDecl& n) { return n.id == id; });
}

bool Scenario::is_uavc(const NodeId& id) const {
  return std::any_of(uavcs.begin(), uavcs.end(), [&](const NodeDecl& n) { return n.id == id; });
}

bool Scenario::is_uss(const NodeId& id) const {
  return std::any_of(uss.begin(), uss.end(), [&](const UssDecl& u) { return u.id == id; });
}

const IdentityDecl* Scenario::identity_of(const NodeId& node) const {
  for (const auto& i : identities)
    if (i.node == node) return &i;
  return nullptr;
}

const SubscriptionDecl* Scenario::subscription_of(const NodeId& node) const {
  for (const auto& s : subscriptions)
    if (s.node == node) return &s;
  return nullptr;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  if (!j.is_object()) throw ParseError("scenario document must be a JSON object");
  if (!j.contains("schema_version")) throw SchemaVersionError("schema_version field missing");
  s.schema_version = j["schema_version"].get<int>();
  if (s.schema_version != kScenarioSchemaVersion)
    throw SchemaVersionError("unsupported schema_version " + std::to_string(s.schema_version));

  s.name = j.value("name", "unnamed");
  s.horizon_ms = require(j, "horizon_ms", "scenario").get<SimTime>();

  if (auto it = j.find("world"); it != j.end()) {
    const json& w = *it;
    s.tick_ms = w.value("tick_ms", 100);
    s.noise_sigma_m = w.value("noise_sigma_m", 0.0);
    s.rid_range_m = w.value("rid_range_m", 5000.0);
    if (auto c = w.find("c2"); c != w.end()) {
      s.c2.t_direct = c->value("t_direct", 0.6);
      s.c2.t_assisted = c->value("t_assisted", 0.3);
      s.c2.hysteresis = c->value("hysteresis", 0.05);
      s.c2.range_max_m = c->value("range_max_m", 1000.0);
    }
    if (auto b = w.find("base_stations"); b != w.end()) {
      for (const auto& bj : *b) {
        BaseStation bs;
        bs.id = require(bj, "id", "base_stations").get<std::string>();
        bs.position = vec_from(require(bj, "position", "base_stations"), "base station " + bs.id);
        bs.coverage_radius_m = require(bj, "coverage_radius_m", "base_stations").get<double>();
        s.base_stations.push_back(std::move(bs));
      }
    }
  }

  if (auto it = j.find("entities"); it != j.end()) {
    const json& e = *it;
    if (auto u = e.find("uavs"); u != e.end())
      for (const auto& n : *u) s.uavs.push_back(node_decl_from(n, "uavs"));
    if (auto u = e.find("uavcs"); u != e.end())
      for (const auto& n : *u) s.uavcs.push_back(node_decl_from(n, "uavcs"));
    if (auto u = e.find("uss"); u != e.end()) {
      for (const auto& uj : *u) {
        UssDecl d;
        d.id = require(uj, "id", "uss").get<std::string>();
        if (auto an = uj.find("authorized_nodes"); an != uj.end())
          for (const auto& n : *an) d.authorized_nodes.push_back(n.get<std::string>());
        if (auto kc = uj.find("known_controllers"); kc != uj.end())
          for (const auto& n : *kc) d.known_controllers.push_back(n.get<std::string>());
        s.uss_ids.push_back(d.id);
        s.uss.push_back(std::move(d));
      }
    }
    if (auto t = e.find("tpae"); t != e.end()) {
      for (const auto& tj : *t) {
        TpaeDecl d;
        d.id = require(tj, "id", "tpae").get<std::string>();
        d.position = vec_from(require(tj, "position", "tpae"), "tpae " + d.id);
        d.range_m = tj.value("range_m", 5000.0);
        s.tpae.push_back(std::move(d));
      }
    }
  }

  if (auto it = j.find("provisioning"); it != j.end()) {
    const json& p = *it;
    if (auto c = p.find("credentials"); c != p.end())
      for (auto& [node, cred] : c->items()) s.credentials[node] = cred.get<std::string>();
    if (auto ids = p.find("identities"); ids != p.end()) {
      for (const auto& ij : *ids) {
        IdentityDecl d;
        d.node = require(ij, "node", "identities").get<std::string>();
        d.gpp3_uav_id = require(ij, "gpp3_uav_id", "identities").get<std::string>();
        d.caa_level_uav_id = require(ij, "caa_level_uav_id", "identities").get<std::string>();
        d.app_id = ij.value("app_id", "");
        d.served_uss = ij.value("served_uss", "");
        s.identities.push_back(std::move(d));
      }
    }
    if (auto subs = p.find("subscriptions"); subs != p.end()) {
      for (const auto& sj : *subs) {
        SubscriptionDecl d;
        d.node = require(sj, "node", "subscriptions").get<std::string>();
        d.aerial_allowed = require(sj, "aerial_allowed", "subscriptions").get<bool>();
        d.served_uss = sj.value("served_uss", "");
        d.policy_blob = sj.value("policy_blob", "");
        s.subscriptions.push_back(std::move(d));
      }
    }
    if (auto v = p.find("valid_uss_list"); v != p.end())
      for (const auto& u : *v) s.valid_uss_list.push_back(u.get<std::string>());
    if (auto d = p.find("uss_directory"); d != p.end())
      for (auto& [caa, uss] : d->items()) s.uss_directory[caa] = uss.get<std::string>();
    if (auto pr = p.find("privacy"); pr != p.end()) {
      for (auto& [node, v] : pr->items()) {
        const std::string val = v.get<std::string>();
        if (val != "allow" && val != "deny") throw ParseError("privacy must be allow|deny");
        s.privacy_allow[node] = val == "allow";
      }
    }
    s.secondary_auth_required = p.value("secondary_auth_required", true);
    s.extra_rounds = p.value("extra_rounds", 0);
    if (auto d = p.find("dnn_map"); d != p.end())
      for (auto& [dnn, smf] : d->items()) s.dnn_map[dnn] = smf.get<std::string>();
  }
  if (s.dnn_map.empty()) s.dnn_map["default"] = "smf";

  if (auto it = j.find("timers"); it != j.end()) {
    const json& t = *it;
    s.timers.channel_latency_default_ms = t.value("channel_latency_default_ms", 10);
    if (auto lat = t.find("channel_latency_ms"); lat != t.end())
      for (auto& [iface, ms] : lat->items())
        s.timers.channel_latency_ms[iface_from(json(iface), "timers")] = ms.get<int>();
    s.timers.retx_timer_ms = t.value("retx_timer_ms", 200);
    s.timers.max_retries = t.value("max_retries", 5);
    s.timers.rid_period_ms = t.value("rid_period_ms", 1000);
    s.timers.c2_period_ms = t.value("c2_period_ms", 500);
  }

  if (auto it = j.find("thresholds"); it != j.end())
    s.location_threshold_m = it->value("location_threshold_m", 50.0);

  if (auto it = j.find("script"); it != j.end())
    for (const auto& e : *it) s.script.push_back(script_from(e));

  if (auto it = j.find("attackers"); it != j.end())
    for (const auto& a : *it) s.attackers.push_back(attacker_from(a));

  validate(s);
  return s;
}

Scenario load_scenario_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Map the byte offset to a line number for a friendlier message.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError("scenario parse error at line " + std::to_string(line) + ": " + e.what());
  }
  return scenario_from_json(j);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ScenarioError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return load_scenario_text(ss.str());
}

nlohmann::json scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["name"] = s.name;
  j["horizon_ms"] = s.horizon_ms;

  json world{{"tick_ms", s.tick_ms},
             {"noise_sigma_m", s.noise_sigma_m},
             {"rid_range_m", s.rid_range_m},
             {"c2",
              {{"t_direct", s.c2.t_direct},
               {"t_assisted", s.c2.t_assisted},
               {"hysteresis", s.c2.hysteresis},
               {"range_max_m", s.c2.range_max_m}}}};
  if (!s.base_stations.empty()) {
    json bs = json::array();
    for (const auto& b : s.base_stations)
      bs.push_back(json{{"id", b.id},
                        {"position", vec_to(b.position)},
                        {"coverage_radius_m", b.coverage_radius_m}});
    world["base_stations"] = bs;
  }
  j["world"] = world;

  json entities;
  if (!s.uavs.empty()) {
    json u = json::array();
    for (const auto& n : s.uavs) u.push_back(node_decl_to(n));
    entities["uavs"] = u;
  }
  if (!s.uavcs.empty()) {
    json u = json::array();
    for (const auto& n : s.uavcs) u.push_back(node_decl_to(n));
    entities["uavcs"] = u;
  }
  if (!s.uss.empty()) {
    json u = json::array();
    for (const auto& d : s.uss) {
      json uj{{"id", d.id}};
      if (!d.authorized_nodes.empty()) uj["authorized_nodes"] = d.authorized_nodes;
      if (!d.known_controllers.empty()) uj["known_controllers"] = d.known_controllers;
      u.push_back(std::move(uj));
    }
    entities["uss"] = u;
  }
  if (!s.tpae.empty()) {
    json t = json::array();
    for (const auto& d : s.tpae)
      t.push_back(json{{"id", d.id}, {"position", vec_to(d.position)}, {"range_m", d.range_m}});
    entities["tpae"] = t;
  }
  j["entities"] = entities;

  json prov;
  if (!s.credentials.empty()) {
    json c;
    for (const auto& [node, cred] : s.credentials) c[node] = cred;
    prov["credentials"] = c;
  }
  if (!s.identities.empty()) {
    json ids = json::array();
    for (const auto& d : s.identities) {
      json ij{{"node", d.node},
              {"gpp3_uav_id", d.gpp3_uav_id},
              {"caa_level_uav_id", d.caa_level_uav_id}};
      if (!d.app_id.empty()) ij["app_id"] = d.app_id;
      if (!d.served_uss.empty()) ij["served_uss"] = d.served_uss;
      ids.push_back(std::move(ij));
    }
    prov["identities"] = ids;
  }
  if (!s.subscriptions.empty()) {
    json subs = json::array();
    for (const auto& d : s.subscriptions) {
      json sj{{"node", d.node}, {"aerial_allowed", d.aerial_allowed}};
      if (!d.served_uss.empty()) sj["served_uss"] = d.served_uss;
      if (!d.policy_blob.empty()) sj["policy_blob"] = d.policy_blob;
      subs.push_back(std::move(sj));
    }
    prov["subscriptions"] = subs;
  }
  if (!s.valid_uss_list.empty()) prov["valid_uss_list"] = s.valid_uss_list;
  if (!s.uss_directory.empty()) {
    json d;
    for (const auto& [caa, uss] : s.uss_directory) d[caa] = uss;
    prov["uss_directory"] = d;
  }
  if (!s.privacy_allow.empty()) {
    json p;
    for (const auto& [node, allow] : s.privacy_allow) p[node] = allow ? "allow" : "deny";
    prov["privacy"] = p;
  }
  prov["secondary_auth_required"] = s.secondary_auth_required;
  prov["extra_rounds"] = s.extra_rounds;
  {
    json d;
    for (const auto& [dnn, smf] : s.dnn_map) d[dnn] = smf;
    prov["dnn_map"] = d;
  }
  j["provisioning"] = prov;

  json timers{{"channel_latency_default_ms", s.timers.channel_latency_default_ms},
              {"retx_timer_ms", s.timers.retx_timer_ms},
              {"max_retries", s.timers.max_retries},
              {"rid_period_ms", s.timers.rid_period_ms},
              {"c2_period_ms", s.timers.c2_period_ms}};
  if (!s.timers.channel_latency_ms.empty()) {
    json lat;
    for (const auto& [iface, ms] : s.timers.channel_latency_ms) lat[to_string(iface)] = ms;
    timers["channel_latency_ms"] = lat;
  }
  j["timers"] = timers;

  j["thresholds"] = json{{"location_threshold_m", s.location_threshold_m}};

  if (!s.script.empty()) {
    json sc = json::array();
    for (const auto& e : s.script) sc.push_back(script_to(e));
    j["script"] = sc;
  }
  if (!s.attackers.empty()) {
    json at = json::array();
    for (const auto& a : s.attackers) at.push_back(attacker_to(a));
    j["attackers"] = at;
  }
  return j;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return scenario_to_json(a) == scenario_to_json(b);
}

}  // namespace skylink
