#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skylink/engine.hpp"
#include "skylink/identity.hpp"

namespace skylink {

// ---- 5GC network functions -------------------------------------------------

class AmfAgent : public Agent {
 public:
  AmfAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

  bool registered(const NodeId& node) const { return registered_.count(node) != 0; }

 private:
  void handle_registration(Simulator& sim, const Envelope& env, const Registration& msg);
  NodeId smf_for(const std::string& dnn) const;

  std::map<NodeId, std::string> credentials_;
  std::map<std::string, NodeId> dnn_map_;
  std::set<NodeId> registered_;
};

class SmfAgent : public Agent {
 public:
  SmfAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  void establish_plain_session(Simulator& sim, const Envelope& env, const SessionRequest& msg);
  void handle_c2_request(Simulator& sim, const Envelope& env, const C2SessionRequest& msg);
  void apply_modify(Simulator& sim, const Envelope& env, const SessionModify& msg);
  void terminate(Simulator& sim, std::uint64_t session_id, const std::string& reason);

  bool secondary_auth_required_ = true;
  std::map<NodeId, std::uint64_t> pending_secondary_;  // subject -> session
  std::map<NodeId, std::uint64_t> pending_pairing_;    // subject -> session
};

class PcfAgent : public Agent {
 public:
  PcfAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;
};

class BsfAgent : public Agent {
 public:
  BsfAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  NodeId pcf_id_ = "pcf";
  std::map<NodeId, NodeId> af_bindings_;  // af request -> ue
};

class UdmAgent : public Agent {
 public:
  UdmAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  std::map<NodeId, bool> privacy_allow_;
};

class GmlcAgent : public Agent {
 public:
  GmlcAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  std::map<std::uint64_t, NodeId> pending_;  // req_id -> ue
};

class LmfAgent : public Agent {
 public:
  LmfAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  struct Pending {
    NodeId ue;
    std::size_t expected = 0;
    std::vector<Vec3> measurements;
    std::size_t replies = 0;
  };
  std::map<std::uint64_t, Pending> pending_;  // req_id
};

class NgBsAgent : public Agent {
 public:
  NgBsAgent(NodeId id, BaseStation bs);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  BaseStation bs_;
};

// ---- UAS-specific network functions ----------------------------------------

class UfesAgent : public Agent {
 public:
  UfesAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

  std::optional<NodeId> resolve_uss(const std::string& caa_id) const;

 private:
  // True when src is a genuine USS entity; otherwise records forged_origin.
  bool vet_uss_origin(Simulator& sim, const Envelope& env);
  void cache(Simulator& sim, const std::string& caa_id, const NodeId& uss);

  std::map<std::string, NodeId> directory_;       // caa id -> uss
  std::map<std::uint64_t, NodeId> pending_loc_;   // req_id -> requesting uss
};

class UaafAgent : public Agent {
 public:
  UaafAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

 private:
  struct PendingAa {
    NodeId subject;
    std::uint64_t session_id = 0;
    std::set<std::uint64_t> nonces;  // current + superseded attempts
    std::string caa_id;
    std::string uss_hint;
    std::string app_info;
  };

  void handle_aa_request(Simulator& sim, const Envelope& env, const AaRequest& msg);
  void handle_subscription_reply(Simulator& sim, const Envelope& env, const SubscriptionReply& msg);
  void handle_aa_result(Simulator& sim, const Envelope& env, const AaResult& msg);
  void deny(Simulator& sim, const NodeId& node, const std::string& reason, bool terminate_session);

  std::set<std::string> valid_uss_;
  std::set<std::uint64_t> nonce_cache_;  // spans the whole run
  std::map<NodeId, PendingAa> pending_aa_;
  std::map<NodeId, std::uint64_t> pending_secondary_;  // subject -> smf session
};

class UcfAgent : public Agent {
 public:
  UcfAgent(NodeId id, const Scenario& sc);
  void on_message(Simulator& sim, const Envelope& env) override;

  const IdentityRegistry& registry() const { return registry_; }

 private:
  IdentityRegistry registry_;
  std::map<std::uint64_t, std::string> pending_;  // req_id -> caa id
};

class UssAgent : public Agent {
 public:
  UssAgent(NodeId id, const Scenario& sc, const UssDecl& decl);
  void on_message(Simulator& sim, const Envelope& env) override;

  // Scenario trigger: Fig. 5 step 4.
  void request_location(Simulator& sim, const std::string& caa_id);

  std::optional<std::uint64_t> issued_token(const NodeId& node) const;

 private:
  struct IssuedCredential {
    std::string new_caa_id;
    std::uint64_t token = 0;
    std::uint64_t key_material = 0;
  };

  void handle_aa_forward(Simulator& sim, const Envelope& env, const AaForward& msg);
  void finish_aa(Simulator& sim, const NodeId& subject, std::uint64_t nonce);
  void handle_location_report(Simulator& sim, const Envelope& env, const LocationReport& msg);

  struct AuthorizedBundle {
    std::string gpp3_id;
    std::string caa_id;
  };
  std::map<NodeId, AuthorizedBundle> authorized_;  // provisioned bundles
  std::set<NodeId> known_controllers_;
  std::set<NodeId> authenticated_;  // completed Fig. 4
  std::map<NodeId, IssuedCredential> issued_;
  std::map<NodeId, PairingRecord> pairings_;  // keyed by UAV
  struct PendingChallenge {
    std::uint64_t nonce = 0;
    int rounds_left = 0;
  };
  std::map<NodeId, PendingChallenge> pending_challenge_;
  std::map<NodeId, Location> reported_;               // last self-reported location
  std::map<std::uint64_t, std::string> pending_loc_;  // req_id -> caa
  std::set<NodeId> secure_with_;                      // peers with completed handshake
  int extra_rounds_ = 0;
  double location_threshold_m_ = 50.0;
};

class TpaeAgent : public Agent {
 public:
  TpaeAgent(NodeId id, TpaeDecl decl);
  void on_message(Simulator& sim, const Envelope& env) override;

  void send_c2_override(Simulator& sim, const NodeId& uav, bool with_valid_token);

  const std::vector<std::pair<std::string, Vec3>>& observations() const { return observations_; }
  double range_m() const { return decl_.range_m; }

 private:
  TpaeDecl decl_;
  std::vector<std::pair<std::string, Vec3>> observations_;  // (caa, reported pos)
};

// ---- UAS nodes (UAV / UAV-C) -------------------------------------------------

class UeAgent : public Agent {
 public:
  UeAgent(NodeId id, EntityKind kind, const Scenario& sc);
  void on_start(Simulator& sim) override;
  void on_message(Simulator& sim, const Envelope& env) override;
  void on_timer(Simulator& sim, std::uint64_t timer_id, const std::string& tag) override;

  // Scenario triggers.
  void begin_aa(Simulator& sim);
  void begin_c2(Simulator& sim, const NodeId& uavc);

  const std::string& phase() const { return phase_; }
  const IdentityBundle& bundle() const { return bundle_; }
  std::uint64_t aa_session() const { return aa_session_id_; }
  std::uint64_t c2_data_session() const { return c2_data_session_id_; }

 private:
  struct PendingRequest {
    std::string label;
    int attempts = 0;
    std::uint64_t timer_id = 0;
    std::function<void(Simulator&)> resend;
  };

  void set_phase(Simulator& sim, const std::string& phase);
  void start_request(Simulator& sim, const std::string& label,
                     std::function<void(Simulator&)> send_fn);
  void clear_request(Simulator& sim, const std::string& label);
  void fail_request(Simulator& sim, const PendingRequest& req);

  void send_registration(Simulator& sim);
  void send_session_request(Simulator& sim);
  void send_aa_request(Simulator& sim);
  void send_flight_permission(Simulator& sim);
  void send_c2_session_request(Simulator& sim);
  void send_pairing_request(Simulator& sim);
  void send_secure_init_uss(Simulator& sim);
  void send_secure_init_peer(Simulator& sim);
  void send_c2_payload(Simulator& sim, const std::string& command);
  void broadcast_rid(Simulator& sim);
  std::uint64_t c2_tag(const std::string& command) const;
  void handle_c2_payload(Simulator& sim, const Envelope& env, const C2Payload& msg);

  IdentityBundle bundle_;
  std::string credentials_;
  std::string phase_ = "idle";
  bool registered_ = false;
  bool uss_authenticated_ = false;
  bool aa_in_progress_ = false;
  bool awaiting_c2_after_registration_ = false;

  std::uint64_t aa_session_id_ = 0;       // Fig. 4 step 2 session
  std::uint64_t c2_uss_session_id_ = 0;   // Fig. 6 step 2 session
  std::uint64_t c2_data_session_id_ = 0;  // Fig. 6 step 6 session
  std::uint64_t current_aa_nonce_ = 0;

  NodeId c2_peer_;
  std::uint64_t c2_token_ = 0;
  std::uint64_t c2_key_ = 0;
  bool secure_with_uss_ = false;
  bool secure_with_peer_ = false;
  int c2_counter_ = 0;

  std::optional<PendingRequest> pending_;
  std::uint64_t rid_timer_ = 0;
  std::uint64_t c2_timer_ = 0;
};

}  // namespace skylink
