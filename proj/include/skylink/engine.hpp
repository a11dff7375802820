#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "skylink/message.hpp"
#include "skylink/scenario.hpp"
#include "skylink/session.hpp"
#include "skylink/trace.hpp"
#include "skylink/world.hpp"

namespace skylink {

class Simulator;

// ---- events -------------------------------------------------------------

struct DeliverEv {
  Envelope env;
  bool tap_done = false;  // taps are consulted once per envelope
};
struct TimerEv {
  NodeId owner;
  std::uint64_t timer_id = 0;
  std::string tag;
};
struct WorldTickEv {};

struct Event {
  SimTime fire_time = 0;
  std::uint64_t seq = 0;  // global tiebreak, unique
  std::variant<DeliverEv, TimerEv, WorldTickEv> kind;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
    return a.seq > b.seq;
  }
};

// ---- channel interception -------------------------------------------------

enum class InterceptAction { Deliver, Drop, Delay, Modify, Duplicate };

struct InterceptDecision {
  InterceptAction action = InterceptAction::Deliver;
  SimTime extra_delay_ms = 0;            // Delay
  std::optional<Message> new_body;       // Modify (src/seq are immutable)
  std::string note;
};

class Interceptor {
 public:
  explicit Interceptor(std::string attacker_id) : attacker_id_(std::move(attacker_id)) {}
  virtual ~Interceptor() = default;

  virtual InterceptDecision on_envelope(Simulator& sim, const Envelope& env) = 0;
  virtual void on_attach(Simulator& sim) {}
  virtual void at_end(Simulator& sim) {}

  const std::string& attacker_id() const { return attacker_id_; }

 private:
  std::string attacker_id_;
};

struct ChannelSpec {
  Interface iface = Interface::U1;
  int latency_ms = 10;
  Interceptor* tap = nullptr;  // at most one per channel
};

// ---- agents ---------------------------------------------------------------

class Agent {
 public:
  Agent(NodeId id, EntityKind kind) : id_(std::move(id)), kind_(kind) {}
  virtual ~Agent() = default;

  const NodeId& id() const { return id_; }
  EntityKind kind() const { return kind_; }

  virtual void on_start(Simulator&) {}
  virtual void on_message(Simulator& sim, const Envelope& env) = 0;
  virtual void on_timer(Simulator&, std::uint64_t, const std::string&) {}

 private:
  NodeId id_;
  EntityKind kind_;
};

// ---- session table ----------------------------------------------------------

// Authoritative PDU session store. Owned by the simulator; mutated only by
// the SMF agent; read by the user-plane gate.
class SessionTable {
 public:
  PduSession& create(const NodeId& owner, const std::string& dnn, SessionPolicyKind policy,
                     SessionState state);
  PduSession* find(std::uint64_t id);
  const PduSession* find(std::uint64_t id) const;
  // Owner's active session with the highest-ranked policy, if any.
  const PduSession* best_active(const NodeId& owner) const;
  const std::map<std::uint64_t, PduSession>& all() const { return sessions_; }

 private:
  std::map<std::uint64_t, PduSession> sessions_;
  std::uint64_t next_id_ = 1;
};

// ---- C2 pair mode tracking -----------------------------------------------

struct C2PairState {
  NodeId uav;
  NodeId uavc;
  C2ModeState mode_state;
  bool announced = false;  // initial mode recorded
};

struct C2Route {
  C2Mode mode = C2Mode::Direct;
  Interface iface = Interface::U8;
  bool via_uss = false;
};

// ---- send options ------------------------------------------------------------

struct SendOptions {
  std::optional<std::uint64_t> nonce;
  std::optional<std::uint64_t> session_id;
};

struct UserPlaneResult {
  std::uint64_t eseq = 0;
  bool delivered_to_channel = false;  // false when the session gate blocked it
  BlockReason reason = BlockReason::None;
};

// ---- simulator -----------------------------------------------------------------

class Simulator {
 public:
  Simulator(const Scenario& scenario, std::uint64_t seed);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  // -- run control
  std::optional<Event> step();
  TraceLog& run_until(SimTime t_max);
  TraceLog& run();  // run_until(scenario.horizon_ms)

  SimTime now() const { return clock_; }
  const Scenario& scenario() const { return scenario_; }
  Rng& rng() { return rng_; }
  std::uint64_t seed() const { return seed_; }

  // -- messaging
  std::uint64_t send(const NodeId& src, const NodeId& dst, Interface iface, Message body,
                     SendOptions opts = {});
  UserPlaneResult send_user_plane(const NodeId& src, const NodeId& dst, Interface iface,
                                  Message body, std::uint64_t session_id,
                                  std::optional<std::uint64_t> nonce = {});

  // Enqueues a forged envelope (attacker path). Bypasses legality and taps;
  // records an Injected trace record immediately.
  std::uint64_t inject(const NodeId& src, const NodeId& dst, Interface iface, Message body,
                       SimTime deliver_at, const std::string& attacker_id,
                       std::optional<std::uint64_t> nonce = {});

  // -- timers
  std::uint64_t arm_timer(const NodeId& owner, SimTime delay_ms, const std::string& tag);
  void cancel_timer(std::uint64_t id);
  // Callback scheduling for attacker actions; produces no trace record.
  void schedule_callback(SimTime at, std::function<void(Simulator&)> fn);

  // -- taps
  void attach_tap(Interface iface, Interceptor* tap);

  // -- entities
  Agent* agent(const NodeId& id);
  EntityKind kind_of(const NodeId& id) const;
  std::optional<EntityKind> kind_of_opt(const NodeId& id) const;
  bool has_entity(const NodeId& id) const;
  std::vector<NodeId> entities_of_kind(EntityKind k) const;
  template <typename T>
  T* agent_as(const NodeId& id) {
    return dynamic_cast<T*>(agent(id));
  }

  // -- shared state
  WorldState& world() { return world_; }
  SessionTable& sessions() { return sessions_; }
  const Timers& timers() const { return scenario_.timers; }

  const IdentityDecl* identity_of(const NodeId& node) const;
  const SubscriptionDecl* subscription_of(const NodeId& node) const;

  // -- trace helpers
  std::uint64_t record_state_change(const NodeId& entity, const std::string& change,
                                    nlohmann::json fields = nlohmann::json::object());
  std::uint64_t record_anomaly(const std::string& code, const NodeId& entity,
                               nlohmann::json fields = nlohmann::json::object(),
                               const std::string& attacker_id = {});
  TraceLog& trace() { return trace_; }

  // Envelope currently being dispatched (cause attribution); 0 when the
  // current event is a timer or tick.
  std::uint64_t current_cause() const { return current_cause_; }

  // -- identity plumbing
  std::string fresh_caa_id();
  void note_caa_id(const std::string& caa);
  std::uint64_t fresh_nonce() { return rng_.draw_u64(); }
  std::uint64_t fresh_req_id();

  // Issued C2 credential registry (filled by USS agents; consulted by the
  // UAV-C token check, TPAE overrides and credential-theft attackers).
  void note_issued_credential(const NodeId& node, std::uint64_t token, std::uint64_t key);
  std::optional<std::pair<std::uint64_t, std::uint64_t>> issued_credential(
      const NodeId& node) const;

  // Attacker id that injected the given envelope, if any.
  std::string injected_by(std::uint64_t eseq) const;

  // -- C2 pair/mode handling
  void register_c2_pair(const NodeId& uav, const NodeId& uavc);
  void set_direct_jam(const NodeId& uav, double intensity, const std::string& attacker_id);
  C2Route c2_route(const NodeId& self, const NodeId& peer) const;
  const C2PairState* c2_pair(const NodeId& uav) const;

  // Attacker-controlled node ids (attribution of their denials).
  void mark_attacker_node(const NodeId& node, const std::string& attacker_id);
  std::string attacker_of_node(const NodeId& node) const;

  // Pending-at-horizon accounting for the conservation invariant.
  const std::set<std::uint64_t>& undelivered() const { return undelivered_; }

 private:
  void build_entities();
  void build_attackers();
  void schedule(Event ev);
  void dispatch_deliver(DeliverEv& dev);
  void execute_script(std::size_t index);
  void rogue_send(const RogueSend& a);
  void world_tick();
  void finish_trace();
  std::uint64_t enqueue_envelope(Envelope env, SimTime deliver_at);
  nlohmann::json envelope_fields(const Envelope& env, bool with_payload) const;

  const Scenario scenario_;
  std::uint64_t seed_;
  Rng rng_;
  WorldState world_;
  SessionTable sessions_;
  TraceLog trace_;

  SimTime clock_ = 0;
  std::uint64_t next_event_seq_ = 0;
  std::uint64_t next_eseq_ = 1;
  std::uint64_t next_timer_id_ = 1;
  std::uint64_t current_cause_ = 0;

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::set<std::uint64_t> cancelled_timers_;
  std::set<std::uint64_t> undelivered_;  // eseq sent but not yet resolved
  std::map<std::uint64_t, std::function<void(Simulator&)>> callbacks_;

  std::map<NodeId, std::unique_ptr<Agent>> agents_;
  std::map<Interface, ChannelSpec> channels_;
  std::vector<std::unique_ptr<Interceptor>> interceptors_;
  std::map<NodeId, std::string> attacker_nodes_;
  std::map<std::uint64_t, std::string> injected_by_;

  std::map<NodeId, C2PairState> c2_pairs_;  // keyed by UAV id
  std::map<NodeId, std::pair<double, std::string>> direct_jam_;
  std::map<NodeId, std::pair<std::uint64_t, std::uint64_t>> issued_creds_;

  std::set<std::string> caa_ids_seen_;
  std::uint64_t next_req_id_ = 1;
  bool finished_ = false;
};

// Built by the adversary module from an AttackerSpec; may be null for
// specs realized purely through scheduled callbacks.
std::unique_ptr<Interceptor> make_attacker(const AttackerSpec& spec);

}  // namespace skylink
