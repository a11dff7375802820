#include "skylink/engine.hpp"

#include <algorithm>
#include <cstdio>

#include "skylink/agents.hpp"

namespace skylink {

using json = nlohmann::json;

// ---- SessionTable ----------------------------------------------------------

PduSession& SessionTable::create(const NodeId& owner, const std::string& dnn,
                                 SessionPolicyKind policy, SessionState state) {
  PduSession s;
  s.session_id = next_id_++;
  s.owner = owner;
  s.dnn_snssai = dnn;
  s.policy.kind = policy;
  s.state = state;
  auto [it, ok] = sessions_.emplace(s.session_id, std::move(s));
  return it->second;
}

PduSession* SessionTable::find(std::uint64_t id) {
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : &it->second;
}

const PduSession* SessionTable::find(std::uint64_t id) const {
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : &it->second;
}

const PduSession* SessionTable::best_active(const NodeId& owner) const {
  const PduSession* best = nullptr;
  auto rank = [](SessionPolicyKind k) {
    switch (k) {
      case SessionPolicyKind::RestrictedToUaaf: return 0;
      case SessionPolicyKind::OpenToUss: return 1;
      case SessionPolicyKind::C2Authorized: return 2;
    }
    return 0;
  };
  for (const auto& [id, s] : sessions_) {
    if (s.owner != owner || s.state != SessionState::Active) continue;
    if (!best || rank(s.policy.kind) > rank(best->policy.kind)) best = &s;
  }
  return best;
}

// ---- construction ----------------------------------------------------------

Simulator::Simulator(const Scenario& scenario, std::uint64_t seed)
    : scenario_(scenario), seed_(seed), rng_(seed) {
  world_.tick_ms = scenario_.tick_ms;
  world_.noise_sigma_m = scenario_.noise_sigma_m;
  for (const auto& n : scenario_.uavs)
    world_.add_node({n.id, n.position, n.waypoints, n.speed_mps, {}});
  for (const auto& n : scenario_.uavcs)
    world_.add_node({n.id, n.position, n.waypoints, n.speed_mps, {}});
  for (const auto& t : scenario_.tpae) world_.add_node({t.id, t.position, {}, 0.0, {}});
  for (const auto& b : scenario_.base_stations) world_.add_base_station(b);

  for (const auto& i : scenario_.identities) caa_ids_seen_.insert(i.caa_level_uav_id);

  // Channels: every interface exists with its configured latency.
  for (auto iface : {Interface::U1, Interface::U2, Interface::U3, Interface::U4, Interface::U5,
                     Interface::U6, Interface::U7, Interface::U8, Interface::U9, Interface::U2U,
                     Interface::Sbi})
    channels_[iface] = ChannelSpec{iface, scenario_.timers.latency(iface), nullptr};

  build_entities();

  // Provisioning records make the trace self-contained for the verifier.
  {
    json run{{"name", scenario_.name},
             {"horizon_ms", scenario_.horizon_ms},
             {"seed", seed_},
             {"extra_rounds", scenario_.extra_rounds},
             {"location_threshold_m", scenario_.location_threshold_m},
             {"valid_uss_list", scenario_.valid_uss_list},
             {"secondary_auth_required", scenario_.secondary_auth_required}};
    record_state_change("scenario", "provisioned_run", std::move(run));
  }
  for (const auto& [id, agent] : agents_) {
    if (!is_ue(agent->kind())) continue;
    json f{{"node_kind", to_string(agent->kind())}};
    if (const auto* ident = identity_of(id)) {
      f["caa_id"] = ident->caa_level_uav_id;
      f["gpp3_id"] = ident->gpp3_uav_id;
      if (!ident->served_uss.empty()) f["served_uss"] = ident->served_uss;
    }
    if (const auto* sub = subscription_of(id)) f["aerial_allowed"] = sub->aerial_allowed;
    record_state_change(id, "provisioned_node", std::move(f));
  }

  build_attackers();

  for (std::size_t i = 0; i < scenario_.script.size(); ++i) {
    schedule(Event{scenario_.script[i].t, next_event_seq_++,
                   TimerEv{"__scenario", static_cast<std::uint64_t>(i), "script"}});
  }
  schedule(Event{scenario_.tick_ms, next_event_seq_++, WorldTickEv{}});

  for (auto& [id, agent] : agents_) agent->on_start(*this);
}

Simulator::~Simulator() = default;

void Simulator::build_entities() {
  auto add = [&](Agent* a) { agents_[a->id()] = std::unique_ptr<Agent>(a); };
  add(new AmfAgent("amf", scenario_));
  add(new SmfAgent("smf", scenario_));
  add(new PcfAgent("pcf", scenario_));
  add(new BsfAgent("bsf", scenario_));
  add(new UdmAgent("udm", scenario_));
  add(new GmlcAgent("gmlc", scenario_));
  add(new LmfAgent("lmf", scenario_));
  add(new UfesAgent("ufes", scenario_));
  add(new UaafAgent("uaaf", scenario_));
  add(new UcfAgent("ucf", scenario_));
  for (const auto& b : scenario_.base_stations) add(new NgBsAgent(b.id, b));
  for (const auto& u : scenario_.uss) add(new UssAgent(u.id, scenario_, u));
  for (const auto& t : scenario_.tpae) add(new TpaeAgent(t.id, t));
  for (const auto& n : scenario_.uavs) add(new UeAgent(n.id, EntityKind::Uav, scenario_));
  for (const auto& n : scenario_.uavcs) add(new UeAgent(n.id, EntityKind::Uavc, scenario_));
}

void Simulator::build_attackers() {
  for (const auto& spec : scenario_.attackers) {
    auto tap = make_attacker(spec);
    if (!tap) continue;
    Interceptor* raw = tap.get();
    interceptors_.push_back(std::move(tap));
    raw->on_attach(*this);
  }
}

// ---- entity lookups ----------------------------------------------------------

Agent* Simulator::agent(const NodeId& id) {
  auto it = agents_.find(id);
  return it == agents_.end() ? nullptr : it->second.get();
}

EntityKind Simulator::kind_of(const NodeId& id) const {
  auto it = agents_.find(id);
  if (it == agents_.end()) throw std::out_of_range("unknown entity: " + id);
  return it->second->kind();
}

bool Simulator::has_entity(const NodeId& id) const { return agents_.count(id) != 0; }

std::vector<NodeId> Simulator::entities_of_kind(EntityKind k) const {
  std::vector<NodeId> out;
  for (const auto& [id, a] : agents_)
    if (a->kind() == k) out.push_back(id);
  return out;
}

const IdentityDecl* Simulator::identity_of(const NodeId& node) const {
  return scenario_.identity_of(node);
}

const SubscriptionDecl* Simulator::subscription_of(const NodeId& node) const {
  return scenario_.subscription_of(node);
}

// ---- trace helpers -------------------------------------------------------------

json Simulator::envelope_fields(const Envelope& env, bool with_payload) const {
  json f{{"eseq", env.eseq},
         {"src", env.src},
         {"dst", env.dst},
         {"iface", to_string(env.iface)},
         {"msg", message_type_name(env.body)}};
  if (with_payload) f["payload"] = payload_summary(env.body);
  if (env.nonce) f["nonce"] = *env.nonce;
  if (env.session_id) f["session"] = *env.session_id;
  if (env.cause_eseq != 0) f["cause"] = env.cause_eseq;
  return f;
}

std::uint64_t Simulator::record_state_change(const NodeId& entity, const std::string& change,
                                             json fields) {
  fields["entity"] = entity;
  fields["change"] = change;
  if (current_cause_ != 0) fields["cause"] = current_cause_;
  return trace_.append(RecordKind::StateChange, clock_, std::move(fields));
}

std::uint64_t Simulator::record_anomaly(const std::string& code, const NodeId& entity, json fields,
                                        const std::string& attacker_id) {
  fields["code"] = code;
  if (!entity.empty()) fields["entity"] = entity;
  if (!attacker_id.empty()) fields["attacker"] = attacker_id;
  if (current_cause_ != 0) fields["cause"] = current_cause_;
  return trace_.append(RecordKind::Anomaly, clock_, std::move(fields));
}

// ---- messaging ----------------------------------------------------------------

std::uint64_t Simulator::enqueue_envelope(Envelope env, SimTime deliver_at) {
  undelivered_.insert(env.eseq);
  schedule(Event{deliver_at, next_event_seq_++, DeliverEv{std::move(env)}});
  return deliver_at;
}

std::uint64_t Simulator::send(const NodeId& src, const NodeId& dst, Interface iface, Message body,
                              SendOptions opts) {
  if (!has_entity(dst)) throw IllegalInterfaceError("send to unknown entity '" + dst + "'");
  EntityKind sk = kind_of(src);
  EntityKind dk = kind_of(dst);
  if (!interface_legal(sk, dk, iface))
    throw IllegalInterfaceError(std::string("illegal interface ") + to_string(iface) + " for " +
                                src + " (" + to_string(sk) + ") -> " + dst + " (" + to_string(dk) +
                                ")");
  Envelope env;
  env.eseq = next_eseq_++;
  env.send_time = clock_;
  env.src = src;
  env.dst = dst;
  env.iface = iface;
  env.body = std::move(body);
  env.nonce = opts.nonce;
  env.session_id = opts.session_id;
  env.cause_eseq = current_cause_;

  trace_.append(RecordKind::Send, clock_, envelope_fields(env, true));
  enqueue_envelope(std::move(env), clock_ + channels_[iface].latency_ms);
  return next_eseq_ - 1;
}

UserPlaneResult Simulator::send_user_plane(const NodeId& src, const NodeId& dst, Interface iface,
                                           Message body, std::uint64_t session_id,
                                           std::optional<std::uint64_t> nonce) {
  EntityKind sk = kind_of(src);
  EntityKind dk = kind_of(dst);
  if (!interface_legal(sk, dk, iface))
    throw IllegalInterfaceError(std::string("illegal interface ") + to_string(iface) + " for " +
                                src + " -> " + dst);
  Envelope env;
  env.eseq = next_eseq_++;
  env.send_time = clock_;
  env.src = src;
  env.dst = dst;
  env.iface = iface;
  env.body = std::move(body);
  env.nonce = nonce;
  env.session_id = session_id;
  env.cause_eseq = current_cause_;

  trace_.append(RecordKind::Send, clock_, envelope_fields(env, true));

  const PduSession* sess = sessions_.find(session_id);
  GateResult gate{GateDecision::Block, BlockReason::SessionNotActive};
  if (sess) {
    if (sess->owner == src) {
      gate = session_gate(*sess, env, dk);
    } else if (sess->state == SessionState::Terminated) {
      gate = {GateDecision::Block, BlockReason::SessionTerminated};
    } else if (sess->state == SessionState::Active && env.dst == sess->owner &&
               sess->policy.kind == SessionPolicyKind::C2Authorized && sess->policy.peer == src) {
      // Peer-direction traffic rides the owner's C2-authorized session.
      gate = {GateDecision::Deliver, BlockReason::None};
    } else {
      gate = {GateDecision::Block, BlockReason::PolicyViolation};
    }
  }

  if (gate.decision == GateDecision::Block) {
    json f = envelope_fields(env, false);
    f["reason"] = to_string(gate.reason);
    trace_.append(RecordKind::Dropped, clock_, std::move(f));
    return {env.eseq, false, gate.reason};
  }
  std::uint64_t eseq = env.eseq;
  enqueue_envelope(std::move(env), clock_ + channels_[iface].latency_ms);
  return {eseq, true, BlockReason::None};
}

std::uint64_t Simulator::inject(const NodeId& src, const NodeId& dst, Interface iface, Message body,
                                SimTime deliver_at, const std::string& attacker_id,
                                std::optional<std::uint64_t> nonce) {
  if (!has_entity(dst)) throw IllegalInterfaceError("inject to unknown entity '" + dst + "'");
  Envelope env;
  env.eseq = next_eseq_++;
  env.send_time = clock_;
  env.src = src;
  env.dst = dst;
  env.iface = iface;
  env.body = std::move(body);
  env.nonce = nonce;
  env.injected = true;

  if (deliver_at < clock_) deliver_at = clock_;
  json f = envelope_fields(env, true);
  f["attacker"] = attacker_id;
  f["deliver_at"] = deliver_at;
  trace_.append(RecordKind::Injected, clock_, std::move(f));
  injected_by_[env.eseq] = attacker_id;
  enqueue_envelope(std::move(env), deliver_at);
  return env.eseq;
}

// ---- timers -----------------------------------------------------------------

std::uint64_t Simulator::arm_timer(const NodeId& owner, SimTime delay_ms, const std::string& tag) {
  std::uint64_t id = next_timer_id_++;
  schedule(Event{clock_ + delay_ms, next_event_seq_++, TimerEv{owner, id, tag}});
  return id;
}

void Simulator::cancel_timer(std::uint64_t id) { cancelled_timers_.insert(id); }

void Simulator::schedule_callback(SimTime at, std::function<void(Simulator&)> fn) {
  std::uint64_t id = next_timer_id_++;
  callbacks_[id] = std::move(fn);
  if (at < clock_) at = clock_;
  schedule(Event{at, next_event_seq_++, TimerEv{"__callback", id, "callback"}});
}

// ---- taps ----------------------------------------------------------------------

void Simulator::attach_tap(Interface iface, Interceptor* tap) {
  if (iface == Interface::Sbi)
    throw IllegalInterfaceError("Sbi channels are not tappable");
  auto& ch = channels_.at(iface);
  if (ch.tap != nullptr)
    throw TapConflictError(std::string("channel ") + to_string(iface) + " already tapped");
  ch.tap = tap;
}

// ---- stepping -------------------------------------------------------------------

void Simulator::schedule(Event ev) { queue_.push(std::move(ev)); }

std::optional<Event> Simulator::step() {
  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    if (auto* t = std::get_if<TimerEv>(&ev.kind)) {
      if (cancelled_timers_.count(t->timer_id)) {
        cancelled_timers_.erase(t->timer_id);
        continue;  // cancelled timers fire invisibly
      }
    }
    clock_ = std::max(clock_, ev.fire_time);

    if (auto* d = std::get_if<DeliverEv>(&ev.kind)) {
      dispatch_deliver(*d);
    } else if (auto* t = std::get_if<TimerEv>(&ev.kind)) {
      if (t->owner == "__scenario") {
        execute_script(static_cast<std::size_t>(t->timer_id));
      } else if (t->owner == "__callback") {
        auto it = callbacks_.find(t->timer_id);
        if (it != callbacks_.end()) {
          auto fn = std::move(it->second);
          callbacks_.erase(it);
          fn(*this);
        }
      } else if (Agent* a = agent(t->owner)) {
        trace_.append(RecordKind::TimerFired, clock_,
                      json{{"entity", t->owner}, {"tag", t->tag}, {"timer", t->timer_id}});
        a->on_timer(*this, t->timer_id, t->tag);
      }
    } else {
      world_tick();
    }
    return ev;
  }
  return std::nullopt;
}

void Simulator::dispatch_deliver(DeliverEv& dev) {
  Envelope& env = dev.env;

  // Offer the envelope to the channel tap once; injected envelopes bypass
  // taps (prevents attacker-on-attacker loops).
  auto& ch = channels_.at(env.iface);
  if (!dev.tap_done && !env.injected && ch.tap != nullptr) {
    InterceptDecision d = ch.tap->on_envelope(*this, env);
    switch (d.action) {
      case InterceptAction::Drop: {
        json f = envelope_fields(env, false);
        f["attacker"] = ch.tap->attacker_id();
        f["reason"] = "intercepted";
        trace_.append(RecordKind::Dropped, clock_, std::move(f));
        undelivered_.erase(env.eseq);
        return;
      }
      case InterceptAction::Delay: {
        record_state_change(ch.tap->attacker_id(), "delayed_envelope",
                            json{{"eseq", env.eseq}, {"extra_ms", d.extra_delay_ms}});
        DeliverEv copy = dev;
        copy.tap_done = true;
        schedule(Event{clock_ + d.extra_delay_ms, next_event_seq_++, std::move(copy)});
        return;
      }
      case InterceptAction::Modify: {
        env.body = std::move(*d.new_body);
        env.modified = true;
        trace_.append(RecordKind::Modified, clock_,
                      json{{"eseq", env.eseq},
                           {"attacker", ch.tap->attacker_id()},
                           {"note", d.note},
                           {"msg", message_type_name(env.body)}});
        break;
      }
      case InterceptAction::Duplicate: {
        DeliverEv copy = dev;
        copy.tap_done = true;
        copy.env.duplicate = true;
        schedule(Event{clock_, next_event_seq_++, std::move(copy)});
        break;
      }
      case InterceptAction::Deliver:
        break;
    }
  }

  {
    json f = envelope_fields(env, false);
    if (env.duplicate) f["dup"] = true;
    if (env.modified) f["modified"] = true;
    if (env.injected) f["injected"] = true;
    trace_.append(RecordKind::Delivered, clock_, std::move(f));
  }
  undelivered_.erase(env.eseq);

  Agent* dst = agent(env.dst);
  if (dst == nullptr) return;  // forged destinations die on delivery
  current_cause_ = env.eseq;
  dst->on_message(*this, env);
  current_cause_ = 0;
}

void Simulator::world_tick() {
  world_.advance(world_.tick_ms);

  for (auto& [uav, pair] : c2_pairs_) {
    double jam = 0.0;
    if (auto it = direct_jam_.find(uav); it != direct_jam_.end()) jam = it->second.first;
    double q = link_quality(world_.distance_between(pair.uav, pair.uavc), scenario_.c2.range_max_m,
                            jam);
    C2ModeState next = select_c2_mode(pair.mode_state, q, scenario_.c2);
    if (next.mode != pair.mode_state.mode) {
      record_state_change("world", "c2_mode",
                          json{{"uav", pair.uav},
                               {"uavc", pair.uavc},
                               {"from", to_string(pair.mode_state.mode)},
                               {"to", to_string(next.mode)},
                               {"quality", q}});
    }
    pair.mode_state = next;
  }

  schedule(Event{clock_ + world_.tick_ms, next_event_seq_++, WorldTickEv{}});
}

TraceLog& Simulator::run_until(SimTime t_max) {
  while (!queue_.empty() && queue_.top().fire_time <= t_max) step();
  if (!finished_) finish_trace();
  return trace_;
}

TraceLog& Simulator::run() { return run_until(scenario_.horizon_ms); }

void Simulator::finish_trace() {
  finished_ = true;
  for (auto& tap : interceptors_) tap->at_end(*this);

  json phases = json::object();
  std::uint64_t sends = 0, delivered = 0, dropped = 0, anomalies = 0, injected = 0;
  for (const auto& line : trace_.lines()) {
    // Cheap prefix scan: records are compact JSON with sorted keys.
    if (line.find("\"kind\":\"Send\"") != std::string::npos) ++sends;
    else if (line.find("\"kind\":\"Delivered\"") != std::string::npos) ++delivered;
    else if (line.find("\"kind\":\"Dropped\"") != std::string::npos) ++dropped;
    else if (line.find("\"kind\":\"Anomaly\"") != std::string::npos) ++anomalies;
    else if (line.find("\"kind\":\"Injected\"") != std::string::npos) ++injected;
  }
  for (const auto& [id, a] : agents_) {
    if (const auto* ue = dynamic_cast<const UeAgent*>(a.get())) phases[id] = ue->phase();
  }
  json undeliv = json::array();
  for (auto e : undelivered_) undeliv.push_back(e);

  trace_.finish(clock_, json{{"scenario", scenario_.name},
                             {"seed", seed_},
                             {"sends", sends},
                             {"delivered", delivered},
                             {"dropped", dropped},
                             {"injected", injected},
                             {"anomalies", anomalies},
                             {"phases", phases},
                             {"undelivered", undeliv}});
}

// ---- script ---------------------------------------------------------------------

void Simulator::execute_script(std::size_t index) {
  const ScriptEntry& e = scenario_.script.at(index);
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, StartAa>) {
          if (auto* ue = agent_as<UeAgent>(a.node)) ue->begin_aa(*this);
          else record_anomaly("script_target_invalid", a.node);
        } else if constexpr (std::is_same_v<T, RequestLocation>) {
          if (auto* uss = agent_as<UssAgent>(a.uss)) uss->request_location(*this, a.caa_id);
          else record_anomaly("script_target_invalid", a.uss);
        } else if constexpr (std::is_same_v<T, StartC2>) {
          if (auto* ue = agent_as<UeAgent>(a.uav)) ue->begin_c2(*this, a.uavc);
          else record_anomaly("script_target_invalid", a.uav);
        } else if constexpr (std::is_same_v<T, SetSpoof>) {
          world_.set_spoof_offset(a.node, a.offset);
          record_state_change("world", "spoof_offset",
                              json{{"node", a.node},
                                   {"offset", json::array({a.offset.x, a.offset.y, a.offset.z})}});
        } else if constexpr (std::is_same_v<T, RogueSend>) {
          rogue_send(a);
        } else if constexpr (std::is_same_v<T, TpaeC2Override>) {
          if (auto* tp = agent_as<TpaeAgent>(a.tpae))
            tp->send_c2_override(*this, a.uav, a.with_valid_token);
          else record_anomaly("script_target_invalid", a.tpae);
        }
      },
      e.action);
}

void Simulator::rogue_send(const RogueSend& a) {
  EntityKind dk = kind_of(a.dst);
  Interface iface;
  switch (dk) {
    case EntityKind::Uaaf: iface = Interface::U1; break;
    case EntityKind::Uss: iface = Interface::U9; break;
    case EntityKind::Uav:
    case EntityKind::Uavc: iface = Interface::U3; break;
    case EntityKind::Tpae: iface = Interface::U4; break;
    default:
      record_anomaly("rogue_send_unroutable", a.node, json{{"dst", a.dst}});
      return;
  }
  Message body;
  if (a.message == "AaRequest") {
    const auto* ident = identity_of(a.node);
    body = AaRequest{ident ? ident->caa_level_uav_id : "CAA-rogue", "", "rogue"};
  } else if (a.message == "FlightPermissionRequest") {
    const auto* ident = identity_of(a.node);
    auto rep = world_.has_node(a.node) ? world_.gnss_self_report(a.node) : ReportedLocation{};
    body = FlightPermissionRequest{ident ? ident->caa_level_uav_id : "CAA-rogue",
                                   AbsoluteLocation{rep.value}, {}};
  } else {
    body = C2Payload{"rogue", 0, false};
  }
  const PduSession* sess = sessions_.best_active(a.node);
  if (sess == nullptr) {
    record_anomaly("rogue_no_session", a.node, json{{"dst", a.dst}, {"message", a.message}});
    return;
  }
  send_user_plane(a.node, a.dst, iface, std::move(body), sess->session_id, fresh_nonce());
}

// ---- identity / C2 plumbing ---------------------------------------------------

std::string Simulator::fresh_caa_id() {
  for (;;) {
    std::uint64_t v = rng_.draw_u64();
    char buf[16];
    std::snprintf(buf, sizeof buf, "CAA-R%06llx", static_cast<unsigned long long>(v & 0xffffff));
    std::string id(buf);
    if (caa_ids_seen_.insert(id).second) return id;
  }
}

void Simulator::note_caa_id(const std::string& caa) { caa_ids_seen_.insert(caa); }

void Simulator::note_issued_credential(const NodeId& node, std::uint64_t token,
                                       std::uint64_t key) {
  issued_creds_[node] = {token, key};
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> Simulator::issued_credential(
    const NodeId& node) const {
  auto it = issued_creds_.find(node);
  if (it == issued_creds_.end()) return std::nullopt;
  return it->second;
}

void Simulator::register_c2_pair(const NodeId& uav, const NodeId& uavc) {
  double jam = 0.0;
  if (auto it = direct_jam_.find(uav); it != direct_jam_.end()) jam = it->second.first;
  double q = link_quality(world_.distance_between(uav, uavc), scenario_.c2.range_max_m, jam);
  C2Mode initial = q > scenario_.c2.t_direct    ? C2Mode::Direct
                   : q > scenario_.c2.t_assisted ? C2Mode::NetworkAssisted
                                                 : C2Mode::UtmNavigated;
  c2_pairs_[uav] = C2PairState{uav, uavc, {initial, q}, true};
  record_state_change("world", "c2_mode",
                      json{{"uav", uav},
                           {"uavc", uavc},
                           {"from", "none"},
                           {"to", to_string(initial)},
                           {"quality", q}});
}

void Simulator::set_direct_jam(const NodeId& uav, double intensity,
                               const std::string& attacker_id) {
  direct_jam_[uav] = {intensity, attacker_id};
  record_state_change("world", "direct_jam",
                      json{{"uav", uav}, {"intensity", intensity}, {"attacker", attacker_id}});
}

C2Route Simulator::c2_route(const NodeId& self, const NodeId& peer) const {
  const NodeId& uav = kind_of_opt(self) == EntityKind::Uav ? self : peer;
  auto it = c2_pairs_.find(uav);
  C2Mode mode = it == c2_pairs_.end() ? C2Mode::Direct : it->second.mode_state.mode;
  switch (mode) {
    case C2Mode::Direct: return {mode, Interface::U8, false};
    case C2Mode::NetworkAssisted: return {mode, Interface::U3, false};
    case C2Mode::UtmNavigated: return {mode, Interface::U9, true};
  }
  return {C2Mode::Direct, Interface::U8, false};
}

const C2PairState* Simulator::c2_pair(const NodeId& uav) const {
  auto it = c2_pairs_.find(uav);
  return it == c2_pairs_.end() ? nullptr : &it->second;
}

std::optional<EntityKind> Simulator::kind_of_opt(const NodeId& id) const {
  auto it = agents_.find(id);
  if (it == agents_.end()) return std::nullopt;
  return it->second->kind();
}

void Simulator::mark_attacker_node(const NodeId& node, const std::string& attacker_id) {
  attacker_nodes_[node] = attacker_id;
}

std::string Simulator::attacker_of_node(const NodeId& node) const {
  auto it = attacker_nodes_.find(node);
  return it == attacker_nodes_.end() ? std::string{} : it->second;
}

std::string Simulator::injected_by(std::uint64_t eseq) const {
  auto it = injected_by_.find(eseq);
  return it == injected_by_.end() ? std::string{} : it->second;
}

std::uint64_t Simulator::fresh_req_id() { return next_req_id_++; }

}  // namespace skylink
