#include "skylink/world.hpp"

#include <stdexcept>

namespace skylink {

const char* to_string(C2Mode m) {
  switch (m) {
    case C2Mode::Direct: return "Direct";
    case C2Mode::NetworkAssisted: return "NetworkAssisted";
    case C2Mode::UtmNavigated: return "UtmNavigated";
  }
  return "?";
}

int mode_rank(C2Mode m) {
  switch (m) {
    case C2Mode::Direct: return 2;
    case C2Mode::NetworkAssisted: return 1;
    case C2Mode::UtmNavigated: return 0;
  }
  return 0;
}

C2ModeState select_c2_mode(const C2ModeState& state, double quality, const C2Thresholds& th) {
  const double td = th.t_direct, ta = th.t_assisted, h = th.hysteresis;
  C2Mode next = state.mode;
  switch (state.mode) {
    case C2Mode::Direct:
      if (quality <= ta - h) next = C2Mode::UtmNavigated;
      else if (quality <= td - h) next = C2Mode::NetworkAssisted;
      break;
    case C2Mode::NetworkAssisted:
      if (quality > td + h) next = C2Mode::Direct;
      else if (quality <= ta - h) next = C2Mode::UtmNavigated;
      break;
    case C2Mode::UtmNavigated:
      if (quality > td + h) next = C2Mode::Direct;
      else if (quality > ta + h) next = C2Mode::NetworkAssisted;
      break;
  }
  return {next, quality};
}

double link_quality(double distance_m, double range_max_m, double jam_intensity) {
  double q = 1.0 - distance_m / range_max_m;
  if (q < 0.0) q = 0.0;
  if (q > 1.0) q = 1.0;
  double jam = jam_intensity;
  if (jam < 0.0) jam = 0.0;
  if (jam > 1.0) jam = 1.0;
  return q * (1.0 - jam);
}

LocationVerifyResult verify_location(const Location& reported, const Location& estimate,
                                     double threshold_m) {
  const auto* ra = std::get_if<AbsoluteLocation>(&reported);
  const auto* ea = std::get_if<AbsoluteLocation>(&estimate);
  if (ra && ea) {
    double d = distance(ra->pos, ea->pos);
    if (d <= threshold_m) return {LocationComparison::Consistent, d};
    return {LocationComparison::Mismatch, d};
  }
  const auto* rr = std::get_if<RelativeLocation>(&reported);
  const auto* er = std::get_if<RelativeLocation>(&estimate);
  if (rr && er) {
    if (rr->cell_id == er->cell_id) return {LocationComparison::Consistent, 0.0};
    return {LocationComparison::Mismatch, 0.0};
  }
  return {LocationComparison::IncomparableKinds, 0.0};
}

void WorldState::add_node(MobileNode n) { nodes_[n.id] = std::move(n); }

void WorldState::add_base_station(BaseStation b) { stations_.push_back(std::move(b)); }

const MobileNode& WorldState::node(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("unknown world node: " + id);
  return it->second;
}

MobileNode& WorldState::node(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("unknown world node: " + id);
  return it->second;
}

void WorldState::advance(SimTime dt_ms) {
  const double dt = static_cast<double>(dt_ms) / 1000.0;
  for (auto& [id, n] : nodes_) {
    if (n.waypoints.empty() || n.speed_mps <= 0.0) continue;
    double budget = n.speed_mps * dt;
    while (budget > 0.0 && !n.waypoints.empty()) {
      const Vec3 target = n.waypoints.front();
      const double d = distance(n.position, target);
      if (d <= budget || d <= 1.0) {
        n.position = target;
        n.waypoints.erase(n.waypoints.begin());
        budget -= d;
        continue;
      }
      n.position = n.position + (target - n.position) * (budget / d);
      budget = 0.0;
    }
    // Arrival rule: a waypoint within 1 m counts as reached.
    if (!n.waypoints.empty() && distance(n.position, n.waypoints.front()) <= 1.0) {
      n.position = n.waypoints.front();
      n.waypoints.erase(n.waypoints.begin());
    }
  }
}

ReportedLocation WorldState::gnss_self_report(const NodeId& id) const {
  const auto& n = node(id);
  bool spoofed = n.spoof_offset.norm() > 0.0;
  return {n.position + n.spoof_offset, spoofed};
}

void WorldState::set_spoof_offset(const NodeId& id, const Vec3& offset) {
  node(id).spoof_offset = offset;
}

std::optional<Vec3> WorldState::ngbs_measure(const BaseStation& bs, const Vec3& node_true_pos,
                                             Rng& rng) const {
  if (distance(bs.position, node_true_pos) > bs.coverage_radius_m) return std::nullopt;
  if (noise_sigma_m <= 0.0) return node_true_pos;
  return Vec3{node_true_pos.x + rng.gaussian(0.0, noise_sigma_m),
              node_true_pos.y + rng.gaussian(0.0, noise_sigma_m),
              node_true_pos.z + rng.gaussian(0.0, noise_sigma_m)};
}

double WorldState::distance_between(const NodeId& a, const NodeId& b) const {
  return distance(node(a).position, node(b).position);
}

}  // namespace skylink
