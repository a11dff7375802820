#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "skylink/location.hpp"
#include "skylink/rng.hpp"
#include "skylink/types.hpp"

namespace skylink {

struct BaseStation {
  NodeId id;
  Vec3 position;
  double coverage_radius_m = 0.0;
};

struct MobileNode {
  NodeId id;
  Vec3 position;
  Waypoints waypoints;
  double speed_mps = 0.0;
  Vec3 spoof_offset;  // added to GNSS self-reports; zero when unspoofed
};

// C2 communication modes ordered by decreasing capability.
enum class C2Mode { Direct, NetworkAssisted, UtmNavigated };

const char* to_string(C2Mode m);
int mode_rank(C2Mode m);  // Direct=2, NetworkAssisted=1, UtmNavigated=0

struct C2Thresholds {
  double t_direct = 0.6;
  double t_assisted = 0.3;
  double hysteresis = 0.05;
  double range_max_m = 1000.0;
};

struct C2ModeState {
  C2Mode mode = C2Mode::Direct;
  double quality = 1.0;
};

// Hysteresis-banded mode selection: the mode changes only when quality
// crosses a threshold by more than the hysteresis margin.
C2ModeState select_c2_mode(const C2ModeState& state, double quality, const C2Thresholds& th);

// Link quality for the direct UAV<->UAV-C channel.
double link_quality(double distance_m, double range_max_m, double jam_intensity);

struct ReportedLocation {
  Vec3 value;
  bool spoofed = false;
};

enum class LocationComparison { Consistent, Mismatch, IncomparableKinds };

struct LocationVerifyResult {
  LocationComparison outcome = LocationComparison::Consistent;
  double distance_m = 0.0;
};

// Compares a node-reported location against the network estimate. Both
// Absolute: Euclidean threshold test. Both Relative: cell-id equality.
// Mixed kinds: IncomparableKinds.
LocationVerifyResult verify_location(const Location& reported, const Location& estimate,
                                     double threshold_m);

class WorldState {
 public:
  int tick_ms = 100;
  double noise_sigma_m = 0.0;

  void add_node(MobileNode n);
  void add_base_station(BaseStation b);

  bool has_node(const NodeId& id) const { return nodes_.count(id) != 0; }
  const MobileNode& node(const NodeId& id) const;
  MobileNode& node(const NodeId& id);
  const std::vector<BaseStation>& base_stations() const { return stations_; }

  // Moves every node toward its next waypoint by speed*dt; a waypoint is
  // consumed on arrival within 1 m.
  void advance(SimTime dt_ms);

  // True position plus the node's active spoof offset.
  ReportedLocation gnss_self_report(const NodeId& id) const;

  void set_spoof_offset(const NodeId& id, const Vec3& offset);

  // One base-station measurement of the node's true position; nullopt when
  // the node is outside the station's coverage. Spoofing never affects it.
  std::optional<Vec3> ngbs_measure(const BaseStation& bs, const Vec3& node_true_pos,
                                   Rng& rng) const;

  double distance_between(const NodeId& a, const NodeId& b) const;

 private:
  std::map<NodeId, MobileNode> nodes_;
  std::vector<BaseStation> stations_;
};

}  // namespace skylink
