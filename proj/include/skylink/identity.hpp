#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skylink/types.hpp"

namespace skylink {

// Three-tier identity of a UAS node. plmn_ue_id never changes; the
// CAA-level id may be re-issued once per C2 establishment, with the old
// value retained in history.
struct IdentityBundle {
  NodeId plmn_ue_id;
  std::string gpp3_uav_id;
  std::string caa_level_uav_id;
  std::vector<std::string> caa_history;
  std::string served_uss;
  std::string app_id;

  friend bool operator==(const IdentityBundle&, const IdentityBundle&) = default;
};

struct SubscriptionRecord {
  NodeId plmn_ue_id;
  bool aerial_allowed = false;
  std::string served_uss;
  std::string policy_blob;

  friend bool operator==(const SubscriptionRecord&, const SubscriptionRecord&) = default;
};

struct PairingRecord {
  NodeId uav;
  NodeId uavc;
  bool authorized = false;
  std::string uavc_address;
};

// CAA-id -> UE-id registry kept by the UCF. Lookups cover current and
// historical CAA ids so pre-reissue references still resolve.
class IdentityRegistry {
 public:
  void add(const NodeId& ue, const std::string& gpp3_id, const std::string& caa_id);
  // Records a re-issued CAA id for an already-known UE.
  void reissue(const NodeId& ue, const std::string& new_caa_id);

  // Returns the unique UE whose bundle contains caa_id (current or
  // historical); nullopt when absent. Throws AbortRunError when two
  // bundles claim the same id (invariant breach).
  std::optional<NodeId> match_ids(const std::string& caa_id) const;

  bool known(const NodeId& ue) const { return by_ue_.count(ue) != 0; }
  std::size_t size() const { return by_ue_.size(); }

 private:
  struct Entry {
    std::string gpp3_id;
    std::string current_caa;
    std::vector<std::string> history;
  };
  std::map<NodeId, Entry> by_ue_;
};

}  // namespace skylink
