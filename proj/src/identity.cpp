#include "skylink/identity.hpp"

#include <algorithm>

namespace skylink {

void IdentityRegistry::add(const NodeId& ue, const std::string& gpp3_id,
                           const std::string& caa_id) {
  auto& e = by_ue_[ue];
  e.gpp3_id = gpp3_id;
  if (!e.current_caa.empty() && e.current_caa != caa_id) e.history.push_back(e.current_caa);
  e.current_caa = caa_id;
}

void IdentityRegistry::reissue(const NodeId& ue, const std::string& new_caa_id) {
  auto it = by_ue_.find(ue);
  if (it == by_ue_.end()) return;
  it->second.history.push_back(it->second.current_caa);
  it->second.current_caa = new_caa_id;
}

std::optional<NodeId> IdentityRegistry::match_ids(const std::string& caa_id) const {
  std::optional<NodeId> found;
  for (const auto& [ue, e] : by_ue_) {
    bool hit = e.current_caa == caa_id ||
               std::find(e.history.begin(), e.history.end(), caa_id) != e.history.end();
    if (!hit) continue;
    if (found) throw AbortRunError("ambiguous CAA id '" + caa_id + "' claimed by " + *found +
                                   " and " + ue);
    found = ue;
  }
  return found;
}

}  // namespace skylink
