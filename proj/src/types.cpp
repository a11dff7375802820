#include "skylink/types.hpp"

#include <array>
#include <utility>

namespace skylink {

const char* to_string(EntityKind k) {
  switch (k) {
    case EntityKind::Uav: return "uav";
    case EntityKind::Uavc: return "uavc";
    case EntityKind::Amf: return "amf";
    case EntityKind::Smf: return "smf";
    case EntityKind::Pcf: return "pcf";
    case EntityKind::Bsf: return "bsf";
    case EntityKind::Udm: return "udm";
    case EntityKind::Gmlc: return "gmlc";
    case EntityKind::Lmf: return "lmf";
    case EntityKind::NgBs: return "ngbs";
    case EntityKind::Ufes: return "ufes";
    case EntityKind::Uaaf: return "uaaf";
    case EntityKind::Ucf: return "ucf";
    case EntityKind::Uss: return "uss";
    case EntityKind::Tpae: return "tpae";
  }
  return "?";
}

const char* to_string(Interface i) {
  switch (i) {
    case Interface::U1: return "U1";
    case Interface::U2: return "U2";
    case Interface::U3: return "U3";
    case Interface::U4: return "U4";
    case Interface::U5: return "U5";
    case Interface::U6: return "U6";
    case Interface::U7: return "U7";
    case Interface::U8: return "U8";
    case Interface::U9: return "U9";
    case Interface::U2U: return "U2U";
    case Interface::Sbi: return "SBI";
  }
  return "?";
}

std::optional<EntityKind> entity_kind_from_string(const std::string& s) {
  static const std::array<EntityKind, 15> kinds = {
      EntityKind::Uav,  EntityKind::Uavc, EntityKind::Amf,  EntityKind::Smf, EntityKind::Pcf,
      EntityKind::Bsf,  EntityKind::Udm,  EntityKind::Gmlc, EntityKind::Lmf, EntityKind::NgBs,
      EntityKind::Ufes, EntityKind::Uaaf, EntityKind::Ucf,  EntityKind::Uss, EntityKind::Tpae};
  for (auto k : kinds)
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<Interface> interface_from_string(const std::string& s) {
  static const std::array<Interface, 11> all = {
      Interface::U1, Interface::U2, Interface::U3, Interface::U4,  Interface::U5, Interface::U6,
      Interface::U7, Interface::U8, Interface::U9, Interface::U2U, Interface::Sbi};
  for (auto i : all)
    if (s == to_string(i)) return i;
  return std::nullopt;
}

namespace {

bool legal_directed(EntityKind src, EntityKind dst, Interface iface) {
  switch (iface) {
    case Interface::U1:
      // UE <-> network entry points: AMF (control plane) and UAAF (A&A as
      // user-plane data).
      return is_ue(src) && (dst == EntityKind::Amf || dst == EntityKind::Uaaf);
    case Interface::U2:
      // Network-side RID&T feed toward the TPAE.
      return (src == EntityKind::Ufes || src == EntityKind::Ucf) && dst == EntityKind::Tpae;
    case Interface::U3:
      return src == EntityKind::Uav && dst == EntityKind::Uavc;
    case Interface::U4:
      return src == EntityKind::Uav && dst == EntityKind::Tpae;
    case Interface::U5:
      return src == EntityKind::Uav && dst == EntityKind::Uavc;
    case Interface::U6:
      return src == EntityKind::Ufes && dst == EntityKind::Uss;
    case Interface::U7:
      // RID broadcast toward entities outside 3GPP scope.
      return src == EntityKind::Uav && dst == EntityKind::Tpae;
    case Interface::U8:
      return src == EntityKind::Uav && dst == EntityKind::Uavc;
    case Interface::U9:
      return is_ue(src) && dst == EntityKind::Uss;
    case Interface::U2U:
      return src == EntityKind::Uav && dst == EntityKind::Uav;
    case Interface::Sbi: {
      bool core_pair = is_core_nf(src) && is_core_nf(dst);
      bool ran_hop = (src == EntityKind::Amf && dst == EntityKind::NgBs);
      return core_pair || ran_hop;
    }
  }
  return false;
}

}  // namespace

bool interface_legal(EntityKind src, EntityKind dst, Interface iface) {
  if (iface == Interface::U7) return legal_directed(src, dst, iface);  // broadcast-only direction
  return legal_directed(src, dst, iface) || legal_directed(dst, src, iface);
}

}  // namespace skylink
