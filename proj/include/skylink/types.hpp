#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace skylink {

using NodeId = std::string;
using SimTime = std::int64_t;  // simulated milliseconds

// Every addressable party in a run: the UAS pair, the 5GC network
// functions, the RAN, and the external aviation entities.
enum class EntityKind {
  Uav,
  Uavc,
  Amf,
  Smf,
  Pcf,
  Bsf,
  Udm,
  Gmlc,
  Lmf,
  NgBs,
  Ufes,
  Uaaf,
  Ucf,
  Uss,
  Tpae,
};

// Reference-architecture interfaces. Sbi is the intra-core service-based
// hop between network functions; it is not tappable.
enum class Interface {
  U1,
  U2,
  U3,
  U4,
  U5,
  U6,
  U7,
  U8,
  U9,
  U2U,
  Sbi,
};

const char* to_string(EntityKind k);
const char* to_string(Interface i);
std::optional<EntityKind> entity_kind_from_string(const std::string& s);
std::optional<Interface> interface_from_string(const std::string& s);

inline bool is_ue(EntityKind k) { return k == EntityKind::Uav || k == EntityKind::Uavc; }

inline bool is_core_nf(EntityKind k) {
  switch (k) {
    case EntityKind::Amf:
    case EntityKind::Smf:
    case EntityKind::Pcf:
    case EntityKind::Bsf:
    case EntityKind::Udm:
    case EntityKind::Gmlc:
    case EntityKind::Lmf:
    case EntityKind::Ufes:
    case EntityKind::Uaaf:
    case EntityKind::Ucf:
      return true;
    default:
      return false;
  }
}

// True when the (src, dst) entity kinds may exchange envelopes on `iface`
// per the architecture table. Symmetric in src/dst except U7/U2 which only
// carry traffic toward the external observer.
bool interface_legal(EntityKind src, EntityKind dst, Interface iface);

class IllegalInterfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TapConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AbortRunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skylink
