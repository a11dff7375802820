#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace skylink {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend bool operator==(const Vec3& a, const Vec3& b) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

// Absolute position in the planar world frame (meters).
struct AbsoluteLocation {
  Vec3 pos;
  friend bool operator==(const AbsoluteLocation&, const AbsoluteLocation&) = default;
};

// Relative position expressed through the serving cell.
struct RelativeLocation {
  std::string cell_id;
  std::string tracking_area;
  friend bool operator==(const RelativeLocation&, const RelativeLocation&) = default;
};

using Location = std::variant<AbsoluteLocation, RelativeLocation>;

inline Location absolute(double x, double y, double z) { return AbsoluteLocation{{x, y, z}}; }

inline bool is_absolute(const Location& l) { return std::holds_alternative<AbsoluteLocation>(l); }

using Waypoints = std::vector<Vec3>;

}  // namespace skylink
