// SPDX-License-Identifier: Apache-2.0
#include "handoff/mobility.hpp"

#include <stdexcept>

namespace handoff {

Vec2 position_at(const MobilityPath& path, SimTime t) {
  if (path.waypoints.empty()) {
    throw std::invalid_argument("mobility path has no waypoints");
  }
  if (path.waypoints.size() == 1 || path.speed_mps <= 0.0) {
    return path.waypoints.front();
  }
  double remaining = path.speed_mps * to_seconds(t);
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const Vec2 a = path.waypoints[i];
    const Vec2 b = path.waypoints[i + 1];
    const double leg = distance(a, b);
    if (remaining <= leg) {
      if (leg == 0.0) continue;
      const double f = remaining / leg;
      return Vec2{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
    }
    remaining -= leg;
  }
  return path.waypoints.back();
}

}  // namespace handoff
