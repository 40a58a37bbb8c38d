// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_MOBILITY_HPP
#define HANDOFF_MOBILITY_HPP

#include <vector>

#include "handoff/ids.hpp"
#include "handoff/time.hpp"

namespace handoff {

// Piecewise-linear constant-speed path. Position is an analytic function of
// time, so mobility needs no simulation events.
struct MobilityPath {
  std::vector<Vec2> waypoints;
  double speed_mps = 0.0;
};

// Linear interpolation along the waypoints; clamps at the final waypoint.
Vec2 position_at(const MobilityPath& path, SimTime t);

}  // namespace handoff

#endif
