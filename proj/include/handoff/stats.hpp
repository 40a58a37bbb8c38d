// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_STATS_HPP
#define HANDOFF_STATS_HPP

#include <cstdint>
#include <vector>

#include "handoff/time.hpp"

namespace handoff {

struct LossStats {
  bool defined = true;  // false when nothing was sent
  long long lost = 0;
  double per_10k = 0.0;
  double percent = 0.0;
};

LossStats loss_stats(long long sent, long long received_in_time);

struct LatencyStats {
  std::size_t count = 0;
  double mean_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
};

LatencyStats latency_stats(const std::vector<SimTime>& latencies_us);

// Coverage overlap needed to complete a handoff of the given latency at the
// given speed: meters = (speed * 1000 / 3600) * latency_seconds.
double overlap_required_m(double speed_kmph, double latency_ms);

}  // namespace handoff

#endif
