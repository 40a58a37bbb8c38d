// SPDX-License-Identifier: Apache-2.0
#include "handoff/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace handoff {

LossStats loss_stats(long long sent, long long received_in_time) {
  if (received_in_time > sent) {
    throw std::invalid_argument("loss_stats: received exceeds sent");
  }
  LossStats s;
  if (sent == 0) {
    s.defined = false;
    return s;
  }
  s.lost = sent - received_in_time;
  s.per_10k = static_cast<double>(s.lost) * 10000.0 / static_cast<double>(sent);
  s.percent = static_cast<double>(s.lost) * 100.0 / static_cast<double>(sent);
  return s;
}

LatencyStats latency_stats(const std::vector<SimTime>& latencies_us) {
  LatencyStats s;
  s.count = latencies_us.size();
  if (latencies_us.empty()) return s;
  SimTime min = latencies_us.front();
  SimTime max = latencies_us.front();
  double sum = 0.0;
  for (SimTime v : latencies_us) {
    min = std::min(min, v);
    max = std::max(max, v);
    sum += static_cast<double>(v);
  }
  s.mean_ms = sum / static_cast<double>(latencies_us.size()) / 1000.0;
  s.min_ms = to_ms(min);
  s.max_ms = to_ms(max);
  return s;
}

double overlap_required_m(double speed_kmph, double latency_ms) {
  return speed_kmph * 1000.0 / 3600.0 * (latency_ms / 1000.0);
}

}  // namespace handoff
