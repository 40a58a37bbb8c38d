// SPDX-License-Identifier: Apache-2.0
#include "handoff/propagation.hpp"

#include <cmath>

namespace handoff {

double compute_rssi(Vec2 tx_pos, Vec2 rx_pos, const PropagationParams& params,
                    RandomStream::Stream* shadow) {
  double d = distance(tx_pos, rx_pos);
  if (d < 1.0) d = 1.0;
  double rssi = params.tx_power_dbm - params.ref_loss_db -
                10.0 * params.path_loss_exponent * std::log10(d);
  if (shadow != nullptr && params.shadowing_sigma_db > 0.0) {
    rssi += shadow->normal(params.shadowing_sigma_db);
  }
  return rssi;
}

}  // namespace handoff
