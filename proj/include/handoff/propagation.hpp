// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_PROPAGATION_HPP
#define HANDOFF_PROPAGATION_HPP

#include "handoff/ids.hpp"
#include "handoff/random.hpp"

namespace handoff {

// Log-distance path loss with optional log-normal shadowing.
struct PropagationParams {
  double tx_power_dbm = 20.0;
  double ref_loss_db = 40.0;        // loss at 1 m
  double path_loss_exponent = 3.0;  // >= 2
  double noise_floor_dbm = -95.0;
  double shadowing_sigma_db = 0.0;  // 0 => fully deterministic
  double rx_sensitivity_dbm = -92.0;
};

struct LinkQuality {
  double rssi_dbm = 0.0;
  double snr_db = 0.0;
  double lq_score = 0.0;  // smoothed; see ScanHistory
};

// rssi = tx_power - ref_loss - 10*n*log10(d) + shadowing. Distances below
// 1 m clamp to the reference distance. `shadow` may be null (or sigma 0)
// for the deterministic value.
double compute_rssi(Vec2 tx_pos, Vec2 rx_pos, const PropagationParams& params,
                    RandomStream::Stream* shadow = nullptr);

}  // namespace handoff

#endif
