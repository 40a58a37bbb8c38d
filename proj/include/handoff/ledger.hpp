// SPDX-License-Identifier: Apache-2.0
//
// Per-edge-AP bandwidth accounting. The AP monitors the available bandwidth
// of its path to the gateway; effective bandwidth is the monitored value
// minus every outstanding commitment and every reservation in use by a
// currently-served MN. A commitment either converts to an in-use
// reservation when the handoff completes, or is freed by its expiry timer —
// never both, so bandwidth cannot leak.
#ifndef HANDOFF_LEDGER_HPP
#define HANDOFF_LEDGER_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "handoff/engine.hpp"
#include "handoff/ids.hpp"
#include "handoff/messages.hpp"
#include "handoff/time.hpp"

namespace handoff {

class BandwidthLedger {
 public:
  struct Commitment {
    std::int64_t kbps = 0;
    SimTime expiry = 0;
    EventId timer = 0;
    OfferRoute offer;  // cached so duplicate requests get an identical reply
  };

  BandwidthLedger() = default;
  explicit BandwidthLedger(std::int64_t monitored_kbps)
      : monitored_kbps_(monitored_kbps) {}

  std::int64_t monitored() const { return monitored_kbps_; }
  std::int64_t committed_total() const;
  std::int64_t in_use_total() const;
  std::int64_t effective() const {
    return monitored_kbps_ - committed_total() - in_use_total();
  }

  bool has_commitment(IpAddr vip) const { return commitments_.count(vip) != 0; }
  const Commitment* find_commitment(IpAddr vip) const;

  void commit(IpAddr vip, std::int64_t kbps, SimTime expiry, EventId timer,
              const OfferRoute& offer);
  void refresh(IpAddr vip, SimTime expiry, EventId timer);

  // Expiry path: drops the pending commitment, restoring effective bandwidth.
  bool free_commitment(IpAddr vip);

  // Completion path: the commitment becomes an in-use reservation.
  bool consume(IpAddr vip);

  // Dissociation path: releases whatever the MN holds, pending or in use.
  void release(IpAddr vip);

  const std::map<IpAddr, Commitment>& commitments() const { return commitments_; }
  const std::map<IpAddr, std::int64_t>& in_use() const { return in_use_; }

 private:
  std::int64_t monitored_kbps_ = 0;
  std::map<IpAddr, Commitment> commitments_;
  std::map<IpAddr, std::int64_t> in_use_;
};

}  // namespace handoff

#endif
