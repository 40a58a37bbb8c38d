// SPDX-License-Identifier: Apache-2.0
#include "handoff/ledger.hpp"

#include <cassert>

namespace handoff {

std::int64_t BandwidthLedger::committed_total() const {
  std::int64_t sum = 0;
  for (const auto& [vip, c] : commitments_) sum += c.kbps;
  return sum;
}

std::int64_t BandwidthLedger::in_use_total() const {
  std::int64_t sum = 0;
  for (const auto& [vip, kbps] : in_use_) sum += kbps;
  return sum;
}

const BandwidthLedger::Commitment* BandwidthLedger::find_commitment(
    IpAddr vip) const {
  auto it = commitments_.find(vip);
  return it == commitments_.end() ? nullptr : &it->second;
}

void BandwidthLedger::commit(IpAddr vip, std::int64_t kbps, SimTime expiry,
                             EventId timer, const OfferRoute& offer) {
  assert(commitments_.count(vip) == 0);
  commitments_[vip] = Commitment{kbps, expiry, timer, offer};
  assert(effective() >= 0);
}

void BandwidthLedger::refresh(IpAddr vip, SimTime expiry, EventId timer) {
  auto it = commitments_.find(vip);
  assert(it != commitments_.end());
  it->second.expiry = expiry;
  it->second.timer = timer;
}

bool BandwidthLedger::free_commitment(IpAddr vip) {
  return commitments_.erase(vip) != 0;
}

bool BandwidthLedger::consume(IpAddr vip) {
  auto it = commitments_.find(vip);
  if (it == commitments_.end()) return false;
  in_use_[vip] += it->second.kbps;
  commitments_.erase(it);
  return true;
}

void BandwidthLedger::release(IpAddr vip) {
  commitments_.erase(vip);
  in_use_.erase(vip);
}

}  // namespace handoff
