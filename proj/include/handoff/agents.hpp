// SPDX-License-Identifier: Apache-2.0
//
// The three cooperating handoff agents. MN.HA drives the cycle:
// SCAN -> FIND-BETTER-AP -> ASSOCIATE(secondary) -> REQUEST-ROUTE ->
// [AP: CHECK-BANDWIDTH, CREATE-ARP-ENTRY(MN), CREATE-ROUTE(MN)] ->
// OFFER-ROUTE -> [MN: CREATE-ARP-ENTRY(B), CREATE-ROUTE(B)] ->
// SWITCH-ROUTE(MN->B) -> SWITCH-ROUTE(B->G) -> [G: route flip] ->
// SWITCH-ROUTE-OK(G->B->MN) -> [MN: default route via secondary, role swap,
// DISSOCIATE old primary]. The old radio keeps carrying data until the very
// last step.
#ifndef HANDOFF_AGENTS_HPP
#define HANDOFF_AGENTS_HPP

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "handoff/engine.hpp"
#include "handoff/ledger.hpp"
#include "handoff/messages.hpp"
#include "handoff/network.hpp"

namespace handoff {

// --- scan history + trigger -------------------------------------------------

struct ScanHistory {
  struct Entry {
    std::deque<std::pair<SimTime, double>> samples;  // (t, rssi), bounded ring
    SimTime last_seen = 0;
    bool edge = true;
  };

  int depth = 5;
  double alpha = 0.5;
  std::map<MacAddr, Entry> by_bssid;

  void add(SimTime t, MacAddr bssid, double rssi, bool edge);
  // EWMA over the ring, oldest to newest; nullopt if unseen or stale.
  std::optional<double> smoothed(MacAddr bssid, SimTime now, SimTime stale_us) const;
};

struct TriggerParams {
  double threshold_dbm = -75.0;
  double margin_db = 5.0;
  SimTime stale_us = 500000;
};

// Returns the BSSID of a better AP iff the current AP's smoothed LQ sits
// below the threshold and the best edge candidate clears it by the margin.
// A current AP that has dropped out of the scan history entirely counts as
// arbitrarily bad.
std::optional<MacAddr> find_better_ap(const ScanHistory& history,
                                      std::optional<MacAddr> current_bssid,
                                      const TriggerParams& params, SimTime now);

// --- handoff records ----------------------------------------------------------

enum class HandoffOutcome { InProgress, Completed, Abandoned };

struct HandoffRecord {
  NodeId mn = kNoNode;
  std::string old_ap;
  std::string new_ap;
  SimTime t_trigger = 0;
  std::optional<SimTime> t_associated;
  std::optional<SimTime> t_route_switched_gateway;
  std::optional<SimTime> t_default_route_switched;
  std::optional<SimTime> t_dissociated;
  int retries = 0;
  HandoffOutcome outcome = HandoffOutcome::InProgress;
  std::string abandon_reason;
};

// t_dissociated - t_trigger; only defined for completed handoffs.
SimTime handoff_latency(const HandoffRecord& record);

class HandoffRecorder {
 public:
  HandoffRecord& open(NodeId mn, std::string old_ap, std::string new_ap,
                      SimTime t_trigger);
  HandoffRecord* current(NodeId mn);      // open record, if any
  HandoffRecord* current_by_vip(IpAddr vip);
  void close(NodeId mn, HandoffOutcome outcome, const std::string& reason = "");
  void map_vip(IpAddr vip, NodeId mn) { vip_to_mn_[vip] = mn; }

  const std::vector<HandoffRecord>& records() const { return records_; }
  std::vector<HandoffRecord>& records() { return records_; }

  // Invoked right after a completed handoff's DISSOCIATE, with the old AP.
  std::function<void(NodeId old_ap, NodeId mn)> on_completed;

 private:
  std::vector<HandoffRecord> records_;
  std::map<NodeId, std::size_t> open_;  // mn -> index into records_
  std::map<IpAddr, NodeId> vip_to_mn_;
};

// --- MN agent -----------------------------------------------------------------

enum class MnPhase { Idle, Scanning, Associating, AwaitOffer, AwaitSwitchOk,
                     Finalizing };

const char* mn_phase_name(MnPhase p);

struct MnHandoffState {
  MnPhase phase = MnPhase::Idle;
  std::optional<MacAddr> candidate_bssid;
  NodeId candidate_ap = kNoNode;
  int retry_count = 0;
  EventId retry_timer = 0;
  EventId ok_timer = 0;
  ScanHistory scan_history;
  OfferRoute accepted_offer;
};

class MnAgent {
 public:
  MnAgent(Engine& eng, Network& net, NodeId mn, HandoffRecorder& recorder);

  // Network entry: instant association to the strongest edge AP in range,
  // then continuous scanning on the secondary radio.
  void start();
  // Network entry pinned to a specific AP.
  void start_on(NodeId ap);
  void pause_scanning();  // run drain: no new handoffs

  void on_control(NodeId from, const HandoffMessage& msg);
  void on_scan_tick();

  // Protocol steps, public for direct exercise in tests.
  void begin_handoff(MacAddr candidate);
  void on_offer(NodeId from, const OfferRoute& offer);
  void finalize(const SwitchRouteOk& ok);

  const MnHandoffState& state() const { return st_; }
  MnHandoffState& state() { return st_; }
  int primary_radio() const { return primary_; }
  int secondary_radio() const { return 1 - primary_; }
  std::optional<MacAddr> current_bssid() const;

  // Invoked on every radio role change (invariant instrumentation).
  std::function<void()> on_roles_changed;

 private:
  void schedule_scan_tick();
  void on_retry_timer();
  void on_ok_timer();
  void abandon(const std::string& reason);
  void send_request_route();
  TriggerParams trigger_params() const;

  Engine& eng_;
  Network& net_;
  NodeId mn_;
  HandoffRecorder& recorder_;
  MnHandoffState st_;
  int primary_ = 0;
  EventId scan_tick_ = 0;
  bool scanning_paused_ = false;
};

// --- edge AP agent --------------------------------------------------------------

class ApAgent {
 public:
  ApAgent(Engine& eng, Network& net, NodeId ap, HandoffRecorder& recorder);

  void on_control(NodeId from, const HandoffMessage& msg);

  // Protocol steps.
  void on_request_route(NodeId from, const RequestRoute& req);
  void on_switch_route(NodeId from, const SwitchRouteMnToB& msg);
  void on_switch_route_ok(const SwitchRouteOk& ok);
  void on_ledger_timeout(IpAddr vip);
  void on_client_dissociated(IpAddr vip);

  BandwidthLedger& ledger() { return ledger_; }
  const BandwidthLedger& ledger() const { return ledger_; }
  int denials() const { return denials_; }
  int dropped_switch_routes() const { return dropped_switch_routes_; }

 private:
  Engine& eng_;
  Network& net_;
  NodeId ap_;
  HandoffRecorder& recorder_;
  BandwidthLedger ledger_;
  int denials_ = 0;
  int dropped_switch_routes_ = 0;
};

// --- gateway agent ---------------------------------------------------------------

class GwAgent {
 public:
  GwAgent(Engine& eng, Network& net, HandoffRecorder& recorder);

  void on_control(NodeId from, const HandoffMessage& msg);
  void on_switch_route(NodeId from, const SwitchRouteBToG& msg);

 private:
  Engine& eng_;
  Network& net_;
  HandoffRecorder& recorder_;
};

}  // namespace handoff

#endif
