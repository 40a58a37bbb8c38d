// SPDX-License-Identifier: Apache-2.0
//
// Contrast baseline: one radio, break-before-make. The trigger rule is the
// same as the dual-radio scheme (paired runs share trigger points), but on
// trigger the radio dissociates first, sweeps every channel, associates with
// the best AP found, and only then runs the route-switch exchange. The data
// path is dead for the whole gap.
#ifndef HANDOFF_BASELINE_HPP
#define HANDOFF_BASELINE_HPP

#include <optional>
#include <string>

#include "handoff/agents.hpp"
#include "handoff/engine.hpp"
#include "handoff/messages.hpp"
#include "handoff/network.hpp"

namespace handoff {

enum class BaselinePhase { Idle, Monitoring, Sweeping, Associating, AwaitOffer,
                           AwaitSwitchOk };

class BaselineMnAgent {
 public:
  BaselineMnAgent(Engine& eng, Network& net, NodeId mn, HandoffRecorder& recorder);

  void start();
  void pause_scanning();
  void on_control(NodeId from, const HandoffMessage& msg);

  BaselinePhase phase() const { return phase_; }
  int radio() const { return 0; }

  // Exposed for direct state-machine tests.
  void on_sweep_complete();

 private:
  void schedule_monitor_tick();
  void on_monitor_tick();
  void start_sweep();
  void on_sweep_tick();
  void on_offer(NodeId from, const OfferRoute& offer);
  void on_ok(const SwitchRouteOk& ok);
  void on_retry_timer();
  void on_ok_timer();
  void send_request_route();
  void abandon_to_sweep(const std::string& reason);
  TriggerParams trigger_params() const;

  Engine& eng_;
  Network& net_;
  NodeId mn_;
  HandoffRecorder& recorder_;
  BaselinePhase phase_ = BaselinePhase::Idle;
  ScanHistory history_;
  NodeId candidate_ap_ = kNoNode;
  OfferRoute accepted_offer_;
  int retry_count_ = 0;
  int sweep_pos_ = 0;
  EventId tick_ = 0;
  EventId retry_timer_ = 0;
  EventId ok_timer_ = 0;
  bool paused_ = false;
};

}  // namespace handoff

#endif
