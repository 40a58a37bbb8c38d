// SPDX-License-Identifier: Apache-2.0
#include "handoff/baseline.hpp"

#include <limits>

namespace handoff {

BaselineMnAgent::BaselineMnAgent(Engine& eng, Network& net, NodeId mn,
                                 HandoffRecorder& recorder)
    : eng_(eng), net_(net), mn_(mn), recorder_(recorder) {
  history_.depth = net_.config().handoff.history_depth;
  history_.alpha = net_.config().handoff.ewma_alpha;
  recorder_.map_vip(net_.mn(mn_).vip, mn_);
}

TriggerParams BaselineMnAgent::trigger_params() const {
  const HandoffConfig& h = net_.config().handoff;
  return TriggerParams{h.lq_threshold_dbm, h.lq_margin_db, h.stale_us()};
}

void BaselineMnAgent::start() {
  NodeId best = kNoNode;
  double best_rssi = -std::numeric_limits<double>::infinity();
  for (NodeId apid : net_.ap_ids()) {
    if (net_.ap(apid).role != ApRole::Edge || !net_.in_range(apid, mn_)) continue;
    const double rssi = net_.rssi_between(apid, mn_, false);
    if (best == kNoNode || rssi > best_rssi) {
      best = apid;
      best_rssi = rssi;
    }
  }
  if (best != kNoNode) net_.bootstrap_associate(mn_, 0, best);
  phase_ = BaselinePhase::Monitoring;
  schedule_monitor_tick();
}

void BaselineMnAgent::pause_scanning() {
  paused_ = true;
  if (tick_ != 0) eng_.cancel(tick_);
  tick_ = 0;
}

void BaselineMnAgent::schedule_monitor_tick() {
  if (paused_) return;
  tick_ = eng_.schedule(EventKind::ScanTick, mn_, net_.config().handoff.dwell_us(),
                        [this] { on_monitor_tick(); });
}

void BaselineMnAgent::on_monitor_tick() {
  tick_ = 0;
  const auto samples =
      net_.scan_step(mn_, 0, net_.config().handoff.scan_channels);
  for (const ScanSample& s : samples) {
    history_.add(eng_.now(), s.bssid, s.lq.rssi_dbm, s.edge);
  }
  if (phase_ != BaselinePhase::Monitoring) return;
  const auto current = net_.mn(mn_).radios[0].association;
  const auto candidate =
      find_better_ap(history_, current, trigger_params(), eng_.now());
  if (!candidate) {
    schedule_monitor_tick();
    return;
  }

  // Break first: the link is gone for the whole sweep + associate + exchange.
  const NodeId cur_ap = current ? net_.ap_by_bssid(*current) : kNoNode;
  const NodeId cand_ap = net_.ap_by_bssid(*candidate);
  recorder_.open(mn_, cur_ap == kNoNode ? "-" : net_.node_name(cur_ap),
                 cand_ap == kNoNode ? "-" : net_.node_name(cand_ap), eng_.now());
  net_.dissociate(mn_, 0);
  start_sweep();
}

void BaselineMnAgent::start_sweep() {
  if (paused_) return;  // drain: stop the retry loop so commitments settle
  phase_ = BaselinePhase::Sweeping;
  sweep_pos_ = 0;
  tick_ = eng_.schedule(EventKind::ScanTick, mn_, net_.config().handoff.dwell_us(),
                        [this] { on_sweep_tick(); });
}

void BaselineMnAgent::on_sweep_tick() {
  tick_ = 0;
  const auto& channels = net_.config().handoff.sweep_channels;
  const auto samples = net_.scan_step(mn_, 0, channels);
  for (const ScanSample& s : samples) {
    history_.add(eng_.now(), s.bssid, s.lq.rssi_dbm, s.edge);
  }
  sweep_pos_++;
  if (sweep_pos_ < static_cast<int>(channels.size())) {
    tick_ = eng_.schedule(EventKind::ScanTick, mn_,
                          net_.config().handoff.dwell_us(),
                          [this] { on_sweep_tick(); });
    return;
  }
  on_sweep_complete();
}

void BaselineMnAgent::on_sweep_complete() {
  // Associate to the best live edge AP; nothing found means sweep again.
  std::optional<MacAddr> best;
  double best_lq = -std::numeric_limits<double>::infinity();
  for (const auto& [bssid, entry] : history_.by_bssid) {
    if (!entry.edge) continue;
    const auto s = history_.smoothed(bssid, eng_.now(),
                                     net_.config().handoff.stale_us());
    if (!s) continue;
    if (!best || *s > best_lq) {
      best = bssid;
      best_lq = *s;
    }
  }
  if (!best) {
    start_sweep();
    return;
  }
  phase_ = BaselinePhase::Associating;
  candidate_ap_ = net_.ap_by_bssid(*best);
  net_.begin_associate(mn_, 0, *best, [this](bool ok) {
    if (phase_ != BaselinePhase::Associating) return;
    if (!ok) {
      start_sweep();
      return;
    }
    if (HandoffRecord* rec = recorder_.current(mn_)) {
      rec->t_associated = eng_.now();
    }
    phase_ = BaselinePhase::AwaitOffer;
    retry_count_ = 0;
    send_request_route();
    retry_timer_ = eng_.schedule(EventKind::Timer, mn_,
                                 net_.config().handoff.retry_us(),
                                 [this] { on_retry_timer(); });
  });
}

void BaselineMnAgent::send_request_route() {
  const MnNode& m = net_.mn(mn_);
  net_.send_control(mn_, ControlDest::broadcast(0),
                    RequestRoute{net_.config().handoff.required_bandwidth_kbps,
                                 m.radios[0].mac, m.vip});
}

void BaselineMnAgent::on_retry_timer() {
  retry_timer_ = 0;
  if (phase_ != BaselinePhase::AwaitOffer) return;
  if (retry_count_ >= net_.config().handoff.max_retries) {
    abandon_to_sweep("offer-timeout");
    return;
  }
  retry_count_++;
  send_request_route();
  retry_timer_ = eng_.schedule(EventKind::Timer, mn_,
                               net_.config().handoff.retry_us(),
                               [this] { on_retry_timer(); });
}

void BaselineMnAgent::on_offer(NodeId from, const OfferRoute& offer) {
  if (phase_ != BaselinePhase::AwaitOffer || from != candidate_ap_) return;
  if (retry_timer_ != 0) eng_.cancel(retry_timer_);
  retry_timer_ = 0;
  if (offer.available_bandwidth_kbps <
      net_.config().handoff.required_bandwidth_kbps) {
    abandon_to_sweep("offer-rejected");
    return;
  }
  accepted_offer_ = offer;
  net_.mn_install_ap_path(mn_, 0, offer.ap_ip, offer.ap_mac);
  net_.send_control(mn_, ControlDest::unicast(candidate_ap_, 0),
                    SwitchRouteMnToB{net_.mn(mn_).vip});
  phase_ = BaselinePhase::AwaitSwitchOk;
  ok_timer_ = eng_.schedule(EventKind::Timer, mn_,
                            net_.config().handoff.ok_timeout_us(),
                            [this] { on_ok_timer(); });
}

void BaselineMnAgent::on_ok_timer() {
  ok_timer_ = 0;
  if (phase_ != BaselinePhase::AwaitSwitchOk) return;
  abandon_to_sweep("ok-timeout");
}

void BaselineMnAgent::on_ok(const SwitchRouteOk& ok) {
  if (phase_ != BaselinePhase::AwaitSwitchOk) return;
  (void)ok;
  if (ok_timer_ != 0) eng_.cancel(ok_timer_);
  ok_timer_ = 0;
  net_.mn_set_default_route(mn_, 0, accepted_offer_.ap_ip);
  if (HandoffRecord* rec = recorder_.current(mn_)) {
    rec->t_default_route_switched = eng_.now();
    // The old link broke at the trigger; the cycle ends here.
    rec->t_dissociated = eng_.now();
    rec->retries = retry_count_;
  }
  recorder_.close(mn_, HandoffOutcome::Completed);
  candidate_ap_ = kNoNode;
  phase_ = BaselinePhase::Monitoring;
  schedule_monitor_tick();
}

void BaselineMnAgent::abandon_to_sweep(const std::string& reason) {
  // Single radio, old link already gone: the only way forward is to try
  // again from the sweep.
  if (retry_timer_ != 0) eng_.cancel(retry_timer_);
  if (ok_timer_ != 0) eng_.cancel(ok_timer_);
  retry_timer_ = 0;
  ok_timer_ = 0;
  net_.dissociate(mn_, 0);
  if (HandoffRecord* rec = recorder_.current(mn_)) {
    rec->retries = retry_count_;
    recorder_.close(mn_, HandoffOutcome::Abandoned, reason);
    // The next attempt is a fresh record opened at sweep completion.
    recorder_.open(mn_, rec->old_ap, rec->new_ap, eng_.now());
  }
  start_sweep();
}

void BaselineMnAgent::on_control(NodeId from, const HandoffMessage& msg) {
  if (const auto* offer = std::get_if<OfferRoute>(&msg)) {
    on_offer(from, *offer);
  } else if (const auto* ok = std::get_if<SwitchRouteOk>(&msg)) {
    on_ok(*ok);
  }
}

}  // namespace handoff
