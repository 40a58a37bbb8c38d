// SPDX-License-Identifier: Apache-2.0
#include "handoff/agents.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace handoff {

namespace {
constexpr double kNoSignal = -std::numeric_limits<double>::infinity();
}

// --- scan history -------------------------------------------------------------

void ScanHistory::add(SimTime t, MacAddr bssid, double rssi, bool edge) {
  Entry& e = by_bssid[bssid];
  e.samples.emplace_back(t, rssi);
  while (static_cast<int>(e.samples.size()) > depth) e.samples.pop_front();
  e.last_seen = t;
  e.edge = edge;
}

std::optional<double> ScanHistory::smoothed(MacAddr bssid, SimTime now,
                                            SimTime stale_us) const {
  auto it = by_bssid.find(bssid);
  if (it == by_bssid.end() || it->second.samples.empty()) return std::nullopt;
  if (it->second.last_seen + stale_us < now) return std::nullopt;
  double ewma = it->second.samples.front().second;
  for (std::size_t i = 1; i < it->second.samples.size(); ++i) {
    ewma = alpha * it->second.samples[i].second + (1.0 - alpha) * ewma;
  }
  return ewma;
}

std::optional<MacAddr> find_better_ap(const ScanHistory& history,
                                      std::optional<MacAddr> current_bssid,
                                      const TriggerParams& params, SimTime now) {
  double current_lq = kNoSignal;
  if (current_bssid) {
    if (auto s = history.smoothed(*current_bssid, now, params.stale_us)) {
      current_lq = *s;
    }
  }
  if (current_lq >= params.threshold_dbm) return std::nullopt;

  std::optional<MacAddr> best;
  double best_lq = kNoSignal;
  for (const auto& [bssid, entry] : history.by_bssid) {
    if (!entry.edge) continue;
    if (current_bssid && bssid == *current_bssid) continue;
    const auto s = history.smoothed(bssid, now, params.stale_us);
    if (!s) continue;
    if (!best || *s > best_lq) {
      best = bssid;
      best_lq = *s;
    }
  }
  if (!best) return std::nullopt;
  // A vanished current AP counts as arbitrarily bad: any live candidate wins.
  if (current_lq == kNoSignal) return best;
  if (best_lq >= current_lq + params.margin_db) return best;
  return std::nullopt;
}

// --- records --------------------------------------------------------------------

SimTime handoff_latency(const HandoffRecord& record) {
  if (record.outcome != HandoffOutcome::Completed || !record.t_dissociated) {
    throw std::invalid_argument("handoff_latency: record not completed");
  }
  return *record.t_dissociated - record.t_trigger;
}

HandoffRecord& HandoffRecorder::open(NodeId mn, std::string old_ap,
                                     std::string new_ap, SimTime t_trigger) {
  HandoffRecord rec;
  rec.mn = mn;
  rec.old_ap = std::move(old_ap);
  rec.new_ap = std::move(new_ap);
  rec.t_trigger = t_trigger;
  records_.push_back(std::move(rec));
  open_[mn] = records_.size() - 1;
  return records_.back();
}

HandoffRecord* HandoffRecorder::current(NodeId mn) {
  auto it = open_.find(mn);
  return it == open_.end() ? nullptr : &records_[it->second];
}

HandoffRecord* HandoffRecorder::current_by_vip(IpAddr vip) {
  auto it = vip_to_mn_.find(vip);
  return it == vip_to_mn_.end() ? nullptr : current(it->second);
}

void HandoffRecorder::close(NodeId mn, HandoffOutcome outcome,
                            const std::string& reason) {
  HandoffRecord* rec = current(mn);
  if (!rec) return;
  rec->outcome = outcome;
  rec->abandon_reason = reason;
  open_.erase(mn);
}

// --- MN agent ---------------------------------------------------------------------

const char* mn_phase_name(MnPhase p) {
  switch (p) {
    case MnPhase::Idle: return "idle";
    case MnPhase::Scanning: return "scanning";
    case MnPhase::Associating: return "associating";
    case MnPhase::AwaitOffer: return "await-offer";
    case MnPhase::AwaitSwitchOk: return "await-switch-ok";
    case MnPhase::Finalizing: return "finalizing";
  }
  return "?";
}

MnAgent::MnAgent(Engine& eng, Network& net, NodeId mn, HandoffRecorder& recorder)
    : eng_(eng), net_(net), mn_(mn), recorder_(recorder) {
  st_.scan_history.depth = net_.config().handoff.history_depth;
  st_.scan_history.alpha = net_.config().handoff.ewma_alpha;
  recorder_.map_vip(net_.mn(mn_).vip, mn_);
}

TriggerParams MnAgent::trigger_params() const {
  const HandoffConfig& h = net_.config().handoff;
  return TriggerParams{h.lq_threshold_dbm, h.lq_margin_db, h.stale_us()};
}

std::optional<MacAddr> MnAgent::current_bssid() const {
  return net_.mn(mn_).radios[static_cast<std::size_t>(primary_)].association;
}

void MnAgent::start() {
  // Network entry: join the strongest edge AP in range, if any.
  NodeId best = kNoNode;
  double best_rssi = kNoSignal;
  for (NodeId apid : net_.ap_ids()) {
    if (net_.ap(apid).role != ApRole::Edge) continue;
    if (!net_.in_range(apid, mn_)) continue;
    const double rssi = net_.rssi_between(apid, mn_, false);
    if (best == kNoNode || rssi > best_rssi) {
      best = apid;
      best_rssi = rssi;
    }
  }
  if (best != kNoNode) {
    start_on(best);
    return;
  }
  st_.phase = MnPhase::Scanning;
  schedule_scan_tick();
}

void MnAgent::start_on(NodeId ap) {
  net_.bootstrap_associate(mn_, 0, ap);
  primary_ = 0;
  if (on_roles_changed) on_roles_changed();
  st_.phase = MnPhase::Scanning;
  schedule_scan_tick();
}

void MnAgent::pause_scanning() {
  scanning_paused_ = true;
  if (scan_tick_ != 0) eng_.cancel(scan_tick_);
  scan_tick_ = 0;
}

void MnAgent::schedule_scan_tick() {
  if (scanning_paused_) return;
  scan_tick_ = eng_.schedule(EventKind::ScanTick, mn_,
                             net_.config().handoff.dwell_us(),
                             [this] { on_scan_tick(); });
}

void MnAgent::on_scan_tick() {
  scan_tick_ = 0;
  const auto samples =
      net_.scan_step(mn_, secondary_radio(), net_.config().handoff.scan_channels);
  for (const ScanSample& s : samples) {
    st_.scan_history.add(eng_.now(), s.bssid, s.lq.rssi_dbm, s.edge);
  }
  if (st_.phase != MnPhase::Scanning) return;
  const auto candidate =
      find_better_ap(st_.scan_history, current_bssid(), trigger_params(), eng_.now());
  if (candidate) {
    begin_handoff(*candidate);
    return;
  }
  schedule_scan_tick();
}

void MnAgent::begin_handoff(MacAddr candidate) {
  assert(st_.phase == MnPhase::Scanning);
  const NodeId cand_ap = net_.ap_by_bssid(candidate);
  const auto cur = current_bssid();
  const NodeId cur_ap = cur ? net_.ap_by_bssid(*cur) : kNoNode;
  recorder_.open(mn_, cur_ap == kNoNode ? "-" : net_.node_name(cur_ap),
                 cand_ap == kNoNode ? "-" : net_.node_name(cand_ap), eng_.now());
  st_.phase = MnPhase::Associating;
  st_.candidate_bssid = candidate;
  st_.candidate_ap = cand_ap;
  // The primary radio keeps its association and keeps carrying data while the
  // secondary joins the candidate.
  net_.begin_associate(mn_, secondary_radio(), candidate, [this](bool ok) {
    if (st_.phase != MnPhase::Associating) return;
    if (!ok) {
      abandon("assoc-failed");
      return;
    }
    if (HandoffRecord* rec = recorder_.current(mn_)) {
      rec->t_associated = eng_.now();
    }
    st_.phase = MnPhase::AwaitOffer;
    st_.retry_count = 0;
    send_request_route();
    st_.retry_timer = eng_.schedule(EventKind::Timer, mn_,
                                    net_.config().handoff.retry_us(),
                                    [this] { on_retry_timer(); });
  });
}

void MnAgent::send_request_route() {
  const MnNode& m = net_.mn(mn_);
  const HandoffConfig& h = net_.config().handoff;
  const RequestRoute req{
      h.required_bandwidth_kbps,
      m.radios[static_cast<std::size_t>(secondary_radio())].mac, m.vip};
  net_.send_control(mn_, ControlDest::broadcast(secondary_radio()), req);
}

void MnAgent::on_retry_timer() {
  st_.retry_timer = 0;
  if (st_.phase != MnPhase::AwaitOffer) return;
  if (st_.retry_count >= net_.config().handoff.max_retries) {
    abandon("offer-timeout");
    return;
  }
  st_.retry_count++;
  send_request_route();
  st_.retry_timer =
      eng_.schedule(EventKind::Timer, mn_, net_.config().handoff.retry_us(),
                    [this] { on_retry_timer(); });
}

void MnAgent::on_offer(NodeId from, const OfferRoute& offer) {
  if (st_.phase != MnPhase::AwaitOffer) return;  // late or duplicate
  if (from != st_.candidate_ap) return;
  if (st_.retry_timer != 0) eng_.cancel(st_.retry_timer);
  st_.retry_timer = 0;
  if (offer.available_bandwidth_kbps <
      net_.config().handoff.required_bandwidth_kbps) {
    // Path quality not acceptable: stop before any route moves. The primary
    // keeps serving, so nothing is lost.
    abandon("offer-rejected");
    return;
  }
  st_.accepted_offer = offer;
  net_.mn_install_ap_path(mn_, secondary_radio(), offer.ap_ip, offer.ap_mac);
  net_.send_control(mn_, ControlDest::unicast(st_.candidate_ap, secondary_radio()),
                    SwitchRouteMnToB{net_.mn(mn_).vip});
  st_.phase = MnPhase::AwaitSwitchOk;
  st_.ok_timer =
      eng_.schedule(EventKind::Timer, mn_, net_.config().handoff.ok_timeout_us(),
                    [this] { on_ok_timer(); });
}

void MnAgent::on_ok_timer() {
  st_.ok_timer = 0;
  if (st_.phase != MnPhase::AwaitSwitchOk) return;
  abandon("ok-timeout");
}

void MnAgent::finalize(const SwitchRouteOk& ok) {
  if (st_.phase != MnPhase::AwaitSwitchOk) return;  // duplicate
  (void)ok;
  if (st_.ok_timer != 0) eng_.cancel(st_.ok_timer);
  st_.ok_timer = 0;
  st_.phase = MnPhase::Finalizing;

  const int old_radio = primary_;
  const int new_radio = secondary_radio();
  const auto old_assoc =
      net_.mn(mn_).radios[static_cast<std::size_t>(old_radio)].association;
  const NodeId old_ap = old_assoc ? net_.ap_by_bssid(*old_assoc) : kNoNode;

  // SWITCH-ROUTE(DEFAULT, B): outbound now leaves via the new radio.
  net_.mn_set_default_route(mn_, new_radio, st_.accepted_offer.ap_ip);
  HandoffRecord* rec = recorder_.current(mn_);
  if (rec) rec->t_default_route_switched = eng_.now();

  net_.set_radio_role(mn_, new_radio, RadioRole::Primary);
  net_.set_radio_role(mn_, old_radio, RadioRole::Secondary);
  primary_ = new_radio;
  if (on_roles_changed) on_roles_changed();

  // Only now does the old radio let go; it becomes the scanning radio.
  net_.dissociate(mn_, old_radio);
  if (rec) {
    rec->t_dissociated = eng_.now();
    rec->retries = st_.retry_count;
  }
  recorder_.close(mn_, HandoffOutcome::Completed);
  if (recorder_.on_completed && old_ap != kNoNode) {
    recorder_.on_completed(old_ap, mn_);
  }

  st_.phase = MnPhase::Scanning;
  st_.candidate_bssid.reset();
  st_.candidate_ap = kNoNode;
  st_.retry_count = 0;
  schedule_scan_tick();
}

void MnAgent::abandon(const std::string& reason) {
  if (st_.retry_timer != 0) eng_.cancel(st_.retry_timer);
  if (st_.ok_timer != 0) eng_.cancel(st_.ok_timer);
  st_.retry_timer = 0;
  st_.ok_timer = 0;
  // Drop the provisional association; the committed bandwidth at the
  // candidate is freed by its expiry timer or by this dissociation.
  net_.dissociate(mn_, secondary_radio());
  if (HandoffRecord* rec = recorder_.current(mn_)) {
    rec->retries = st_.retry_count;
  }
  recorder_.close(mn_, HandoffOutcome::Abandoned, reason);
  st_.phase = MnPhase::Scanning;
  st_.candidate_bssid.reset();
  st_.candidate_ap = kNoNode;
  schedule_scan_tick();
}

void MnAgent::on_control(NodeId from, const HandoffMessage& msg) {
  if (const auto* offer = std::get_if<OfferRoute>(&msg)) {
    on_offer(from, *offer);
  } else if (const auto* ok = std::get_if<SwitchRouteOk>(&msg)) {
    finalize(*ok);
  }
}

// --- AP agent -------------------------------------------------------------------

ApAgent::ApAgent(Engine& eng, Network& net, NodeId ap, HandoffRecorder& recorder)
    : eng_(eng),
      net_(net),
      ap_(ap),
      recorder_(recorder),
      ledger_(net.ap(ap).path_capacity_kbps) {}

void ApAgent::on_request_route(NodeId from, const RequestRoute& req) {
  const ApNode& a = net_.ap(ap_);
  // Only requests heard on the client-facing radio from an associated radio
  // are actionable; anything else cannot be answered over the air.
  if (!a.clients.count(req.radio2_mac)) return;

  const IpAddr vip = req.floating_ip;
  const SimTime timeout = net_.config().handoff.commitment_timeout_us();

  if (const auto* existing = ledger_.find_commitment(vip)) {
    // Duplicate request (lost or crossing offer): refresh the expiry and
    // repeat the identical offer.
    eng_.cancel(existing->timer);
    const EventId timer = eng_.schedule(EventKind::Timer, ap_, timeout,
                                        [this, vip] { on_ledger_timeout(vip); });
    ledger_.refresh(vip, eng_.now() + timeout, timer);
    net_.send_control(ap_, ControlDest::unicast(from),
                      ledger_.find_commitment(vip)->offer);
    return;
  }

  const std::int64_t effective = ledger_.effective();
  if (effective > req.requested_bandwidth_kbps) {
    const OfferRoute offer{effective, a.client_ip, a.bssid};
    const EventId timer = eng_.schedule(EventKind::Timer, ap_, timeout,
                                        [this, vip] { on_ledger_timeout(vip); });
    ledger_.commit(vip, req.requested_bandwidth_kbps, eng_.now() + timeout, timer,
                   offer);
    // CREATE-ARP-ENTRY(MN) + CREATE-ROUTE(MN): the inbound path is ready
    // before the MN is told to switch.
    net_.install_client_path(ap_, vip, req.radio2_mac);
    net_.send_control(ap_, ControlDest::unicast(from), offer);
  } else {
    // Not enough path bandwidth: stay silent and let the MN retry elsewhere.
    denials_++;
  }
}

void ApAgent::on_switch_route(NodeId from, const SwitchRouteMnToB& msg) {
  (void)from;
  if (!ledger_.has_commitment(msg.floating_ip)) {
    // Commitment expired (or never existed): the MN's timeout drives recovery.
    dropped_switch_routes_++;
    return;
  }
  net_.send_control(ap_, ControlDest::unicast(net_.gateway_id()),
                    SwitchRouteBToG{msg.floating_ip, net_.ap(ap_).hostname});
}

void ApAgent::on_switch_route_ok(const SwitchRouteOk& ok) {
  // Relay to the MN if it is still associated here.
  const ApNode& a = net_.ap(ap_);
  NodeId mn_id = kNoNode;
  for (const auto& [mac, ref] : a.clients) {
    if (net_.mn(ref.first).vip == ok.floating_ip) {
      mn_id = ref.first;
      break;
    }
  }
  if (mn_id == kNoNode) return;  // MN gone: drop
  if (const auto* c = ledger_.find_commitment(ok.floating_ip)) {
    eng_.cancel(c->timer);
    ledger_.consume(ok.floating_ip);  // reserved for the lifetime of the stay
  }
  net_.send_control(ap_, ControlDest::unicast(mn_id), ok);
}

void ApAgent::on_ledger_timeout(IpAddr vip) {
  // The MN never completed: free the committed bandwidth and tear down the
  // preinstalled inbound path so nothing leaks.
  if (ledger_.free_commitment(vip)) {
    net_.remove_client_path(ap_, vip);
  }
}

void ApAgent::on_client_dissociated(IpAddr vip) {
  if (const auto* c = ledger_.find_commitment(vip)) eng_.cancel(c->timer);
  ledger_.release(vip);
}

void ApAgent::on_control(NodeId from, const HandoffMessage& msg) {
  if (const auto* req = std::get_if<RequestRoute>(&msg)) {
    on_request_route(from, *req);
  } else if (const auto* sw = std::get_if<SwitchRouteMnToB>(&msg)) {
    on_switch_route(from, *sw);
  } else if (const auto* ok = std::get_if<SwitchRouteOk>(&msg)) {
    on_switch_route_ok(*ok);
  }
}

// --- gateway agent -----------------------------------------------------------------

GwAgent::GwAgent(Engine& eng, Network& net, HandoffRecorder& recorder)
    : eng_(eng), net_(net), recorder_(recorder) {}

void GwAgent::on_switch_route(NodeId from, const SwitchRouteBToG& msg) {
  const auto tunnel = net_.gw_tunnel_for(msg.ap_hostname);
  if (!tunnel) {
    // Tunnels are pre-provisioned; an unknown hostname is a deployment fault.
    throw std::runtime_error("gateway: no tunnel for hostname \"" +
                             msg.ap_hostname + "\"");
  }
  net_.gw_switch_route(msg.floating_ip, *tunnel);
  if (HandoffRecord* rec = recorder_.current_by_vip(msg.floating_ip)) {
    if (!rec->t_route_switched_gateway) {
      rec->t_route_switched_gateway = eng_.now();
    }
  }
  net_.send_control(net_.gateway_id(), ControlDest::unicast(from),
                    SwitchRouteOk{msg.floating_ip, msg.ap_hostname});
}

void GwAgent::on_control(NodeId from, const HandoffMessage& msg) {
  if (const auto* sw = std::get_if<SwitchRouteBToG>(&msg)) {
    on_switch_route(from, *sw);
  }
}

}  // namespace handoff
