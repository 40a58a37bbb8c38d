// SPDX-License-Identifier: Apache-2.0
#include "handoff/runner.hpp"

#include <chrono>
#include <memory>

#include "handoff/baseline.hpp"
#include "handoff/engine.hpp"
#include "handoff/network.hpp"
#include "handoff/random.hpp"

namespace handoff {

const char* scheme_name(Scheme s) {
  return s == Scheme::DualRadio ? "dual" : "baseline";
}

int RunResult::handoffs_completed() const {
  int n = 0;
  for (const auto& h : handoffs) n += h.outcome == HandoffOutcome::Completed;
  return n;
}

int RunResult::handoffs_abandoned() const {
  int n = 0;
  for (const auto& h : handoffs) n += h.outcome == HandoffOutcome::Abandoned;
  return n;
}

std::vector<SimTime> RunResult::latencies_us() const {
  std::vector<SimTime> out;
  for (const auto& h : handoffs) {
    if (h.outcome == HandoffOutcome::Completed) out.push_back(handoff_latency(h));
  }
  return out;
}

namespace {

// Post-handoff and end-of-run invariant checks; violations end up in the
// run result rather than aborting, so property tests can inspect them.
struct Validator {
  std::vector<std::string> violations;

  void note(const std::string& v) { violations.push_back(v); }

  void check_one_primary(const Network& net, NodeId mn_id, SimTime t) {
    if (net.primary_count(mn_id) != 1) {
      note("t=" + std::to_string(t) + " mobile has " +
           std::to_string(net.primary_count(mn_id)) + " primary radios");
    }
  }

  void check_cleanup(const Network& net, const ApAgent& agent, NodeId old_ap,
                     NodeId mn_id, SimTime t) {
    const ApNode& a = net.ap(old_ap);
    const MnNode& m = net.mn(mn_id);
    if (a.fwd.routes.count(m.vip) || a.fwd.arp.count(m.vip)) {
      note("t=" + std::to_string(t) + " stale route/ARP for " + m.vip.str() +
           " at " + a.name + " after dissociation");
    }
    for (const Radio& r : m.radios) {
      if (a.clients.count(r.mac)) {
        note("t=" + std::to_string(t) + " stale client " + r.mac.str() + " at " +
             a.name);
      }
    }
    if (agent.ledger().has_commitment(m.vip) ||
        agent.ledger().in_use().count(m.vip)) {
      note("t=" + std::to_string(t) + " stale bandwidth reservation for " +
           m.vip.str() + " at " + a.name);
    }
  }
};

}  // namespace

RunResult run_scenario(const Config& cfg, Scheme scheme, std::uint64_t seed,
                       int run_id) {
  const auto wall_start = std::chrono::steady_clock::now();

  Engine eng;
  RandomStream rng(seed);
  Network net(eng, rng, cfg);
  const NodeId mn_id = net.add_mobile("MN", cfg.mobility.path());
  const NodeId gw_id = net.gateway_id();

  RunResult result;
  result.run_id = run_id;
  result.seed = seed;
  result.scheme = scheme;
  result.config_echo = cfg.echo();
  result.config_echo["seed"] = seed;
  net.set_msg_trace(&result.trace);

  HandoffRecorder recorder;
  Validator validator;

  GwAgent gw_agent(eng, net, recorder);
  net.set_control_handler(gw_id, [&](NodeId from, const HandoffMessage& msg) {
    gw_agent.on_control(from, msg);
  });

  std::map<NodeId, std::unique_ptr<ApAgent>> ap_agents;
  for (NodeId apid : net.ap_ids()) {
    if (net.ap(apid).role != ApRole::Edge) continue;
    auto agent = std::make_unique<ApAgent>(eng, net, apid, recorder);
    net.set_control_handler(apid, [a = agent.get()](NodeId from,
                                                    const HandoffMessage& msg) {
      a->on_control(from, msg);
    });
    ap_agents.emplace(apid, std::move(agent));
  }
  net.set_dissociation_hook([&](NodeId apid, IpAddr vip) {
    auto it = ap_agents.find(apid);
    if (it != ap_agents.end()) it->second->on_client_dissociated(vip);
  });

  std::unique_ptr<MnAgent> dual_agent;
  std::unique_ptr<BaselineMnAgent> baseline_agent;
  if (scheme == Scheme::DualRadio) {
    dual_agent = std::make_unique<MnAgent>(eng, net, mn_id, recorder);
    dual_agent->on_roles_changed = [&] {
      validator.check_one_primary(net, mn_id, eng.now());
    };
    net.set_control_handler(mn_id, [&](NodeId from, const HandoffMessage& msg) {
      dual_agent->on_control(from, msg);
    });
  } else {
    baseline_agent = std::make_unique<BaselineMnAgent>(eng, net, mn_id, recorder);
    net.set_control_handler(mn_id, [&](NodeId from, const HandoffMessage& msg) {
      baseline_agent->on_control(from, msg);
    });
  }

  recorder.on_completed = [&](NodeId old_ap, NodeId mn) {
    auto it = ap_agents.find(old_ap);
    if (it != ap_agents.end()) {
      validator.check_cleanup(net, *it->second, old_ap, mn, eng.now());
    }
  };

  // Echo sink at the gateway: checks VIP constancy and reflects the payload.
  const MnNode& m = net.mn(mn_id);
  const IpAddr vip = m.vip;
  const IpAddr sink_ip = net.gw().service_ip;
  net.set_local_delivery(gw_id, [&](const DataPacket& pkt) {
    if (!(pkt.src == vip)) {
      validator.note("t=" + std::to_string(eng.now()) +
                     " packet at sink with source " + pkt.src.str() +
                     " instead of the VIP");
    }
    net.inject_data(gw_id, DataPacket{sink_ip, pkt.src, pkt.payload_id,
                                      Direction::Inbound, std::nullopt});
  });

  // Echo records, 1-based; request k is emitted at exactly k*interval.
  const int count = cfg.traffic.packet_count;
  const SimTime interval = cfg.traffic.interval_us();
  const SimTime reply_timeout = cfg.traffic.reply_timeout_us();
  result.echoes.resize(static_cast<std::size_t>(count) + 1);
  net.set_local_delivery(mn_id, [&](const DataPacket& pkt) {
    if (pkt.direction != Direction::Inbound) return;
    if (pkt.payload_id < 1 || pkt.payload_id > count) return;
    auto& rec = result.echoes[static_cast<std::size_t>(pkt.payload_id)];
    if (!rec.t_replied) rec.t_replied = eng.now();
  });

  std::function<void(int)> emit = [&](int k) {
    auto& rec = result.echoes[static_cast<std::size_t>(k)];
    rec.seq = k;
    rec.t_sent = eng.now();
    const int radio = scheme == Scheme::DualRadio ? dual_agent->primary_radio() : 0;
    net.inject_data(mn_id,
                    DataPacket{net.mn(mn_id).radios[static_cast<std::size_t>(radio)]
                                   .private_ip,
                               sink_ip, k, Direction::Outbound, std::nullopt});
    if (k < count) {
      eng.schedule(EventKind::TrafficTick, mn_id, interval, [&emit, k] {
        emit(k + 1);
      });
    }
  };
  if (count > 0) {
    eng.schedule(EventKind::TrafficTick, mn_id, interval, [&emit] { emit(1); });
  }

  // While the dual-radio MN sits inside coverage of at least one edge AP it
  // must keep at least one association; sampled on a coarse grid.
  std::function<void()> coverage_check;
  if (scheme == Scheme::DualRadio) {
    coverage_check = [&] {
      bool covered = false;
      for (NodeId apid : net.ap_ids()) {
        if (net.ap(apid).role == ApRole::Edge && net.in_range(apid, mn_id)) {
          covered = true;
          break;
        }
      }
      const MnNode& mob = net.mn(mn_id);
      const bool associated =
          mob.radios[0].association.has_value() || mob.radios[1].association.has_value();
      if (covered && !associated) {
        validator.note("t=" + std::to_string(eng.now()) +
                       " in coverage but no radio associated");
      }
      eng.schedule(EventKind::Timer, mn_id, ms(50), coverage_check);
    };
    eng.schedule(EventKind::Timer, mn_id, ms(50), coverage_check);
  }

  if (scheme == Scheme::DualRadio) {
    dual_agent->start();
  } else {
    baseline_agent->start();
  }

  const SimTime traffic_horizon =
      static_cast<SimTime>(count) * interval + reply_timeout;
  eng.run_until(traffic_horizon);

  // Drain: stop triggering new handoffs and let in-flight exchanges and
  // commitment timers resolve, then audit the ledgers.
  if (dual_agent) dual_agent->pause_scanning();
  if (baseline_agent) baseline_agent->pause_scanning();
  eng.run_until(traffic_horizon + cfg.handoff.commitment_timeout_us() +
                cfg.handoff.ok_timeout_us() + ms(250));

  for (const auto& [apid, agent] : ap_agents) {
    const BandwidthLedger& ledger = agent->ledger();
    if (!ledger.commitments().empty()) {
      validator.note("run end: " + net.ap(apid).name + " still holds " +
                     std::to_string(ledger.commitments().size()) +
                     " pending commitments");
    }
    if (ledger.effective() < 0) {
      validator.note("run end: " + net.ap(apid).name +
                     " effective bandwidth negative");
    }
    // In-use reservations must match the MNs this AP currently serves.
    for (const auto& [rvip, kbps] : ledger.in_use()) {
      bool served = false;
      for (NodeId mid : net.mn_ids()) {
        if (!(net.mn(mid).vip == rvip)) continue;
        for (const Radio& r : net.mn(mid).radios) {
          if (r.association && net.ap_by_bssid(*r.association) == apid) {
            served = true;
          }
        }
      }
      if (!served) {
        validator.note("run end: " + net.ap(apid).name +
                       " reserves bandwidth for unserved " + rvip.str());
      }
      if (kbps != cfg.handoff.required_bandwidth_kbps) {
        validator.note("run end: " + net.ap(apid).name +
                       " reservation amount mismatch for " + rvip.str());
      }
    }
  }
  if (scheme == Scheme::DualRadio) {
    validator.check_one_primary(net, mn_id, eng.now());
  }

  // Loss accounting: a request is lost unless its reply landed in time.
  std::map<int, DropReason> drop_by_seq;
  for (const DropRecord& d : net.drops()) {
    drop_by_seq.emplace(d.payload_id, d.reason);
  }
  for (int k = 1; k <= count; ++k) {
    auto& rec = result.echoes[static_cast<std::size_t>(k)];
    result.sent++;
    const bool in_time = rec.t_replied && *rec.t_replied - rec.t_sent <= reply_timeout;
    if (in_time) {
      result.received_in_time++;
      continue;
    }
    if (rec.t_replied) {
      rec.drop_reason = "late-reply";
    } else if (auto it = drop_by_seq.find(k); it != drop_by_seq.end()) {
      rec.drop_reason = drop_reason_name(it->second);
    } else {
      rec.drop_reason = "unaccounted";
    }
    result.loss_reasons[rec.drop_reason]++;
  }

  result.handoffs = recorder.records();
  result.invariant_violations = validator.violations;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
          .count();
  return result;
}

std::vector<RunResult> run_batch(const Config& cfg, Scheme scheme,
                                 std::uint64_t base_seed, int runs) {
  std::vector<RunResult> out;
  out.reserve(static_cast<std::size_t>(runs));
  for (int i = 0; i < runs; ++i) {
    out.push_back(run_scenario(cfg, scheme, base_seed + static_cast<std::uint64_t>(i), i));
  }
  return out;
}

}  // namespace handoff
