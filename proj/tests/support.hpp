// SPDX-License-Identifier: Apache-2.0
//
// Shared builders for the test suites: small topologies and a harness
// bundling engine + rng + network.
#ifndef HANDOFF_TESTS_SUPPORT_HPP
#define HANDOFF_TESTS_SUPPORT_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "handoff/agents.hpp"
#include "handoff/config.hpp"
#include "handoff/engine.hpp"
#include "handoff/network.hpp"
#include "handoff/random.hpp"

namespace handoff::test {

// One edge AP "A" at the origin, wired straight to the gateway.
inline Config one_ap_config() {
  Config c = default_config();
  c.topology.aps = {{"A", "ap-a", {0.0, 0.0}, ApRole::Edge, 1, {"G"}, 10000}};
  c.topology.gateway = {"G", {"A"}};
  c.handoff.scan_channels = {1};
  c.mobility.waypoints = {{5.0, 0.0}};
  c.traffic.packet_count = 100;
  return c;
}

// Edge APs "A" and "B" sharing one channel, both wired to the gateway.
inline Config two_ap_same_channel_config(double separation_m = 100.0) {
  Config c = default_config();
  c.topology.aps = {
      {"A", "ap-a", {0.0, 0.0}, ApRole::Edge, 1, {"G"}, 10000},
      {"B", "ap-b", {separation_m, 0.0}, ApRole::Edge, 1, {"G"}, 10000},
  };
  c.topology.gateway = {"G", {"A", "B"}};
  c.handoff.scan_channels = {1};
  c.mobility.waypoints = {{separation_m / 2.0, 0.0}};
  c.traffic.packet_count = 100;
  return c;
}

// Engine + rng + network wired for direct exercise.
struct World {
  explicit World(Config config, std::uint64_t seed = 1)
      : cfg(std::move(config)), eng(), rng(seed), net(eng, rng, cfg) {}

  Config cfg;
  Engine eng;
  RandomStream rng;
  Network net;
};

// World plus the three agents wired the way the scenario runner wires them.
struct AgentWorld {
  explicit AgentWorld(Config config, std::uint64_t seed = 1)
      : w(std::move(config), seed), gw_agent(w.eng, w.net, recorder) {
    w.net.set_msg_trace(&trace);
    w.net.set_control_handler(
        w.net.gateway_id(),
        [this](NodeId from, const HandoffMessage& m) { gw_agent.on_control(from, m); });
    for (NodeId apid : w.net.ap_ids()) {
      if (w.net.ap(apid).role != ApRole::Edge) continue;
      auto agent = std::make_unique<ApAgent>(w.eng, w.net, apid, recorder);
      w.net.set_control_handler(apid,
                                [a = agent.get()](NodeId from, const HandoffMessage& m) {
                                  a->on_control(from, m);
                                });
      ap_agents.emplace(apid, std::move(agent));
    }
    w.net.set_dissociation_hook([this](NodeId apid, IpAddr vip) {
      auto it = ap_agents.find(apid);
      if (it != ap_agents.end()) it->second->on_client_dissociated(vip);
    });
  }

  NodeId add_mn() {
    mn = w.net.add_mobile("MN", w.cfg.mobility.path());
    mn_agent = std::make_unique<MnAgent>(w.eng, w.net, mn, recorder);
    w.net.set_control_handler(mn, [this](NodeId from, const HandoffMessage& m) {
      mn_agent->on_control(from, m);
    });
    return mn;
  }

  ApAgent& ap_agent(const std::string& name) {
    return *ap_agents.at(w.net.node_by_name(name));
  }

  // Steps the clock until the MN agent reaches `phase` (or the deadline).
  bool run_until_phase(MnPhase phase, SimTime deadline) {
    while (w.eng.now() < deadline) {
      if (mn_agent->state().phase == phase) return true;
      w.eng.run_until(w.eng.now() + ms(1));
    }
    return mn_agent->state().phase == phase;
  }

  World w;
  HandoffRecorder recorder;
  GwAgent gw_agent;
  std::map<NodeId, std::unique_ptr<ApAgent>> ap_agents;
  std::unique_ptr<MnAgent> mn_agent;
  NodeId mn = kNoNode;
  std::vector<std::string> trace;
};

}  // namespace handoff::test

#endif
