// SPDX-License-Identifier: Apache-2.0
//
// The network model: radios, association state, propagation, the unreliable
// control channel, and the data-plane forwarding between mobile nodes, APs,
// and the gateway. All state belongs to one simulation instance.
#ifndef HANDOFF_NETWORK_HPP
#define HANDOFF_NETWORK_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "handoff/config.hpp"
#include "handoff/engine.hpp"
#include "handoff/forwarding.hpp"
#include "handoff/messages.hpp"
#include "handoff/mobility.hpp"
#include "handoff/propagation.hpp"
#include "handoff/random.hpp"

namespace handoff {

enum class RadioRole { Primary, Secondary };

struct Radio {
  MacAddr mac;
  IpAddr private_ip;
  RadioRole role = RadioRole::Secondary;
  std::optional<MacAddr> association;  // BSSID when associated
  int channel = 0;
  int scan_slot = 0;  // position in the scan plan
};

struct MnNode {
  NodeId id = kNoNode;
  std::string name;
  std::array<Radio, 2> radios;
  IpAddr vip;
  ForwardingState fwd;
  MobilityPath path;
};

struct ApNode {
  NodeId id = kNoNode;
  std::string name;
  std::string hostname;
  Vec2 position{};
  ApRole role = ApRole::Edge;
  int channel = 1;
  MacAddr bssid;
  IpAddr client_ip;  // address on the client-facing subnet (B.IP-ADDR)
  std::int64_t path_capacity_kbps = 0;
  std::map<MacAddr, std::pair<NodeId, int>> clients;  // radio MAC -> (mn, radio)
  ForwardingState fwd;
};

struct GwNode {
  NodeId id = kNoNode;
  std::string name;
  IpAddr service_ip;  // echo sink address
  ForwardingState fwd;
  std::map<std::string, int> tunnels;   // edge-AP hostname -> tunnel id
  std::vector<NodeId> tunnel_endpoint;  // tunnel id -> edge AP
};

struct ScanSample {
  MacAddr bssid;
  NodeId ap = kNoNode;
  bool edge = true;
  LinkQuality lq;
};

struct DropRecord {
  SimTime t = 0;
  NodeId node = kNoNode;
  int payload_id = 0;
  DropReason reason = DropReason::NoRoute;
};

// Control destination: a unicast node, or link-scoped broadcast out of one of
// the sender's radios.
struct ControlDest {
  enum Kind { Unicast, BroadcastRadio } kind = Unicast;
  NodeId node = kNoNode;  // Unicast target
  int radio = 0;          // sending radio (MN only)

  static ControlDest unicast(NodeId n, int via_radio = 0) {
    return ControlDest{Unicast, n, via_radio};
  }
  static ControlDest broadcast(int via_radio) {
    return ControlDest{BroadcastRadio, kNoNode, via_radio};
  }
};

class Network {
 public:
  Network(Engine& eng, RandomStream& rng, const Config& cfg);

  // --- topology -----------------------------------------------------------
  NodeId add_mobile(const std::string& name, MobilityPath path);
  NodeId node_by_name(const std::string& name) const;
  const std::string& node_name(NodeId id) const;
  NodeId gateway_id() const { return gw_.id; }
  const GwNode& gw() const { return gw_; }
  const ApNode& ap(NodeId id) const;
  const MnNode& mn(NodeId id) const;
  std::vector<NodeId> ap_ids() const;
  std::vector<NodeId> mn_ids() const;
  NodeId ap_by_bssid(MacAddr bssid) const;
  NodeId ap_by_hostname(const std::string& hostname) const;
  int backhaul_hops(NodeId a, NodeId b) const;

  Vec2 position_of(NodeId id) const;  // MN positions follow their paths

  // --- radio / association ------------------------------------------------
  double rssi_between(NodeId ap_node, NodeId mn_node, bool with_shadowing);
  bool in_range(NodeId ap_node, NodeId mn_node) const;

  // Probes the next channel of `plan` and returns one sample per AP heard.
  std::vector<ScanSample> scan_step(NodeId mn_node, int radio,
                                    const std::vector<int>& plan);

  // Starts association; `done` is invoked once with the outcome after the
  // configured association delay (immediately for an idempotent re-associate).
  void begin_associate(NodeId mn_node, int radio, MacAddr bssid,
                       std::function<void(bool)> done);

  // Clears the association and removes every handoff-preinstalled route/ARP
  // entry on both ends. No-op when unassociated. Roles swap at the caller.
  void dissociate(NodeId mn_node, int radio);

  void set_radio_role(NodeId mn_node, int radio, RadioRole role);
  int primary_count(NodeId mn_node) const;

  // --- handoff-driven forwarding-state installs ----------------------------
  void install_client_path(NodeId ap_node, IpAddr vip, MacAddr radio_mac);
  void remove_client_path(NodeId ap_node, IpAddr vip);
  void mn_install_ap_path(NodeId mn_node, int radio, IpAddr ap_ip, MacAddr ap_mac);
  void mn_set_default_route(NodeId mn_node, int radio, IpAddr via);
  std::optional<int> gw_tunnel_for(const std::string& hostname) const;
  void gw_switch_route(IpAddr vip, int tunnel);  // atomic replace

  // Instant network entry at scenario start: association plus the full
  // forwarding path, bypassing the handoff exchange.
  void bootstrap_associate(NodeId mn_node, int radio, NodeId ap_node);

  // --- control plane --------------------------------------------------------
  void send_control(NodeId from, ControlDest to, const HandoffMessage& msg);
  using ControlHandler = std::function<void(NodeId from, const HandoffMessage&)>;
  void set_control_handler(NodeId node, ControlHandler h);

  // --- data plane -----------------------------------------------------------
  ForwardDecision forward_decision(NodeId node, const DataPacket& pkt) const;
  void inject_data(NodeId node, DataPacket pkt);
  using LocalDelivery = std::function<void(const DataPacket&)>;
  void set_local_delivery(NodeId node, LocalDelivery h);

  // Hook invoked when a mobile's radio loses its association (ledger release).
  using DissocHook = std::function<void(NodeId ap_node, IpAddr vip)>;
  void set_dissociation_hook(DissocHook h) { dissoc_hook_ = std::move(h); }

  // Mutable forwarding-state access for harnesses that inspect node state or
  // deliberately break it.
  ForwardingState& forwarding_mut(NodeId node);

  // --- bookkeeping ----------------------------------------------------------
  void set_msg_trace(std::vector<std::string>* sink) { trace_ = sink; }
  const std::vector<DropRecord>& drops() const { return drops_; }
  std::size_t tunnel_count() const { return gw_.tunnel_endpoint.size(); }
  const Config& config() const { return cfg_; }
  Engine& engine() { return eng_; }
  RandomStream& rng() { return rng_; }

 private:
  struct AirTarget {
    NodeId mn = kNoNode;
    int radio = 0;
  };

  MnNode& mn_mut(NodeId id);
  ApNode& ap_mut(NodeId id);
  bool is_mn(NodeId id) const;
  bool is_ap(NodeId id) const;
  std::optional<AirTarget> client_of(const ApNode& ap, MacAddr mac) const;
  void deliver_control(NodeId dst, NodeId src, const HandoffMessage& msg,
                       SimTime delay, double loss_p);
  void emit_air_to_mn(const ApNode& ap, const DataPacket& pkt, MacAddr dst_mac);
  void record_drop(NodeId node, const DataPacket& pkt, DropReason reason);
  void build_from_config();

  Engine& eng_;
  RandomStream& rng_;
  const Config& cfg_;

  GwNode gw_;
  std::vector<ApNode> aps_;
  std::vector<MnNode> mns_;
  std::map<std::string, NodeId> by_name_;
  std::map<std::pair<NodeId, NodeId>, int> hops_;

  std::map<NodeId, ControlHandler> control_handlers_;
  std::map<NodeId, LocalDelivery> local_delivery_;
  DissocHook dissoc_hook_;
  std::vector<std::string>* trace_ = nullptr;
  std::vector<DropRecord> drops_;
};

}  // namespace handoff

#endif
