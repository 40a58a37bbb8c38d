// SPDX-License-Identifier: Apache-2.0
#include "handoff/network.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace handoff {

const char* drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::NotAssociated: return "not-associated";
    case DropReason::NoRoute: return "no-route";
    case DropReason::NoArp: return "no-arp";
    case DropReason::OutOfRange: return "out-of-range";
    case DropReason::NextHopUnreachable: return "next-hop-unreachable";
    case DropReason::DataLoss: return "data-loss";
  }
  return "?";
}

Network::Network(Engine& eng, RandomStream& rng, const Config& cfg)
    : eng_(eng), rng_(rng), cfg_(cfg) {
  build_from_config();
}

void Network::build_from_config() {
  const TopologyConfig& topo = cfg_.topology;
  gw_.id = 0;
  gw_.name = topo.gateway.id;
  gw_.service_ip = ipv4(172, 16, 0, 1, IpKind::Infra);
  by_name_[gw_.name] = gw_.id;

  aps_.reserve(topo.aps.size());
  for (std::size_t i = 0; i < topo.aps.size(); ++i) {
    const ApConfig& ac = topo.aps[i];
    ApNode ap;
    ap.id = static_cast<NodeId>(1 + i);
    ap.name = ac.id;
    ap.hostname = ac.hostname;
    ap.position = ac.position;
    ap.role = ac.role;
    ap.channel = ac.channel;
    ap.bssid = MacAddr{0x020000001000ULL + i + 1};
    ap.client_ip = ipv4(10, 1, static_cast<unsigned>(i + 1), 1, IpKind::Infra);
    ap.path_capacity_kbps = ac.path_capacity_kbps;
    // Upstream data path: everything not on the client subnet heads for the
    // gateway over the backhaul.
    ap.fwd.default_route =
        RouteEntry{NextHop{NextHopKind::Backhaul, 0, {}, gw_.id, -1},
                   EntryOrigin::Static};
    by_name_[ap.name] = ap.id;
    aps_.push_back(std::move(ap));
  }

  // Pre-configured tunnels, one per edge AP; never created during handoffs.
  for (const ApNode& ap : aps_) {
    if (ap.role != ApRole::Edge) continue;
    const int tid = static_cast<int>(gw_.tunnel_endpoint.size());
    gw_.tunnels[ap.hostname] = tid;
    gw_.tunnel_endpoint.push_back(ap.id);
  }

  // Backhaul hop counts via BFS over the configured links.
  std::map<NodeId, std::vector<NodeId>> adj;
  auto link = [&](const std::string& a, const std::string& b) {
    const NodeId na = by_name_.at(a);
    const NodeId nb = by_name_.at(b);
    adj[na].push_back(nb);
    adj[nb].push_back(na);
  };
  for (const ApConfig& ac : topo.aps) {
    for (const std::string& l : ac.links) link(ac.id, l);
  }
  for (const std::string& l : topo.gateway.links) link(topo.gateway.id, l);
  for (const auto& [start, unused] : adj) {
    std::map<NodeId, int> dist{{start, 0}};
    std::deque<NodeId> q{start};
    while (!q.empty()) {
      const NodeId n = q.front();
      q.pop_front();
      for (NodeId m : adj[n]) {
        if (!dist.count(m)) {
          dist[m] = dist[n] + 1;
          q.push_back(m);
        }
      }
    }
    for (const auto& [n, d] : dist) hops_[{start, n}] = d;
  }
}

NodeId Network::add_mobile(const std::string& name, MobilityPath path) {
  const std::size_t idx = mns_.size();
  MnNode m;
  m.id = static_cast<NodeId>(1 + aps_.size() + idx);
  m.name = name;
  m.path = std::move(path);
  m.vip = ipv4(192, 168, 100, static_cast<unsigned>(idx + 1), IpKind::Virtual);
  for (int r = 0; r < 2; ++r) {
    m.radios[r].mac = MacAddr{0x020000100000ULL + ((idx + 1) << 8) + r + 1};
    m.radios[r].private_ip =
        ipv4(10, 0, static_cast<unsigned>(idx + 1), static_cast<unsigned>(r + 1),
             IpKind::Private);
    m.radios[r].role = r == 0 ? RadioRole::Primary : RadioRole::Secondary;
  }
  m.fwd.snat_to_vip = true;
  m.fwd.vip = m.vip;
  by_name_[name] = m.id;
  mns_.push_back(std::move(m));
  return mns_.back().id;
}

NodeId Network::node_by_name(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw std::out_of_range("unknown node " + name);
  return it->second;
}

const std::string& Network::node_name(NodeId id) const {
  if (id == gw_.id) return gw_.name;
  if (is_ap(id)) return ap(id).name;
  return mn(id).name;
}

bool Network::is_ap(NodeId id) const {
  return id >= 1 && id <= static_cast<NodeId>(aps_.size());
}

bool Network::is_mn(NodeId id) const {
  return id > static_cast<NodeId>(aps_.size());
}

const ApNode& Network::ap(NodeId id) const {
  assert(is_ap(id));
  return aps_[static_cast<std::size_t>(id - 1)];
}

ApNode& Network::ap_mut(NodeId id) {
  assert(is_ap(id));
  return aps_[static_cast<std::size_t>(id - 1)];
}

const MnNode& Network::mn(NodeId id) const {
  assert(is_mn(id));
  return mns_[static_cast<std::size_t>(id) - 1 - aps_.size()];
}

MnNode& Network::mn_mut(NodeId id) {
  assert(is_mn(id));
  return mns_[static_cast<std::size_t>(id) - 1 - aps_.size()];
}

std::vector<NodeId> Network::ap_ids() const {
  std::vector<NodeId> out;
  for (const ApNode& a : aps_) out.push_back(a.id);
  return out;
}

std::vector<NodeId> Network::mn_ids() const {
  std::vector<NodeId> out;
  for (const MnNode& m : mns_) out.push_back(m.id);
  return out;
}

NodeId Network::ap_by_bssid(MacAddr bssid) const {
  for (const ApNode& a : aps_) {
    if (a.bssid == bssid) return a.id;
  }
  return kNoNode;
}

NodeId Network::ap_by_hostname(const std::string& hostname) const {
  for (const ApNode& a : aps_) {
    if (a.hostname == hostname) return a.id;
  }
  return kNoNode;
}

int Network::backhaul_hops(NodeId a, NodeId b) const {
  if (a == b) return 0;
  auto it = hops_.find({a, b});
  if (it == hops_.end()) {
    throw std::runtime_error("no backhaul path between " + node_name(a) + " and " +
                             node_name(b));
  }
  return it->second;
}

Vec2 Network::position_of(NodeId id) const {
  if (is_mn(id)) return position_at(mn(id).path, eng_.now());
  if (is_ap(id)) return ap(id).position;
  return Vec2{};  // gateway is wired; position is irrelevant
}

double Network::rssi_between(NodeId ap_node, NodeId mn_node, bool with_shadowing) {
  RandomStream::Stream* shadow =
      (with_shadowing && cfg_.propagation.shadowing_sigma_db > 0.0)
          ? &rng_.stream("shadowing")
          : nullptr;
  return compute_rssi(position_of(ap_node), position_of(mn_node), cfg_.propagation,
                      shadow);
}

bool Network::in_range(NodeId ap_node, NodeId mn_node) const {
  const double rssi = compute_rssi(ap(ap_node).position,
                                   position_at(mn(mn_node).path, eng_.now()),
                                   cfg_.propagation, nullptr);
  return rssi >= cfg_.propagation.rx_sensitivity_dbm;
}

std::vector<ScanSample> Network::scan_step(NodeId mn_node, int radio,
                                           const std::vector<int>& plan) {
  MnNode& m = mn_mut(mn_node);
  Radio& r = m.radios[static_cast<std::size_t>(radio)];
  assert(!plan.empty());
  const int channel = plan[static_cast<std::size_t>(r.scan_slot) % plan.size()];
  r.scan_slot++;
  r.channel = channel;

  std::vector<ScanSample> out;
  for (const ApNode& a : aps_) {
    if (a.channel != channel) continue;
    const double rssi = rssi_between(a.id, mn_node, true);
    if (rssi < cfg_.propagation.rx_sensitivity_dbm) continue;
    ScanSample s;
    s.bssid = a.bssid;
    s.ap = a.id;
    s.edge = a.role == ApRole::Edge;
    s.lq.rssi_dbm = rssi;
    s.lq.snr_db = rssi - cfg_.propagation.noise_floor_dbm;
    s.lq.lq_score = rssi;  // smoothing happens in the scan history
    out.push_back(s);
  }
  return out;
}

void Network::begin_associate(NodeId mn_node, int radio, MacAddr bssid,
                              std::function<void(bool)> done) {
  MnNode& m = mn_mut(mn_node);
  Radio& r = m.radios[static_cast<std::size_t>(radio)];
  if (r.association && *r.association == bssid) {
    eng_.schedule(EventKind::Timer, mn_node, 0, [done = std::move(done)] { done(true); });
    return;
  }
  const NodeId apid = ap_by_bssid(bssid);
  const bool viable = apid != kNoNode && ap(apid).role == ApRole::Edge &&
                      in_range(apid, mn_node);
  if (!viable) {
    eng_.schedule(EventKind::Timer, mn_node, 0, [done = std::move(done)] { done(false); });
    return;
  }
  if (r.association) dissociate(mn_node, radio);
  eng_.schedule(
      EventKind::Timer, mn_node, cfg_.delays.association_us(),
      [this, mn_node, radio, apid, bssid, done = std::move(done)] {
        if (!in_range(apid, mn_node)) {
          done(false);
          return;
        }
        MnNode& mm = mn_mut(mn_node);
        Radio& rr = mm.radios[static_cast<std::size_t>(radio)];
        rr.association = bssid;
        rr.channel = ap(apid).channel;
        ap_mut(apid).clients[rr.mac] = {mn_node, radio};
        done(true);
      });
}

void Network::dissociate(NodeId mn_node, int radio) {
  MnNode& m = mn_mut(mn_node);
  Radio& r = m.radios[static_cast<std::size_t>(radio)];
  if (!r.association) return;
  const NodeId apid = ap_by_bssid(*r.association);
  r.association.reset();
  if (apid == kNoNode) return;
  ApNode& a = ap_mut(apid);
  a.clients.erase(r.mac);

  // Handoff-installed state dies with the association, on both ends.
  auto route = a.fwd.routes.find(m.vip);
  if (route != a.fwd.routes.end() &&
      route->second.origin == EntryOrigin::HandoffPreinstalled) {
    a.fwd.routes.erase(route);
  }
  auto arp = a.fwd.arp.find(m.vip);
  if (arp != a.fwd.arp.end() &&
      arp->second.origin == EntryOrigin::HandoffPreinstalled) {
    a.fwd.arp.erase(arp);
  }
  m.fwd.routes.erase(a.client_ip);
  m.fwd.arp.erase(a.client_ip);

  if (dissoc_hook_) dissoc_hook_(apid, m.vip);
}

void Network::set_radio_role(NodeId mn_node, int radio, RadioRole role) {
  mn_mut(mn_node).radios[static_cast<std::size_t>(radio)].role = role;
}

int Network::primary_count(NodeId mn_node) const {
  const MnNode& m = mn(mn_node);
  int n = 0;
  for (const Radio& r : m.radios) n += r.role == RadioRole::Primary ? 1 : 0;
  return n;
}

void Network::install_client_path(NodeId ap_node, IpAddr vip, MacAddr radio_mac) {
  ApNode& a = ap_mut(ap_node);
  a.fwd.arp[vip] = ArpEntry{radio_mac, EntryOrigin::HandoffPreinstalled};
  a.fwd.routes[vip] = RouteEntry{NextHop{NextHopKind::AirIface, 0, vip, kNoNode, -1},
                                 EntryOrigin::HandoffPreinstalled};
}

void Network::remove_client_path(NodeId ap_node, IpAddr vip) {
  ApNode& a = ap_mut(ap_node);
  a.fwd.routes.erase(vip);
  a.fwd.arp.erase(vip);
}

void Network::mn_install_ap_path(NodeId mn_node, int radio, IpAddr ap_ip,
                                 MacAddr ap_mac) {
  MnNode& m = mn_mut(mn_node);
  m.fwd.arp[ap_ip] = ArpEntry{ap_mac, EntryOrigin::HandoffPreinstalled};
  m.fwd.routes[ap_ip] =
      RouteEntry{NextHop{NextHopKind::AirIface, radio, ap_ip, kNoNode, -1},
                 EntryOrigin::HandoffPreinstalled};
}

void Network::mn_set_default_route(NodeId mn_node, int radio, IpAddr via) {
  MnNode& m = mn_mut(mn_node);
  m.fwd.default_route =
      RouteEntry{NextHop{NextHopKind::AirIface, radio, via, kNoNode, -1},
                 EntryOrigin::HandoffPreinstalled};
}

std::optional<int> Network::gw_tunnel_for(const std::string& hostname) const {
  auto it = gw_.tunnels.find(hostname);
  if (it == gw_.tunnels.end()) return std::nullopt;
  return it->second;
}

void Network::gw_switch_route(IpAddr vip, int tunnel) {
  // Single-assignment replace: there is no instant with the route absent.
  gw_.fwd.routes[vip] =
      RouteEntry{NextHop{NextHopKind::Tunnel, 0, {}, kNoNode, tunnel},
                 EntryOrigin::Static};
}

void Network::bootstrap_associate(NodeId mn_node, int radio, NodeId ap_node) {
  MnNode& m = mn_mut(mn_node);
  Radio& r = m.radios[static_cast<std::size_t>(radio)];
  ApNode& a = ap_mut(ap_node);
  r.association = a.bssid;
  r.channel = a.channel;
  r.role = RadioRole::Primary;
  m.radios[static_cast<std::size_t>(1 - radio)].role = RadioRole::Secondary;
  a.clients[r.mac] = {mn_node, radio};
  install_client_path(ap_node, m.vip, r.mac);
  const auto tid = gw_tunnel_for(a.hostname);
  assert(tid.has_value());
  gw_switch_route(m.vip, *tid);
  mn_set_default_route(mn_node, radio, a.client_ip);
  m.fwd.arp[a.client_ip] = ArpEntry{a.bssid, EntryOrigin::Learned};
}

ForwardingState& Network::forwarding_mut(NodeId node) {
  if (node == gw_.id) return gw_.fwd;
  if (is_ap(node)) return ap_mut(node).fwd;
  return mn_mut(node).fwd;
}

std::optional<Network::AirTarget> Network::client_of(const ApNode& ap,
                                                     MacAddr mac) const {
  auto it = ap.clients.find(mac);
  if (it == ap.clients.end()) return std::nullopt;
  return AirTarget{it->second.first, it->second.second};
}

void Network::deliver_control(NodeId dst, NodeId src, const HandoffMessage& msg,
                              SimTime delay, double loss_p) {
  if (loss_p > 0.0 && rng_.stream("control-loss").bernoulli(loss_p)) return;
  eng_.schedule(EventKind::MessageDelivery, dst, delay, [this, dst, src, msg] {
    auto it = control_handlers_.find(dst);
    if (it != control_handlers_.end()) it->second(src, msg);
  });
}

void Network::send_control(NodeId from, ControlDest to, const HandoffMessage& msg) {
  const SimTime air = cfg_.delays.air_us();
  const double sens = cfg_.propagation.rx_sensitivity_dbm;

  if (to.kind == ControlDest::BroadcastRadio) {
    // Link-scoped broadcast out of one radio; only APs on that channel and in
    // range can hear it, each with an independent loss draw.
    assert(is_mn(from));
    const MnNode& m = mn(from);
    const Radio& r = m.radios[static_cast<std::size_t>(to.radio)];
    if (trace_) trace_->push_back(trace_line(eng_.now(), m.name, "*", msg));
    if (!r.association) return;
    for (const ApNode& a : aps_) {
      if (a.channel != r.channel) continue;
      if (compute_rssi(a.position, position_of(from), cfg_.propagation, nullptr) <
          sens) {
        continue;
      }
      deliver_control(a.id, from, msg, air, cfg_.handoff.p_bcast);
    }
    return;
  }

  const NodeId dst = to.node;
  if (trace_) {
    trace_->push_back(trace_line(eng_.now(), node_name(from), node_name(dst), msg));
  }

  if (is_mn(from)) {
    const MnNode& m = mn(from);
    const Radio& r = m.radios[static_cast<std::size_t>(to.radio)];
    if (!r.association || ap_by_bssid(*r.association) != dst) return;
    if (compute_rssi(ap(dst).position, position_of(from), cfg_.propagation,
                     nullptr) < sens) {
      return;
    }
    deliver_control(dst, from, msg, air, cfg_.handoff.p_unicast);
    return;
  }

  if (is_ap(from) && is_mn(dst)) {
    const ApNode& a = ap(from);
    // Deliver via whichever radio of the MN is associated here.
    for (const auto& [mac, ref] : a.clients) {
      if (ref.first != dst) continue;
      if (compute_rssi(a.position, position_of(dst), cfg_.propagation, nullptr) <
          sens) {
        return;
      }
      deliver_control(dst, from, msg, air, cfg_.handoff.p_unicast);
      return;
    }
    return;  // MN no longer associated: dropped
  }

  // Backhaul leg (AP<->AP<->G), one loss draw per message.
  const int hops = backhaul_hops(from, dst);
  deliver_control(dst, from, msg, static_cast<SimTime>(hops) *
                                      cfg_.delays.backhaul_hop_us(),
                  cfg_.handoff.p_unicast);
}

void Network::set_control_handler(NodeId node, ControlHandler h) {
  control_handlers_[node] = std::move(h);
}

void Network::set_local_delivery(NodeId node, LocalDelivery h) {
  local_delivery_[node] = std::move(h);
}

ForwardDecision Network::forward_decision(NodeId node, const DataPacket& pkt) const {
  ForwardDecision d;

  if (is_mn(node)) {
    const MnNode& m = mn(node);
    if (pkt.dst == m.vip || pkt.dst == m.radios[0].private_ip ||
        pkt.dst == m.radios[1].private_ip) {
      d.action = ForwardAction::DeliverLocal;
      return d;
    }
    const RouteEntry* re = m.fwd.lookup(pkt.dst);
    if (!re) {
      d.reason = DropReason::NoRoute;
      return d;
    }
    const Radio& r = m.radios[static_cast<std::size_t>(re->hop.iface)];
    if (!r.association) {
      d.reason = DropReason::NotAssociated;
      return d;
    }
    const NodeId apid = ap_by_bssid(*r.association);
    if (apid == kNoNode || !(re->hop.via == ap(apid).client_ip)) {
      d.reason = DropReason::NextHopUnreachable;
      return d;
    }
    auto arp = m.fwd.arp.find(re->hop.via);
    if (arp == m.fwd.arp.end()) {
      d.action = ForwardAction::NeedsArpQuery;
      d.resolve_ip = re->hop.via;
      d.dst_mac = ap(apid).bssid;
      return d;
    }
    d.action = ForwardAction::EmitAir;
    d.iface = re->hop.iface;
    d.dst_mac = arp->second.mac;
    d.next_node = apid;
    return d;
  }

  if (is_ap(node)) {
    const ApNode& a = ap(node);
    if (pkt.encap && *pkt.encap < static_cast<int>(gw_.tunnel_endpoint.size()) &&
        gw_.tunnel_endpoint[static_cast<std::size_t>(*pkt.encap)] == node) {
      d.action = ForwardAction::Decapsulate;
      return d;
    }
    if (pkt.dst == a.client_ip) {
      d.action = ForwardAction::DeliverLocal;
      return d;
    }
    // A VIP lives on the client subnet: it is reachable only through a host
    // route, never by bouncing upstream over the default route.
    const RouteEntry* re = nullptr;
    if (auto rit = a.fwd.routes.find(pkt.dst); rit != a.fwd.routes.end()) {
      re = &rit->second;
    } else if (pkt.dst.kind != IpKind::Virtual && a.fwd.default_route) {
      re = &*a.fwd.default_route;
    }
    if (!re) {
      d.reason = DropReason::NoRoute;
      return d;
    }
    if (re->hop.kind == NextHopKind::Backhaul) {
      d.action = ForwardAction::EmitBackhaul;
      d.next_node = re->hop.node;
      return d;
    }
    // Client-facing interface: a VIP is deliverable only through the
    // handoff-preinstalled ARP entry; there is nothing to query.
    auto arp = a.fwd.arp.find(pkt.dst);
    if (arp == a.fwd.arp.end()) {
      if (pkt.dst.kind == IpKind::Virtual) {
        d.reason = DropReason::NoArp;
        return d;
      }
      for (const auto& [mac, ref] : a.clients) {
        const MnNode& m = mn(ref.first);
        if (m.radios[static_cast<std::size_t>(ref.second)].private_ip == pkt.dst) {
          d.action = ForwardAction::NeedsArpQuery;
          d.resolve_ip = pkt.dst;
          d.dst_mac = mac;
          return d;
        }
      }
      d.reason = DropReason::NoArp;
      return d;
    }
    d.action = ForwardAction::EmitAir;
    d.iface = 0;
    d.dst_mac = arp->second.mac;
    return d;
  }

  // Gateway.
  if (pkt.dst == gw_.service_ip) {
    d.action = ForwardAction::DeliverLocal;
    return d;
  }
  const RouteEntry* re = gw_.fwd.lookup(pkt.dst);
  if (!re) {
    d.reason = DropReason::NoRoute;
    return d;
  }
  if (re->hop.kind == NextHopKind::Tunnel) {
    d.action = ForwardAction::EncapsulateTunnel;
    d.tunnel = re->hop.tunnel;
    d.next_node = gw_.tunnel_endpoint[static_cast<std::size_t>(re->hop.tunnel)];
    return d;
  }
  d.action = ForwardAction::EmitBackhaul;
  d.next_node = re->hop.node;
  return d;
}

void Network::record_drop(NodeId node, const DataPacket& pkt, DropReason reason) {
  drops_.push_back(DropRecord{eng_.now(), node, pkt.payload_id, reason});
}

void Network::emit_air_to_mn(const ApNode& ap_node, const DataPacket& pkt,
                             MacAddr dst_mac) {
  const auto target = client_of(ap_node, dst_mac);
  if (!target) {
    record_drop(ap_node.id, pkt, DropReason::NotAssociated);
    return;
  }
  if (compute_rssi(ap_node.position, position_of(target->mn), cfg_.propagation,
                   nullptr) < cfg_.propagation.rx_sensitivity_dbm) {
    record_drop(ap_node.id, pkt, DropReason::OutOfRange);
    return;
  }
  if (cfg_.traffic.p_data > 0.0 &&
      rng_.stream("data-loss").bernoulli(cfg_.traffic.p_data)) {
    record_drop(ap_node.id, pkt, DropReason::DataLoss);
    return;
  }
  const NodeId mn_id = target->mn;
  eng_.schedule(EventKind::MessageDelivery, mn_id, cfg_.delays.air_us(),
                [this, mn_id, pkt] { inject_data(mn_id, pkt); });
}

void Network::inject_data(NodeId node, DataPacket pkt) {
  if (is_mn(node) && pkt.direction == Direction::Outbound) {
    const MnNode& m = mn(node);
    if (m.fwd.snat_to_vip && !(pkt.src == m.vip)) pkt.src = m.vip;
  }

  for (;;) {
    const ForwardDecision d = forward_decision(node, pkt);
    switch (d.action) {
      case ForwardAction::DeliverLocal: {
        auto it = local_delivery_.find(node);
        if (it != local_delivery_.end()) it->second(pkt);
        return;
      }
      case ForwardAction::Drop:
        record_drop(node, pkt, d.reason);
        return;
      case ForwardAction::Decapsulate:
        pkt.encap.reset();
        continue;
      case ForwardAction::NeedsArpQuery: {
        // Modeled ARP: charge one fixed query delay, learn, retry.
        if (is_mn(node)) {
          mn_mut(node).fwd.arp[d.resolve_ip] =
              ArpEntry{d.dst_mac, EntryOrigin::Learned};
        } else {
          ap_mut(node).fwd.arp[d.resolve_ip] =
              ArpEntry{d.dst_mac, EntryOrigin::Learned};
        }
        eng_.schedule(EventKind::MessageDelivery, node, cfg_.delays.arp_query_us(),
                      [this, node, pkt] { inject_data(node, pkt); });
        return;
      }
      case ForwardAction::EmitAir: {
        if (is_mn(node)) {
          const NodeId apid = d.next_node;
          if (compute_rssi(ap(apid).position, position_of(node), cfg_.propagation,
                           nullptr) < cfg_.propagation.rx_sensitivity_dbm) {
            record_drop(node, pkt, DropReason::OutOfRange);
            return;
          }
          if (cfg_.traffic.p_data > 0.0 &&
              rng_.stream("data-loss").bernoulli(cfg_.traffic.p_data)) {
            record_drop(node, pkt, DropReason::DataLoss);
            return;
          }
          eng_.schedule(EventKind::MessageDelivery, apid, cfg_.delays.air_us(),
                        [this, apid, pkt] { inject_data(apid, pkt); });
        } else {
          emit_air_to_mn(ap(node), pkt, d.dst_mac);
        }
        return;
      }
      case ForwardAction::EmitBackhaul: {
        const NodeId dst = d.next_node;
        const SimTime delay = static_cast<SimTime>(backhaul_hops(node, dst)) *
                              cfg_.delays.backhaul_hop_us();
        eng_.schedule(EventKind::MessageDelivery, dst, delay,
                      [this, dst, pkt] { inject_data(dst, pkt); });
        return;
      }
      case ForwardAction::EncapsulateTunnel: {
        pkt.encap = d.tunnel;
        const NodeId dst = d.next_node;
        const SimTime delay = static_cast<SimTime>(backhaul_hops(node, dst)) *
                              cfg_.delays.backhaul_hop_us();
        eng_.schedule(EventKind::MessageDelivery, dst, delay,
                      [this, dst, pkt] { inject_data(dst, pkt); });
        return;
      }
    }
  }
}

}  // namespace handoff
