// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_FORWARDING_HPP
#define HANDOFF_FORWARDING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "handoff/ids.hpp"

namespace handoff {

enum class EntryOrigin {
  Static,               // installed at startup, never touched by handoffs
  Learned,              // resolved on demand (modeled ARP query)
  HandoffPreinstalled,  // installed by a handoff; removed on dissociation
};

enum class NextHopKind {
  AirIface,  // emit via a radio interface toward an on-link address
  Backhaul,  // logical multi-hop backhaul path toward a node
  Tunnel,    // gateway only: pre-configured tunnel to an edge AP
};

struct NextHop {
  NextHopKind kind = NextHopKind::AirIface;
  int iface = 0;        // radio index (AirIface)
  IpAddr via;           // on-link address to resolve (AirIface)
  NodeId node = kNoNode;  // destination node (Backhaul)
  int tunnel = -1;      // tunnel id (Tunnel)
};

struct RouteEntry {
  NextHop hop;
  EntryOrigin origin = EntryOrigin::Static;
};

struct ArpEntry {
  MacAddr mac;
  EntryOrigin origin = EntryOrigin::Static;
};

// Per-node forwarding plane: routes, ARP cache, and the MN's SNAT rule.
struct ForwardingState {
  std::map<IpAddr, RouteEntry> routes;  // host routes, most-specific match
  std::optional<RouteEntry> default_route;
  std::map<IpAddr, ArpEntry> arp;
  bool snat_to_vip = false;
  IpAddr vip;

  const RouteEntry* lookup(IpAddr dst) const {
    auto it = routes.find(dst);
    if (it != routes.end()) return &it->second;
    return default_route ? &*default_route : nullptr;
  }
};

enum class Direction { Outbound, Inbound };

struct DataPacket {
  IpAddr src;
  IpAddr dst;
  int payload_id = 0;
  Direction direction = Direction::Outbound;
  std::optional<int> encap;  // tunnel id while encapsulated
};

enum class DropReason {
  NotAssociated,
  NoRoute,
  NoArp,
  OutOfRange,
  NextHopUnreachable,
  DataLoss,
};

const char* drop_reason_name(DropReason r);

enum class ForwardAction {
  DeliverLocal,
  EmitAir,
  EmitBackhaul,
  EncapsulateTunnel,
  Decapsulate,
  NeedsArpQuery,  // resolvable but absent: charge the query delay and retry
  Drop,
};

struct ForwardDecision {
  ForwardAction action = ForwardAction::Drop;
  DropReason reason = DropReason::NoRoute;
  int iface = 0;
  MacAddr dst_mac;
  IpAddr resolve_ip;      // address to learn on NeedsArpQuery
  NodeId next_node = kNoNode;
  int tunnel = -1;
};

}  // namespace handoff

#endif
