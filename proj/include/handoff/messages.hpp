// SPDX-License-Identifier: Apache-2.0
//
// Handoff control messages. Field sets are fixed per variant; the trace
// serialization is line-oriented and diff-friendly so that two runs with the
// same seed can be compared byte for byte.
#ifndef HANDOFF_MESSAGES_HPP
#define HANDOFF_MESSAGES_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "handoff/ids.hpp"
#include "handoff/time.hpp"

namespace handoff {

// Broadcast by the MN via the secondary radio immediately after it
// associates with the new AP.
struct RequestRoute {
  std::int64_t requested_bandwidth_kbps = 0;
  MacAddr radio2_mac;
  IpAddr floating_ip;
};

// AP reply; the MN continues the handoff only if the advertised bandwidth
// covers its required minimum.
struct OfferRoute {
  std::int64_t available_bandwidth_kbps = 0;
  IpAddr ap_ip;
  MacAddr ap_mac;

  bool operator==(const OfferRoute& o) const {
    return available_bandwidth_kbps == o.available_bandwidth_kbps &&
           ap_ip == o.ap_ip && ap_mac == o.ap_mac;
  }
};

struct SwitchRouteMnToB {
  IpAddr floating_ip;
};

struct SwitchRouteBToG {
  IpAddr floating_ip;
  std::string ap_hostname;
};

// Gateway to AP, then AP to MN.
struct SwitchRouteOk {
  IpAddr floating_ip;
  std::string ap_hostname;
};

using HandoffMessage = std::variant<RequestRoute, OfferRoute, SwitchRouteMnToB,
                                    SwitchRouteBToG, SwitchRouteOk>;

std::string message_name(const HandoffMessage& msg);
std::vector<std::string> message_field_names(const HandoffMessage& msg);

// `t=<us> <FROM>-><TO> <VARIANT> {field=value,...}`
std::string trace_line(SimTime t, const std::string& from, const std::string& to,
                       const HandoffMessage& msg);

}  // namespace handoff

#endif
