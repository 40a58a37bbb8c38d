// SPDX-License-Identifier: Apache-2.0
#include "handoff/messages.hpp"

namespace handoff {

namespace {

struct NameVisitor {
  std::string operator()(const RequestRoute&) const { return "REQUEST-ROUTE"; }
  std::string operator()(const OfferRoute&) const { return "OFFER-ROUTE"; }
  std::string operator()(const SwitchRouteMnToB&) const {
    return "SWITCH-ROUTE-MN-TO-B";
  }
  std::string operator()(const SwitchRouteBToG&) const {
    return "SWITCH-ROUTE-B-TO-G";
  }
  std::string operator()(const SwitchRouteOk&) const { return "SWITCH-ROUTE-OK"; }
};

struct FieldsVisitor {
  std::string operator()(const RequestRoute& m) const {
    return "{requested_bandwidth=" + std::to_string(m.requested_bandwidth_kbps) +
           ",radio2_mac=" + m.radio2_mac.str() +
           ",floating_ip=" + m.floating_ip.str() + "}";
  }
  std::string operator()(const OfferRoute& m) const {
    return "{available_bandwidth=" + std::to_string(m.available_bandwidth_kbps) +
           ",ap_ip=" + m.ap_ip.str() + ",ap_mac=" + m.ap_mac.str() + "}";
  }
  std::string operator()(const SwitchRouteMnToB& m) const {
    return "{floating_ip=" + m.floating_ip.str() + "}";
  }
  std::string operator()(const SwitchRouteBToG& m) const {
    return "{floating_ip=" + m.floating_ip.str() +
           ",ap_hostname=" + m.ap_hostname + "}";
  }
  std::string operator()(const SwitchRouteOk& m) const {
    return "{floating_ip=" + m.floating_ip.str() +
           ",ap_hostname=" + m.ap_hostname + "}";
  }
};

struct FieldNamesVisitor {
  std::vector<std::string> operator()(const RequestRoute&) const {
    return {"requested_bandwidth", "radio2_mac", "floating_ip"};
  }
  std::vector<std::string> operator()(const OfferRoute&) const {
    return {"available_bandwidth", "ap_ip", "ap_mac"};
  }
  std::vector<std::string> operator()(const SwitchRouteMnToB&) const {
    return {"floating_ip"};
  }
  std::vector<std::string> operator()(const SwitchRouteBToG&) const {
    return {"floating_ip", "ap_hostname"};
  }
  std::vector<std::string> operator()(const SwitchRouteOk&) const {
    return {"floating_ip", "ap_hostname"};
  }
};

}  // namespace

std::string message_name(const HandoffMessage& msg) {
  return std::visit(NameVisitor{}, msg);
}

std::vector<std::string> message_field_names(const HandoffMessage& msg) {
  return std::visit(FieldNamesVisitor{}, msg);
}

std::string trace_line(SimTime t, const std::string& from, const std::string& to,
                       const HandoffMessage& msg) {
  return "t=" + std::to_string(t) + " " + from + "->" + to + " " +
         message_name(msg) + " " + std::visit(FieldsVisitor{}, msg);
}

}  // namespace handoff
