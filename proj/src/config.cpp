// SPDX-License-Identifier: Apache-2.0
#include "handoff/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace handoff {

using nlohmann::json;

Config default_config() {
  Config c;
  c.topology.aps = {
      {"A", "ap-a", {150.0, 10.0}, ApRole::Edge, 1, {"C"}, 10000},
      {"B", "ap-b", {450.0, 10.0}, ApRole::Edge, 6, {"C"}, 10000},
      {"C", "ap-c", {300.0, 20.0}, ApRole::Core, 11, {"G"}, 0},
  };
  c.topology.gateway = {"G", {"C"}};
  // Shuttle through the coverage overlap; at 40 kmph each 120 m leg takes
  // ~10.8 s, giving ~9 handoffs across a 100 s echo run.
  c.mobility.waypoints = {{240, 0}, {360, 0}, {240, 0}, {360, 0}, {240, 0},
                          {360, 0}, {240, 0}, {360, 0}, {240, 0}, {360, 0},
                          {240, 0}};
  c.mobility.speed_kmph = 40.0;
  return c;
}

namespace {

void fail(const std::string& what) { throw ConfigError("config: " + what); }

// Rejects keys outside the allowed set, naming the offender.
void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail("unknown key \"" + (where.empty() ? it.key() : where + "." + it.key()) +
           "\"");
    }
  }
}

double get_num(const json& obj, const std::string& where, const char* key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + " must be a number");
  return v.get<double>();
}

std::int64_t get_int(const json& obj, const std::string& where, const char* key,
                     std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key + " must be an integer");
  return v.get<std::int64_t>();
}

std::string get_str(const json& obj, const std::string& where, const char* key,
                    const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key + " must be a string");
  return v.get<std::string>();
}

Vec2 get_vec2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(where + " must be [x, y] in meters");
  }
  return Vec2{v[0].get<double>(), v[1].get<double>()};
}

std::vector<int> get_channels(const json& obj, const std::string& where,
                              const char* key, std::vector<int> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) fail(where + "." + key + " must be a non-empty array");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail(where + "." + key + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

void parse_topology(const json& j, TopologyConfig& topo) {
  check_keys(j, "topology", {"aps", "gateway"});
  if (j.contains("aps")) {
    if (!j.at("aps").is_array()) fail("topology.aps must be an array");
    topo.aps.clear();
    int idx = 0;
    for (const auto& a : j.at("aps")) {
      const std::string where = "topology.aps[" + std::to_string(idx) + "]";
      check_keys(a, where,
                 {"id", "hostname", "position", "role", "channel", "links",
                  "path_capacity_kbps"});
      ApConfig ap;
      ap.id = get_str(a, where, "id", "");
      if (ap.id.empty()) fail(where + ".id is required");
      ap.hostname = get_str(a, where, "hostname", "ap-" + ap.id);
      if (!a.contains("position")) fail(where + ".position is required");
      ap.position = get_vec2(a.at("position"), where + ".position");
      const std::string role = get_str(a, where, "role", "edge");
      if (role == "edge") {
        ap.role = ApRole::Edge;
      } else if (role == "core") {
        ap.role = ApRole::Core;
      } else {
        fail(where + ".role must be \"edge\" or \"core\"");
      }
      ap.channel = static_cast<int>(get_int(a, where, "channel", 1));
      if (a.contains("links")) {
        if (!a.at("links").is_array()) fail(where + ".links must be an array");
        ap.links.clear();
        for (const auto& l : a.at("links")) {
          if (!l.is_string()) fail(where + ".links entries must be strings");
          ap.links.push_back(l.get<std::string>());
        }
      }
      ap.path_capacity_kbps = get_int(a, where, "path_capacity_kbps",
                                      ap.role == ApRole::Edge ? 10000 : 0);
      if (ap.role == ApRole::Core && a.contains("path_capacity_kbps")) {
        fail(where + ".path_capacity_kbps only applies to edge APs");
      }
      topo.aps.push_back(std::move(ap));
      ++idx;
    }
  }
  if (j.contains("gateway")) {
    const json& g = j.at("gateway");
    check_keys(g, "topology.gateway", {"id", "links"});
    topo.gateway.id = get_str(g, "topology.gateway", "id", "G");
    if (g.contains("links")) {
      if (!g.at("links").is_array()) fail("topology.gateway.links must be an array");
      topo.gateway.links.clear();
      for (const auto& l : g.at("links")) {
        if (!l.is_string()) fail("topology.gateway.links entries must be strings");
        topo.gateway.links.push_back(l.get<std::string>());
      }
    }
  }
}

void validate(const Config& c) {
  const TopologyConfig& topo = c.topology;
  std::set<std::string> ids{topo.gateway.id};
  int edge_count = 0;
  for (const auto& ap : topo.aps) {
    if (!ids.insert(ap.id).second) fail("duplicate node id \"" + ap.id + "\"");
    if (ap.role == ApRole::Edge) ++edge_count;
  }
  if (edge_count == 0) fail("topology needs at least one edge AP");
  if (topo.gateway.id.empty()) fail("missing gateway");
  if (topo.gateway.links.empty()) fail("gateway has no wired links");

  // Backhaul adjacency (links are bidirectional).
  std::map<std::string, std::set<std::string>> adj;
  auto add_link = [&](const std::string& a, const std::string& b) {
    if (!ids.count(b)) fail("link target \"" + b + "\" is not a node");
    adj[a].insert(b);
    adj[b].insert(a);
  };
  for (const auto& ap : topo.aps) {
    for (const auto& l : ap.links) add_link(ap.id, l);
  }
  for (const auto& l : topo.gateway.links) add_link(topo.gateway.id, l);

  // Every edge AP must reach the gateway over the backhaul.
  std::set<std::string> seen{topo.gateway.id};
  std::vector<std::string> frontier{topo.gateway.id};
  while (!frontier.empty()) {
    std::string n = frontier.back();
    frontier.pop_back();
    for (const auto& m : adj[n]) {
      if (seen.insert(m).second) frontier.push_back(m);
    }
  }
  for (const auto& ap : topo.aps) {
    if (ap.role == ApRole::Edge && !seen.count(ap.id)) {
      fail("edge AP \"" + ap.id + "\" has no backhaul path to the gateway");
    }
    if (ap.role == ApRole::Edge) {
      bool scanned = false;
      for (int ch : c.handoff.scan_channels) scanned |= (ch == ap.channel);
      if (!scanned) {
        fail("edge AP \"" + ap.id + "\" channel " + std::to_string(ap.channel) +
             " is not in handoff.scan_channels");
      }
    }
  }

  if (c.propagation.path_loss_exponent < 2.0) {
    fail("propagation.path_loss_exponent must be >= 2");
  }
  if (c.propagation.rx_sensitivity_dbm >=
      c.propagation.tx_power_dbm - c.propagation.ref_loss_db) {
    fail("propagation.rx_sensitivity_dbm must be below tx_power - ref_loss");
  }
  if (c.mobility.waypoints.empty()) fail("mobility.waypoints must not be empty");
  if (c.mobility.waypoints.size() > 1 && c.mobility.speed_kmph <= 0.0) {
    fail("mobility.speed_kmph must be positive for a multi-waypoint path");
  }
  if (c.traffic.packet_count < 0) fail("traffic.packet_count must be >= 0");
  if (c.traffic.interval_ms <= 0.0) fail("traffic.interval_ms must be positive");
  if (c.handoff.ewma_alpha <= 0.0 || c.handoff.ewma_alpha > 1.0) {
    fail("handoff.ewma_alpha must be in (0, 1]");
  }
  if (c.handoff.history_depth < 1) fail("handoff.history_depth must be >= 1");
  for (double p : {c.handoff.p_bcast, c.handoff.p_unicast, c.traffic.p_data}) {
    if (p < 0.0 || p > 1.0) fail("loss probabilities must be in [0, 1]");
  }
}

}  // namespace

Config load_config_json(const json& j) {
  if (!j.is_object()) fail("top level must be a JSON object");
  check_keys(j, "",
             {"seed", "topology", "propagation", "delays", "handoff", "mobility",
              "traffic"});
  Config c = default_config();
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) fail("seed must be an integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("topology")) parse_topology(j.at("topology"), c.topology);
  if (j.contains("propagation")) {
    const json& p = j.at("propagation");
    check_keys(p, "propagation",
               {"tx_power_dbm", "ref_loss_db", "path_loss_exponent",
                "noise_floor_dbm", "shadowing_sigma_db", "rx_sensitivity_dbm"});
    auto& pp = c.propagation;
    pp.tx_power_dbm = get_num(p, "propagation", "tx_power_dbm", pp.tx_power_dbm);
    pp.ref_loss_db = get_num(p, "propagation", "ref_loss_db", pp.ref_loss_db);
    pp.path_loss_exponent =
        get_num(p, "propagation", "path_loss_exponent", pp.path_loss_exponent);
    pp.noise_floor_dbm =
        get_num(p, "propagation", "noise_floor_dbm", pp.noise_floor_dbm);
    pp.shadowing_sigma_db =
        get_num(p, "propagation", "shadowing_sigma_db", pp.shadowing_sigma_db);
    pp.rx_sensitivity_dbm =
        get_num(p, "propagation", "rx_sensitivity_dbm", pp.rx_sensitivity_dbm);
  }
  if (j.contains("delays")) {
    const json& d = j.at("delays");
    check_keys(d, "delays",
               {"air_ms", "backhaul_hop_ms", "association_ms", "arp_query_ms"});
    c.delays.air_ms = get_num(d, "delays", "air_ms", c.delays.air_ms);
    c.delays.backhaul_hop_ms =
        get_num(d, "delays", "backhaul_hop_ms", c.delays.backhaul_hop_ms);
    c.delays.association_ms =
        get_num(d, "delays", "association_ms", c.delays.association_ms);
    c.delays.arp_query_ms =
        get_num(d, "delays", "arp_query_ms", c.delays.arp_query_ms);
  }
  if (j.contains("handoff")) {
    const json& h = j.at("handoff");
    check_keys(h, "handoff",
               {"lq_threshold_dbm", "lq_margin_db", "ewma_alpha", "history_depth",
                "scan_dwell_ms", "scan_channels", "sweep_channels", "scan_stale_ms",
                "request_retry_ms", "max_retries", "ok_timeout_ms",
                "commitment_timeout_ms", "required_bandwidth_kbps", "p_bcast",
                "p_unicast"});
    auto& hh = c.handoff;
    hh.lq_threshold_dbm = get_num(h, "handoff", "lq_threshold_dbm", hh.lq_threshold_dbm);
    hh.lq_margin_db = get_num(h, "handoff", "lq_margin_db", hh.lq_margin_db);
    hh.ewma_alpha = get_num(h, "handoff", "ewma_alpha", hh.ewma_alpha);
    hh.history_depth =
        static_cast<int>(get_int(h, "handoff", "history_depth", hh.history_depth));
    hh.scan_dwell_ms = get_num(h, "handoff", "scan_dwell_ms", hh.scan_dwell_ms);
    hh.scan_channels = get_channels(h, "handoff", "scan_channels", hh.scan_channels);
    hh.sweep_channels = get_channels(h, "handoff", "sweep_channels", hh.sweep_channels);
    hh.scan_stale_ms = get_num(h, "handoff", "scan_stale_ms", hh.scan_stale_ms);
    hh.request_retry_ms =
        get_num(h, "handoff", "request_retry_ms", hh.request_retry_ms);
    hh.max_retries =
        static_cast<int>(get_int(h, "handoff", "max_retries", hh.max_retries));
    hh.ok_timeout_ms = get_num(h, "handoff", "ok_timeout_ms", hh.ok_timeout_ms);
    hh.commitment_timeout_ms =
        get_num(h, "handoff", "commitment_timeout_ms", hh.commitment_timeout_ms);
    hh.required_bandwidth_kbps = get_int(h, "handoff", "required_bandwidth_kbps",
                                         hh.required_bandwidth_kbps);
    hh.p_bcast = get_num(h, "handoff", "p_bcast", hh.p_bcast);
    hh.p_unicast = get_num(h, "handoff", "p_unicast", hh.p_unicast);
  }
  if (j.contains("mobility")) {
    const json& m = j.at("mobility");
    check_keys(m, "mobility", {"waypoints", "speed_kmph"});
    if (m.contains("waypoints")) {
      if (!m.at("waypoints").is_array()) fail("mobility.waypoints must be an array");
      c.mobility.waypoints.clear();
      int idx = 0;
      for (const auto& w : m.at("waypoints")) {
        c.mobility.waypoints.push_back(
            get_vec2(w, "mobility.waypoints[" + std::to_string(idx++) + "]"));
      }
    }
    c.mobility.speed_kmph =
        get_num(m, "mobility", "speed_kmph", c.mobility.speed_kmph);
  }
  if (j.contains("traffic")) {
    const json& t = j.at("traffic");
    check_keys(t, "traffic",
               {"packet_count", "interval_ms", "reply_timeout_ms", "payload",
                "p_data"});
    c.traffic.packet_count = static_cast<int>(
        get_int(t, "traffic", "packet_count", c.traffic.packet_count));
    c.traffic.interval_ms =
        get_num(t, "traffic", "interval_ms", c.traffic.interval_ms);
    c.traffic.reply_timeout_ms =
        get_num(t, "traffic", "reply_timeout_ms", c.traffic.reply_timeout_ms);
    c.traffic.payload = get_str(t, "traffic", "payload", c.traffic.payload);
    c.traffic.p_data = get_num(t, "traffic", "p_data", c.traffic.p_data);
  }
  validate(c);
  return c;
}

Config load_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return load_config_json(j);
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config_text(ss.str());
}

json Config::echo() const {
  json aps = json::array();
  for (const auto& ap : topology.aps) {
    json a{{"id", ap.id},
           {"hostname", ap.hostname},
           {"position", {ap.position.x, ap.position.y}},
           {"role", ap.role == ApRole::Edge ? "edge" : "core"},
           {"channel", ap.channel},
           {"links", ap.links}};
    if (ap.role == ApRole::Edge) a["path_capacity_kbps"] = ap.path_capacity_kbps;
    aps.push_back(std::move(a));
  }
  json waypoints = json::array();
  for (const auto& w : mobility.waypoints) waypoints.push_back({w.x, w.y});
  return json{
      {"seed", seed},
      {"topology",
       {{"aps", std::move(aps)},
        {"gateway", {{"id", topology.gateway.id}, {"links", topology.gateway.links}}}}},
      {"propagation",
       {{"tx_power_dbm", propagation.tx_power_dbm},
        {"ref_loss_db", propagation.ref_loss_db},
        {"path_loss_exponent", propagation.path_loss_exponent},
        {"noise_floor_dbm", propagation.noise_floor_dbm},
        {"shadowing_sigma_db", propagation.shadowing_sigma_db},
        {"rx_sensitivity_dbm", propagation.rx_sensitivity_dbm}}},
      {"delays",
       {{"air_ms", delays.air_ms},
        {"backhaul_hop_ms", delays.backhaul_hop_ms},
        {"association_ms", delays.association_ms},
        {"arp_query_ms", delays.arp_query_ms}}},
      {"handoff",
       {{"lq_threshold_dbm", handoff.lq_threshold_dbm},
        {"lq_margin_db", handoff.lq_margin_db},
        {"ewma_alpha", handoff.ewma_alpha},
        {"history_depth", handoff.history_depth},
        {"scan_dwell_ms", handoff.scan_dwell_ms},
        {"scan_channels", handoff.scan_channels},
        {"sweep_channels", handoff.sweep_channels},
        {"scan_stale_ms", handoff.scan_stale_ms},
        {"request_retry_ms", handoff.request_retry_ms},
        {"max_retries", handoff.max_retries},
        {"ok_timeout_ms", handoff.ok_timeout_ms},
        {"commitment_timeout_ms", handoff.commitment_timeout_ms},
        {"required_bandwidth_kbps", handoff.required_bandwidth_kbps},
        {"p_bcast", handoff.p_bcast},
        {"p_unicast", handoff.p_unicast}}},
      {"mobility",
       {{"waypoints", std::move(waypoints)}, {"speed_kmph", mobility.speed_kmph}}},
      {"traffic",
       {{"packet_count", traffic.packet_count},
        {"interval_ms", traffic.interval_ms},
        {"reply_timeout_ms", traffic.reply_timeout_ms},
        {"payload", traffic.payload},
        {"p_data", traffic.p_data}}},
  };
}

}  // namespace handoff
