// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_CONFIG_HPP
#define HANDOFF_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "handoff/ids.hpp"
#include "handoff/mobility.hpp"
#include "handoff/propagation.hpp"
#include "handoff/time.hpp"

namespace handoff {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ApRole { Edge, Core };

struct ApConfig {
  std::string id;
  std::string hostname;
  Vec2 position{};
  ApRole role = ApRole::Edge;
  int channel = 1;
  std::vector<std::string> links;           // backhaul neighbours (AP ids or gateway id)
  std::int64_t path_capacity_kbps = 10000;  // monitored bandwidth, edge only
};

struct GatewayConfig {
  std::string id = "G";
  std::vector<std::string> links;  // wired links to core AP(s)
};

struct TopologyConfig {
  std::vector<ApConfig> aps;
  GatewayConfig gateway;
};

struct DelayConfig {
  double air_ms = 2.0;           // MN<->AP, control and data
  double backhaul_hop_ms = 3.0;  // per backhaul hop, control and tunnels
  double association_ms = 35.0;  // auth+assoc abstracted as one delay
  double arp_query_ms = 1.0;     // charged when a resolvable entry is absent

  SimTime air_us() const { return ms_f(air_ms); }
  SimTime backhaul_hop_us() const { return ms_f(backhaul_hop_ms); }
  SimTime association_us() const { return ms_f(association_ms); }
  SimTime arp_query_us() const { return ms_f(arp_query_ms); }
};

struct HandoffConfig {
  double lq_threshold_dbm = -75.0;
  double lq_margin_db = 5.0;
  double ewma_alpha = 0.5;
  int history_depth = 5;
  double scan_dwell_ms = 10.0;
  std::vector<int> scan_channels = {1, 6, 11};  // dual-radio secondary sweep
  std::vector<int> sweep_channels = {1, 2, 3, 4, 5, 6,
                                     7, 8, 9, 10, 11};  // baseline full sweep
  double scan_stale_ms = 500.0;  // samples older than this no longer count
  double request_retry_ms = 25.0;
  int max_retries = 5;
  double ok_timeout_ms = 100.0;
  double commitment_timeout_ms = 2000.0;
  std::int64_t required_bandwidth_kbps = 2000;  // also the requested amount
  double p_bcast = 0.0;    // broadcast control loss probability
  double p_unicast = 0.0;  // unicast control loss probability

  SimTime dwell_us() const { return ms_f(scan_dwell_ms); }
  SimTime stale_us() const { return ms_f(scan_stale_ms); }
  SimTime retry_us() const { return ms_f(request_retry_ms); }
  SimTime ok_timeout_us() const { return ms_f(ok_timeout_ms); }
  SimTime commitment_timeout_us() const { return ms_f(commitment_timeout_ms); }
};

struct MobilityConfig {
  std::vector<Vec2> waypoints;
  double speed_kmph = 40.0;

  MobilityPath path() const {
    return MobilityPath{waypoints, speed_kmph * 1000.0 / 3600.0};
  }
};

struct TrafficConfig {
  int packet_count = 10000;
  double interval_ms = 10.0;
  double reply_timeout_ms = 500.0;
  std::string payload = "echo";
  double p_data = 0.0;  // data-plane air loss probability

  SimTime interval_us() const { return ms_f(interval_ms); }
  SimTime reply_timeout_us() const { return ms_f(reply_timeout_ms); }
};

struct Config {
  std::uint64_t seed = 1;
  TopologyConfig topology;
  PropagationParams propagation;
  DelayConfig delays;
  HandoffConfig handoff;
  MobilityConfig mobility;
  TrafficConfig traffic;

  // Fully-resolved view of the configuration (defaults applied); echoed into
  // every run report.
  nlohmann::json echo() const;
};

// The bundled default scenario: a 600 m straight road, edge APs A (x=150 m)
// and B (x=450 m) 10 m off-road, core AP C relaying to the gateway, and the
// vehicle shuttling through the A/B overlap at 40 kmph.
Config default_config();

// Parses and validates a config. Unknown keys are errors naming the key;
// omitted parameters take defaults. Validates topology connectivity.
Config load_config_json(const nlohmann::json& j);
Config load_config_text(const std::string& text);
Config load_config_file(const std::string& path);

}  // namespace handoff

#endif
