// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_RUNNER_HPP
#define HANDOFF_RUNNER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "handoff/agents.hpp"
#include "handoff/config.hpp"
#include "handoff/time.hpp"

namespace handoff {

enum class Scheme { DualRadio, SingleRadioBaseline };

const char* scheme_name(Scheme s);

struct EchoRecord {
  int seq = 0;
  SimTime t_sent = 0;
  std::optional<SimTime> t_replied;
  std::string drop_reason;  // set for packets lost or late
};

// Raw output of one simulation run; the metrics module condenses this into a
// RunReport.
struct RunResult {
  int run_id = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::DualRadio;
  nlohmann::json config_echo;
  std::vector<HandoffRecord> handoffs;
  std::vector<EchoRecord> echoes;  // indexed 1..packet_count
  long long sent = 0;
  long long received_in_time = 0;
  std::map<std::string, int> loss_reasons;
  std::vector<std::string> invariant_violations;
  std::vector<std::string> trace;  // one line per control message sent
  double wall_seconds = 0.0;

  int handoffs_completed() const;
  int handoffs_abandoned() const;
  std::vector<SimTime> latencies_us() const;
};

// Builds the network from config, drives mobility, echo traffic, and the
// chosen handoff scheme, then runs a drain window so every commitment
// resolves before the ledgers are checked.
RunResult run_scenario(const Config& cfg, Scheme scheme, std::uint64_t seed,
                       int run_id = 0);

// Seeds seed+0 .. seed+runs-1, one RunResult per seed.
std::vector<RunResult> run_batch(const Config& cfg, Scheme scheme,
                                 std::uint64_t base_seed, int runs);

}  // namespace handoff

#endif
