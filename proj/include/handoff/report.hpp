// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_REPORT_HPP
#define HANDOFF_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "handoff/runner.hpp"
#include "handoff/stats.hpp"
#include "handoff/time.hpp"

namespace handoff {

// Condensed per-run report: what the CSV/JSON outputs carry.
struct RunReport {
  int run_id = 0;
  std::uint64_t seed = 0;
  std::string scheme;
  std::vector<SimTime> latencies_us;  // completed handoffs only
  int handoffs_completed = 0;
  int handoffs_abandoned = 0;
  long long sent = 0;
  long long received_in_time = 0;
  std::map<std::string, int> loss_reasons;
  nlohmann::json config;

  long long lost() const { return sent - received_in_time; }
  bool operator==(const RunReport&) const = default;
};

RunReport make_report(const RunResult& result);

struct BatchSummary {
  std::size_t runs = 0;
  int handoffs = 0;
  LatencyStats latency;
  long long sent = 0;
  long long lost = 0;
  double mean_loss_per_10k = 0.0;
  double overlap_at_40kmph_m = 0.0;   // using the mean latency
  double overlap_at_100kmph_m = 0.0;
};

BatchSummary summarize(const std::vector<RunReport>& reports);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
nlohmann::json batch_to_json(const std::vector<RunReport>& reports,
                             const BatchSummary& summary);

// CSV: `run,seed,scheme,handoffs,mean_latency_ms,max_latency_ms,lost,sent,per_10k`
// one row per run plus a trailing summary row. Byte-stable for fixed input.
std::string batch_to_csv(const std::vector<RunReport>& reports,
                         const BatchSummary& summary);

// Plot-ready series: per-run loss and per-handoff latency.
std::string loss_series_csv(const std::vector<RunReport>& reports);
std::string latency_series_csv(const std::vector<RunReport>& reports);

// Throws std::runtime_error naming the path on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace handoff

#endif
