// SPDX-License-Identifier: Apache-2.0
#include "handoff/report.hpp"

#include <cstdio>
#include <fstream>

namespace handoff {

using nlohmann::json;

namespace {

std::string fmt_ms(double ms_value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms_value);
  return buf;
}

std::string fmt_per_10k(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

RunReport make_report(const RunResult& result) {
  RunReport r;
  r.run_id = result.run_id;
  r.seed = result.seed;
  r.scheme = scheme_name(result.scheme);
  r.latencies_us = result.latencies_us();
  r.handoffs_completed = result.handoffs_completed();
  r.handoffs_abandoned = result.handoffs_abandoned();
  r.sent = result.sent;
  r.received_in_time = result.received_in_time;
  r.loss_reasons = result.loss_reasons;
  r.config = result.config_echo;
  return r;
}

BatchSummary summarize(const std::vector<RunReport>& reports) {
  BatchSummary s;
  s.runs = reports.size();
  std::vector<SimTime> all;
  for (const RunReport& r : reports) {
    s.handoffs += r.handoffs_completed;
    s.sent += r.sent;
    s.lost += r.lost();
    all.insert(all.end(), r.latencies_us.begin(), r.latencies_us.end());
  }
  s.latency = latency_stats(all);
  if (s.sent > 0) {
    s.mean_loss_per_10k =
        static_cast<double>(s.lost) * 10000.0 / static_cast<double>(s.sent);
  }
  if (s.latency.count > 0) {
    s.overlap_at_40kmph_m = overlap_required_m(40.0, s.latency.mean_ms);
    s.overlap_at_100kmph_m = overlap_required_m(100.0, s.latency.mean_ms);
  }
  return s;
}

json report_to_json(const RunReport& report) {
  return json{{"run", report.run_id},
              {"seed", report.seed},
              {"scheme", report.scheme},
              {"latencies_us", report.latencies_us},
              {"handoffs_completed", report.handoffs_completed},
              {"handoffs_abandoned", report.handoffs_abandoned},
              {"sent", report.sent},
              {"received_in_time", report.received_in_time},
              {"losses",
               {{"count", report.lost()}, {"reasons", report.loss_reasons}}},
              {"config", report.config}};
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.run_id = j.at("run").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.scheme = j.at("scheme").get<std::string>();
  r.latencies_us = j.at("latencies_us").get<std::vector<SimTime>>();
  r.handoffs_completed = j.at("handoffs_completed").get<int>();
  r.handoffs_abandoned = j.at("handoffs_abandoned").get<int>();
  r.sent = j.at("sent").get<long long>();
  r.received_in_time = j.at("received_in_time").get<long long>();
  r.loss_reasons =
      j.at("losses").at("reasons").get<std::map<std::string, int>>();
  r.config = j.at("config");
  return r;
}

json batch_to_json(const std::vector<RunReport>& reports,
                   const BatchSummary& summary) {
  json runs = json::array();
  for (const RunReport& r : reports) runs.push_back(report_to_json(r));
  json s{{"runs", summary.runs},
         {"handoffs", summary.handoffs},
         {"sent", summary.sent},
         {"lost", summary.lost},
         {"mean_loss_per_10k", summary.mean_loss_per_10k}};
  if (summary.latency.count > 0) {
    s["latency_ms"] = {{"mean", summary.latency.mean_ms},
                       {"min", summary.latency.min_ms},
                       {"max", summary.latency.max_ms}};
    s["overlap_required_m"] = {{"at_40_kmph", summary.overlap_at_40kmph_m},
                               {"at_100_kmph", summary.overlap_at_100kmph_m}};
  }
  return json{{"runs", std::move(runs)}, {"summary", std::move(s)}};
}

std::string batch_to_csv(const std::vector<RunReport>& reports,
                         const BatchSummary& summary) {
  std::string out =
      "run,seed,scheme,handoffs,mean_latency_ms,max_latency_ms,lost,sent,per_10k\n";
  for (const RunReport& r : reports) {
    const LatencyStats ls = latency_stats(r.latencies_us);
    const LossStats loss = loss_stats(r.sent, r.received_in_time);
    out += std::to_string(r.run_id) + "," + std::to_string(r.seed) + "," +
           r.scheme + "," + std::to_string(r.handoffs_completed) + "," +
           (ls.count ? fmt_ms(ls.mean_ms) : "") + "," +
           (ls.count ? fmt_ms(ls.max_ms) : "") + "," +
           std::to_string(loss.defined ? loss.lost : 0) + "," +
           std::to_string(r.sent) + "," +
           (loss.defined ? fmt_per_10k(loss.per_10k) : "") + "\n";
  }
  out += "summary,,," + std::to_string(summary.handoffs) + "," +
         (summary.latency.count ? fmt_ms(summary.latency.mean_ms) : "") + "," +
         (summary.latency.count ? fmt_ms(summary.latency.max_ms) : "") + "," +
         std::to_string(summary.lost) + "," + std::to_string(summary.sent) + "," +
         fmt_per_10k(summary.mean_loss_per_10k) + "\n";
  return out;
}

std::string loss_series_csv(const std::vector<RunReport>& reports) {
  std::string out = "run,seed,lost,per_10k\n";
  for (const RunReport& r : reports) {
    const LossStats loss = loss_stats(r.sent, r.received_in_time);
    out += std::to_string(r.run_id) + "," + std::to_string(r.seed) + "," +
           std::to_string(loss.defined ? loss.lost : 0) + "," +
           (loss.defined ? fmt_per_10k(loss.per_10k) : "") + "\n";
  }
  return out;
}

std::string latency_series_csv(const std::vector<RunReport>& reports) {
  std::string out = "run,seed,handoff,latency_ms\n";
  for (const RunReport& r : reports) {
    int idx = 1;
    for (SimTime us_value : r.latencies_us) {
      out += std::to_string(r.run_id) + "," + std::to_string(r.seed) + "," +
             std::to_string(idx++) + "," + fmt_ms(to_ms(us_value)) + "\n";
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  out << content;
  if (!out) throw std::runtime_error("write failed for \"" + path + "\"");
}

}  // namespace handoff
