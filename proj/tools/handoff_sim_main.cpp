// SPDX-License-Identifier: Apache-2.0
//
// handoff-sim: runs dual-radio / baseline handoff scenarios and reports
// loss, latency, and the AP-overlap requirement.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "handoff/config.hpp"
#include "handoff/engine.hpp"
#include "handoff/report.hpp"
#include "handoff/runner.hpp"
#include "handoff/stats.hpp"

namespace {

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                int runs, const std::string& scheme_arg,
                std::optional<double> speed_kmph, const std::string& out_dir,
                const std::string& format, bool trace) {
  handoff::Config cfg = handoff::load_config_file(config_path);
  if (seed) cfg.seed = *seed;
  if (speed_kmph) cfg.mobility.speed_kmph = *speed_kmph;

  handoff::Scheme scheme = handoff::Scheme::DualRadio;
  if (scheme_arg == "baseline") {
    scheme = handoff::Scheme::SingleRadioBaseline;
  } else if (scheme_arg != "dual") {
    throw handoff::ConfigError("config: --scheme must be dual or baseline");
  }

  std::vector<handoff::RunReport> reports;
  std::vector<handoff::RunResult> results = handoff::run_batch(cfg, scheme, cfg.seed, runs);
  for (const auto& res : results) reports.push_back(handoff::make_report(res));
  const handoff::BatchSummary summary = handoff::summarize(reports);

  for (const auto& r : reports) {
    const auto ls = handoff::latency_stats(r.latencies_us);
    char mean[32] = "-";
    if (ls.count) std::snprintf(mean, sizeof(mean), "%.3f", ls.mean_ms);
    std::printf("run %d seed %llu [%s]: %d handoffs, mean latency %s ms, lost %lld/%lld\n",
                r.run_id, (unsigned long long)r.seed, r.scheme.c_str(),
                r.handoffs_completed, mean, r.lost(), r.sent);
  }
  if (summary.latency.count > 0) {
    std::printf("summary: %d handoffs, latency mean %.3f ms (min %.3f, max %.3f), "
                "loss %.1f per 10k, overlap @100 kmph %.3f m\n",
                summary.handoffs, summary.latency.mean_ms, summary.latency.min_ms,
                summary.latency.max_ms, summary.mean_loss_per_10k,
                summary.overlap_at_100kmph_m);
  } else {
    std::printf("summary: no completed handoffs, loss %.1f per 10k\n",
                summary.mean_loss_per_10k);
  }

  for (const auto& res : results) {
    if (!res.invariant_violations.empty()) {
      std::fprintf(stderr, "run %d: %zu invariant violations (first: %s)\n",
                   res.run_id, res.invariant_violations.size(),
                   res.invariant_violations.front().c_str());
    }
  }

  if (!out_dir.empty()) {
    const std::string base = out_dir + "/";
    if (format == "csv") {
      handoff::write_file(base + "report.csv",
                          handoff::batch_to_csv(reports, summary));
    } else {
      handoff::write_file(base + "report.json",
                          handoff::batch_to_json(reports, summary).dump(2) + "\n");
    }
    handoff::write_file(base + "loss_series.csv",
                        handoff::loss_series_csv(reports));
    handoff::write_file(base + "latency_series.csv",
                        handoff::latency_series_csv(reports));
    if (trace) {
      for (const auto& res : results) {
        std::string text;
        for (const auto& line : res.trace) text += line + "\n";
        handoff::write_file(base + "trace_run" + std::to_string(res.run_id) +
                                "_seed" + std::to_string(res.seed) + ".log",
                            text);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-radio cross-layer handoff simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  int runs = 1;
  std::string scheme = "dual";
  std::optional<double> speed;
  std::string out_dir;
  std::string format = "csv";
  bool trace = false;

  CLI::App* run = app.add_subcommand("run", "Run one or more simulations");
  run->add_option("--config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--seed", seed, "Base RNG seed (overrides config)");
  run->add_option("--runs", runs, "Run count; seeds are seed+0..K-1")
      ->check(CLI::PositiveNumber);
  run->add_option("--scheme", scheme, "dual | baseline");
  run->add_option("--speed-kmph", speed, "Override vehicle speed");
  run->add_option("--out", out_dir, "Output directory for reports");
  run->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--trace", trace, "Write per-message trace logs (needs --out)");

  double ov_speed = 0.0;
  double ov_latency = 0.0;
  CLI::App* overlap = app.add_subcommand("overlap", "AP overlap requirement");
  overlap->add_option("--speed-kmph", ov_speed, "Vehicle speed")->required();
  overlap->add_option("--latency-ms", ov_latency, "Handoff latency")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      return run_command(config_path, seed, runs, scheme, speed, out_dir, format,
                         trace);
    }
    std::printf("%.3f\n", handoff::overlap_required_m(ov_speed, ov_latency));
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const handoff::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const handoff::EngineFault& e) {
    std::fprintf(stderr, "simulation fault: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
