#ifndef MRRT_BENCH_HPP
#define MRRT_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mrrt/simworld.hpp"

namespace mrrt {

/// Aggregates for one (scenario, variant) pair, pooled across seeds.
struct BenchRow {
  std::string scenario;
  std::string variant;
  std::vector<std::uint64_t> seeds;
  int episodes = 0;
  int reached = 0;
  int collided = 0;
  int timed_out = 0;
  int errored = 0;
  double success_rate = 0.0;
  double median_replan_ms = 0.0;
  double p90_replan_ms = 0.0;
  double median_samples_per_cycle = 0.0;
  double mean_path_length = 0.0;  // mean distance traveled, reached episodes
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

/// Paired-seed comparison: for each scenario, every variant runs the same
/// seed list against identical obstacle trajectories and sensor streams.
/// When seeds_override is empty the scenario's own seed list is used.
/// Episodes are independent and run on `jobs` threads (0 = hardware
/// concurrency); aggregation order is fixed regardless of jobs.
BenchReport run_bench(const std::vector<Scenario>& scenarios,
                      const std::vector<Variant>& variants,
                      const std::vector<std::uint64_t>& seeds_override,
                      int jobs = 0);

std::string bench_report_to_json_text(const BenchReport& report);
void save_bench_report(const BenchReport& report, const std::string& path);

double median_of(std::vector<double> values);
double percentile_of(std::vector<double> values, double fraction);

}  // namespace mrrt

#endif  // MRRT_BENCH_HPP
