#include "mrrt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "json.hpp"

namespace mrrt {

using nlohmann::json;

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double percentile_of(std::vector<double> values, double fraction) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(values.size() - 1)));
  return values[idx];
}

namespace {

/// Per-episode reduction; full traces are dropped to keep memory flat.
struct EpisodeSummary {
  bool errored = false;
  EpisodeStatus status = EpisodeStatus::timeout;
  double distance = 0.0;
  std::vector<double> cycle_elapsed;
  std::vector<double> cycle_samples;
};

EpisodeSummary summarize(const Scenario& scenario, Variant variant,
                         std::uint64_t seed) {
  EpisodeSummary s;
  try {
    const EpisodeResult r = run_episode(scenario, variant, seed);
    s.status = r.status;
    s.distance = r.distance_traveled;
    s.cycle_elapsed.reserve(r.cycle_stats.size());
    s.cycle_samples.reserve(r.cycle_stats.size());
    for (const ReplanStats& st : r.cycle_stats) {
      s.cycle_elapsed.push_back(st.elapsed);
      s.cycle_samples.push_back(static_cast<double>(st.samples_drawn));
    }
  } catch (const std::exception&) {
    s.errored = true;
  }
  return s;
}

}  // namespace

BenchReport run_bench(const std::vector<Scenario>& scenarios,
                      const std::vector<Variant>& variants,
                      const std::vector<std::uint64_t>& seeds_override,
                      int jobs) {
  struct Job {
    std::size_t scenario_idx;
    std::size_t variant_idx;
    std::uint64_t seed;
  };
  std::vector<Job> queue;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const std::vector<std::uint64_t>& seeds =
        seeds_override.empty() ? scenarios[si].seeds : seeds_override;
    for (std::size_t vi = 0; vi < variants.size(); ++vi)
      for (std::uint64_t seed : seeds) queue.push_back({si, vi, seed});
  }

  std::vector<EpisodeSummary> results(queue.size());
  unsigned int workers = jobs > 0 ? static_cast<unsigned int>(jobs)
                                  : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned int>(
                             workers, static_cast<unsigned int>(queue.size())));
  if (workers <= 1 || queue.size() <= 1) {
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Job& job = queue[i];
      results[i] = summarize(scenarios[job.scenario_idx],
                             variants[job.variant_idx], job.seed);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= queue.size()) return;
          const Job& job = queue[i];
          results[i] = summarize(scenarios[job.scenario_idx],
                                 variants[job.variant_idx], job.seed);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  BenchReport report;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const std::vector<std::uint64_t>& seeds =
        seeds_override.empty() ? scenarios[si].seeds : seeds_override;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      BenchRow row;
      row.scenario = scenarios[si].name;
      row.variant = variant_name(variants[vi]);
      row.seeds = seeds;
      std::vector<double> elapsed_ms;
      std::vector<double> samples;
      std::vector<double> reached_lengths;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        if (queue[qi].scenario_idx != si || queue[qi].variant_idx != vi)
          continue;
        const EpisodeSummary& s = results[qi];
        ++row.episodes;
        if (s.errored) {
          ++row.errored;
          continue;
        }
        switch (s.status) {
          case EpisodeStatus::reached_goal:
            ++row.reached;
            reached_lengths.push_back(s.distance);
            break;
          case EpisodeStatus::collided:
            ++row.collided;
            break;
          case EpisodeStatus::timeout:
            ++row.timed_out;
            break;
        }
        for (double e : s.cycle_elapsed) elapsed_ms.push_back(e * 1000.0);
        samples.insert(samples.end(), s.cycle_samples.begin(),
                       s.cycle_samples.end());
      }
      row.success_rate =
          row.episodes > 0
              ? static_cast<double>(row.reached) / row.episodes
              : 0.0;
      row.median_replan_ms = median_of(elapsed_ms);
      row.p90_replan_ms = percentile_of(elapsed_ms, 0.9);
      row.median_samples_per_cycle = median_of(samples);
      if (!reached_lengths.empty()) {
        double sum = 0.0;
        for (double v : reached_lengths) sum += v;
        row.mean_path_length = sum / static_cast<double>(reached_lengths.size());
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string bench_report_to_json_text(const BenchReport& report) {
  json rows = json::array();
  for (const BenchRow& r : report.rows) {
    rows.push_back({{"scenario", r.scenario},
                    {"variant", r.variant},
                    {"seeds", r.seeds},
                    {"episodes", r.episodes},
                    {"reached", r.reached},
                    {"collided", r.collided},
                    {"timed_out", r.timed_out},
                    {"errored", r.errored},
                    {"success_rate", r.success_rate},
                    {"median_replan_ms", r.median_replan_ms},
                    {"p90_replan_ms", r.p90_replan_ms},
                    {"median_samples_per_cycle", r.median_samples_per_cycle},
                    {"mean_path_length", r.mean_path_length}});
  }
  return json{{"results", std::move(rows)}}.dump(2) + "\n";
}

void save_bench_report(const BenchReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("bench: cannot open for writing: " + path);
  out << bench_report_to_json_text(report);
}

}  // namespace mrrt
