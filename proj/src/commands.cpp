#include "mrrt/commands.hpp"

#include <charconv>
#include <cstdio>
#include <exception>

#include "mrrt/bench.hpp"
#include "mrrt/scenario.hpp"
#include "mrrt/svg_render.hpp"
#include "mrrt/trace.hpp"

namespace mrrt {

namespace {

void report_error(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

bool parse_seed_spec(const std::string& spec,
                     std::vector<std::uint64_t>& seeds) {
  const auto range_pos = spec.find("..");
  if (range_pos != std::string::npos) {
    std::uint64_t lo = 0, hi = 0;
    if (!parse_u64(spec.substr(0, range_pos), lo) ||
        !parse_u64(spec.substr(range_pos + 2), hi) || hi < lo)
      return false;
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return true;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string tok =
        spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    std::uint64_t v = 0;
    if (!parse_u64(tok, v)) return false;
    seeds.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return !seeds.empty();
}

int cmd_run(const std::string& scenario_path, const std::string& variant,
            std::uint64_t seed, const std::string& out_path,
            bool include_timing) {
  const auto v = parse_variant(variant);
  if (!v) {
    report_error("unknown variant '" + variant +
                 "' (expected mrrt, scratch or main_tree)");
    return kExitUsage;
  }
  Scenario scenario;
  try {
    scenario = load_scenario(scenario_path);
  } catch (const ConfigError& e) {
    report_error(e.what());
    return kExitConfig;
  }
  EpisodeResult result;
  try {
    result = run_episode(scenario, *v, seed);
  } catch (const ConfigError& e) {
    report_error(e.what());
    return kExitConfig;
  }
  try {
    write_trace(out_path, make_trace_meta(scenario, *v, seed), result.trace,
                include_timing);
  } catch (const TraceError& e) {
    report_error(e.what());
    return kExitIo;
  }
  std::printf("%s: %s after %d steps, %.3f m traveled\n",
              scenario.name.c_str(), episode_status_name(result.status),
              result.steps, result.distance_traveled);
  switch (result.status) {
    case EpisodeStatus::reached_goal: return kExitOk;
    case EpisodeStatus::collided: return kExitCollided;
    case EpisodeStatus::timeout: return kExitTimeout;
  }
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& scenario_paths,
              const std::vector<std::string>& variant_names,
              const std::vector<std::uint64_t>& seeds,
              const std::string& out_path, int jobs) {
  if (scenario_paths.empty()) {
    report_error("bench needs at least one scenario");
    return kExitUsage;
  }
  if (variant_names.empty()) {
    report_error("bench needs at least one variant");
    return kExitUsage;
  }
  std::vector<Variant> variants;
  for (const std::string& name : variant_names) {
    const auto v = parse_variant(name);
    if (!v) {
      report_error("unknown variant '" + name +
                   "' (expected mrrt, scratch or main_tree)");
      return kExitUsage;
    }
    variants.push_back(*v);
  }
  std::vector<Scenario> scenarios;
  for (const std::string& path : scenario_paths) {
    try {
      scenarios.push_back(load_scenario(path));
    } catch (const ConfigError& e) {
      report_error(e.what());
      return kExitConfig;
    }
    if (seeds.empty() && scenarios.back().seeds.empty()) {
      report_error("scenario '" + scenarios.back().name +
                   "' declares no seeds and none were given");
      return kExitUsage;
    }
  }
  const BenchReport report = run_bench(scenarios, variants, seeds, jobs);
  try {
    save_bench_report(report, out_path);
  } catch (const std::exception& e) {
    report_error(e.what());
    return kExitIo;
  }
  for (const BenchRow& row : report.rows) {
    std::printf(
        "%-24s %-10s episodes=%-3d success=%.2f median_samples=%.1f "
        "median_replan_ms=%.4f\n",
        row.scenario.c_str(), row.variant.c_str(), row.episodes,
        row.success_rate, row.median_samples_per_cycle, row.median_replan_ms);
  }
  return kExitOk;
}

int cmd_render(const std::string& trace_path, const std::string& out_dir,
               int every) {
  if (every <= 0) {
    report_error("render: --every must be positive");
    return kExitUsage;
  }
  TraceFile trace;
  try {
    trace = read_trace(trace_path);
  } catch (const TraceError& e) {
    report_error(e.what());
    return kExitConfig;
  }
  int frames = 0;
  try {
    frames = render_trace(trace, out_dir, every);
  } catch (const std::exception& e) {
    report_error(e.what());
    return kExitIo;
  }
  std::printf("wrote %d frame(s) to %s\n", frames, out_dir.c_str());
  return kExitOk;
}

}  // namespace mrrt
