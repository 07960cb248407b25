// Command-line front end: run episodes, benchmark planner variants, and
// render traces to SVG frames.

#include <cstdint>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrrt/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"MRRT online replanning: simulator and benchmark harness"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string variant = "mrrt";
  std::uint64_t seed = 0;
  std::string out_path;
  bool timing = false;

  CLI::App* run = app.add_subcommand("run", "Run one episode, write a trace");
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--variant", variant, "mrrt | scratch | main_tree");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--out", out_path, "Trace output file")->required();
  run->add_flag("--timing", timing,
                "Record real replan wall times in the trace (makes trace "
                "files non-reproducible)");

  std::vector<std::string> bench_scenarios;
  std::string variants_csv = "mrrt,scratch,main_tree";
  std::string seeds_spec;
  std::string report_path;
  int jobs = 0;

  CLI::App* bench = app.add_subcommand("bench", "Paired-seed benchmark");
  bench->add_option("--scenario", bench_scenarios, "Scenario file(s)")
      ->required();
  bench->add_option("--variants", variants_csv,
                    "Comma-separated subset of mrrt,scratch,main_tree");
  bench->add_option("--seeds", seeds_spec,
                    "Seeds as A..B or comma list; defaults to each "
                    "scenario's seed list");
  bench->add_option("--out", report_path, "Report output file")->required();
  bench->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  std::string trace_path;
  std::string frames_dir;
  int every = 1;

  CLI::App* render = app.add_subcommand("render", "Render a trace to SVG");
  render->add_option("--trace", trace_path, "Trace file")->required();
  render->add_option("--out", frames_dir, "Output directory")->required();
  render->add_option("--every", every, "Frame every K events");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return mrrt::cmd_run(scenario_path, variant, seed, out_path, timing);

  if (bench->parsed()) {
    std::vector<std::string> variant_names;
    std::size_t pos = 0;
    while (pos <= variants_csv.size()) {
      const std::size_t comma = variants_csv.find(',', pos);
      variant_names.push_back(variants_csv.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    std::vector<std::uint64_t> seeds;
    if (!seeds_spec.empty() && !mrrt::parse_seed_spec(seeds_spec, seeds)) {
      std::fprintf(stderr, "error: bad --seeds spec '%s'\n",
                   seeds_spec.c_str());
      return mrrt::kExitUsage;
    }
    return mrrt::cmd_bench(bench_scenarios, variant_names, seeds, report_path,
                           jobs);
  }

  return mrrt::cmd_render(trace_path, frames_dir, every);
}
