#ifndef MRRT_COMMANDS_HPP
#define MRRT_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mrrt {

// Exit codes shared by the CLI and the in-process command API.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCollided = 10;
inline constexpr int kExitTimeout = 11;
inline constexpr int kExitConfig = 12;
inline constexpr int kExitUsage = 13;
inline constexpr int kExitIo = 14;

/// Run one episode and write its trace. Exit code reflects the episode
/// outcome (0 reached goal, 10 collided, 11 timeout) or the failure class.
int cmd_run(const std::string& scenario_path, const std::string& variant,
            std::uint64_t seed, const std::string& out_path,
            bool include_timing = false);

/// Paired-seed benchmark over scenarios x variants x seeds; writes a JSON
/// report. Episode failures are recorded in the report, not fatal.
int cmd_bench(const std::vector<std::string>& scenario_paths,
              const std::vector<std::string>& variant_names,
              const std::vector<std::uint64_t>& seeds,
              const std::string& out_path, int jobs = 0);

/// Render one SVG frame per `every` events of a trace file.
int cmd_render(const std::string& trace_path, const std::string& out_dir,
               int every);

/// Parse "A..B" (inclusive) or a comma-separated list into seed values.
/// Returns false on malformed input.
bool parse_seed_spec(const std::string& spec,
                     std::vector<std::uint64_t>& seeds);

}  // namespace mrrt

#endif  // MRRT_COMMANDS_HPP
