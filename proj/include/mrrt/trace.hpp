#ifndef MRRT_TRACE_HPP
#define MRRT_TRACE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mrrt/forest.hpp"
#include "mrrt/geometry.hpp"
#include "mrrt/planner.hpp"

namespace mrrt {

enum class EventKind { replan, prune, goal, collision, timeout };

const char* event_kind_name(EventKind k);
std::optional<EventKind> parse_event_kind(const std::string& name);

/// One record per simulation step. Beyond the robot state and replan stats,
/// each event carries the planner's known obstacle snapshot, the ground
/// truth obstacle positions, and the forest mutations of the cycle, so a
/// trace alone is enough to re-draw the search forest and to re-check
/// safety and pruning decisions offline.
struct TraceEvent {
  int step = 0;
  double time = 0.0;
  Config robot;
  EventKind kind = EventKind::replan;
  std::vector<Disc> obstacles_known;
  std::vector<Disc> obstacles_true;
  ReplanStats stats;
  std::optional<Path> path;
  bool forest_reset = false;
  std::vector<ForestJournal::NodeAdd> nodes_added;
  std::vector<std::pair<NodeId, NodeId>> edges_added;
  std::vector<std::pair<NodeId, NodeId>> edges_removed;
};

/// Episode header written as the first trace line.
struct TraceMeta {
  Workspace workspace{0.0, 0.0, 1.0, 1.0};
  Config start;
  Config goal;
  double robot_radius = 0.0;
  double inflation = 0.0;
  double dt = 0.1;
  std::string variant;
  std::uint64_t seed = 0;
};

struct TraceFile {
  TraceMeta meta;
  std::vector<TraceEvent> events;
};

struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One JSON record per line: the meta header first, then one line per
/// event. Replan wall times are written as zero unless include_timing is
/// set, keeping trace files byte-identical across runs of the same seed.
void write_trace(const std::string& path, const TraceMeta& meta,
                 const std::vector<TraceEvent>& events,
                 bool include_timing = false);

/// Throws TraceError naming the offending line on corrupt records.
TraceFile read_trace(const std::string& path);

}  // namespace mrrt

#endif  // MRRT_TRACE_HPP
