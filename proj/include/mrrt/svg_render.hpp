#ifndef MRRT_SVG_RENDER_HPP
#define MRRT_SVG_RENDER_HPP

#include <string>

#include "mrrt/trace.hpp"

namespace mrrt {

/// Write one SVG frame per `every` trace events into out_dir
/// (frame_00000.svg, frame_00001.svg, ...). Frames show the workspace,
/// ground-truth obstacles (dashed) and the planner's known map (filled),
/// forest edges colored by tree, the current path, and robot/goal markers.
/// Returns the number of frames written.
int render_trace(const TraceFile& trace, const std::string& out_dir,
                 int every);

}  // namespace mrrt

#endif  // MRRT_SVG_RENDER_HPP
