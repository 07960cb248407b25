#include "mrrt/svg_render.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace mrrt {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

struct ForestView {
  std::map<NodeId, Config> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;  // normalized (min, max)

  static std::pair<NodeId, NodeId> norm(std::pair<NodeId, NodeId> e) {
    if (e.first > e.second) std::swap(e.first, e.second);
    return e;
  }

  void apply(const TraceEvent& ev) {
    if (ev.forest_reset) {
      nodes.clear();
      edges.clear();
    }
    for (const auto& n : ev.nodes_added) nodes[n.id] = n.config;
    for (const auto& e : ev.edges_added) edges.insert(norm(e));
    for (const auto& e : ev.edges_removed) edges.erase(norm(e));
  }

  /// Component label per node: the smallest id in its component.
  std::map<NodeId, NodeId> component_labels() const {
    std::map<NodeId, NodeId> parent;
    for (const auto& [id, cfg] : nodes) parent[id] = id;
    std::function<NodeId(NodeId)> find = [&](NodeId v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (const auto& [a, b] : edges) {
      const NodeId ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<NodeId, NodeId> label;
    for (const auto& [id, cfg] : nodes) label[id] = find(id);
    return label;
  }
};

class FrameWriter {
 public:
  FrameWriter(const Workspace& w, double px_width) : w_(w) {
    scale_ = px_width / w.width();
    width_ = px_width + 2 * pad_;
    height_ = w.height() * scale_ + 2 * pad_;
  }

  double sx(double x) const { return pad_ + (x - w_.min_x) * scale_; }
  double sy(double y) const { return pad_ + (w_.max_y - y) * scale_; }
  double sr(double r) const { return r * scale_; }

  std::string header() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
       << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " "
       << height_ << "\">\n";
    os << "<rect x=\"" << sx(w_.min_x) << "\" y=\"" << sy(w_.max_y)
       << "\" width=\"" << w_.width() * scale_ << "\" height=\""
       << w_.height() * scale_
       << "\" fill=\"#fcfcfc\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    return os.str();
  }

  std::string circle(const Config& c, double r, const std::string& attrs) const {
    std::ostringstream os;
    os << "<circle cx=\"" << sx(c.x) << "\" cy=\"" << sy(c.y) << "\" r=\""
       << sr(r) << "\" " << attrs << "/>\n";
    return os.str();
  }

  std::string line(const Config& a, const Config& b,
                   const std::string& attrs) const {
    std::ostringstream os;
    os << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\""
       << sx(b.x) << "\" y2=\"" << sy(b.y) << "\" " << attrs << "/>\n";
    return os.str();
  }

 private:
  Workspace w_;
  double scale_ = 1.0;
  double width_ = 0.0;
  double height_ = 0.0;
  double pad_ = 10.0;
};

std::string render_frame(const TraceMeta& meta, const TraceEvent& ev,
                         const ForestView& forest) {
  FrameWriter fw(meta.workspace, 800.0);
  std::ostringstream os;
  os << fw.header();

  // Ground truth first (dashed outlines), then the planner's known map.
  for (const Disc& d : ev.obstacles_true)
    os << fw.circle(d.center, d.radius,
                    "fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"1\" "
                    "stroke-dasharray=\"6 4\" class=\"obstacle-true\"");
  for (const Disc& d : ev.obstacles_known)
    os << fw.circle(d.center, d.radius,
                    "fill=\"#8a8a8a\" fill-opacity=\"0.55\" stroke=\"#555\" "
                    "stroke-width=\"1\" class=\"obstacle-known\"");

  const auto labels = forest.component_labels();
  constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
  for (const auto& [a, b] : forest.edges) {
    const auto pa = forest.nodes.find(a);
    const auto pb = forest.nodes.find(b);
    if (pa == forest.nodes.end() || pb == forest.nodes.end()) continue;
    const NodeId label = labels.at(a);
    std::ostringstream attrs;
    attrs << "stroke=\"" << kPalette[label % kPaletteSize]
          << "\" stroke-width=\"1\" stroke-opacity=\"0.7\" class=\"edge\"";
    os << fw.line(pa->second, pb->second, attrs.str());
  }

  if (ev.path && ev.path->points.size() > 1) {
    os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\" "
          "stroke-opacity=\"0.9\" class=\"path\" points=\"";
    for (const Config& c : ev.path->points)
      os << fw.sx(c.x) << "," << fw.sy(c.y) << " ";
    os << "\"/>\n";
  }

  const double marker = std::max(meta.robot_radius,
                                 meta.workspace.diagonal() / 200.0);
  os << fw.circle(meta.goal, marker * 1.4,
                  "fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"3\" "
                  "class=\"goal\"");
  os << fw.circle(ev.robot, marker,
                  "fill=\"#d62728\" stroke=\"#7f0000\" stroke-width=\"1.5\" "
                  "class=\"robot\"");

  std::ostringstream caption;
  caption << "step " << ev.step << "  t=" << ev.time << "s  kind="
          << event_kind_name(ev.kind) << "  trees=" << ev.stats.trees_after
          << "  pruned=" << ev.stats.edges_pruned;
  os << "<text x=\"12\" y=\"16\" font-family=\"monospace\" font-size=\"12\">"
     << caption.str() << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace

int render_trace(const TraceFile& trace, const std::string& out_dir,
                 int every) {
  if (every <= 0) throw std::invalid_argument("render: every must be positive");
  std::filesystem::create_directories(out_dir);
  ForestView forest;
  int frames = 0;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    forest.apply(trace.events[i]);
    if (i % static_cast<std::size_t>(every) != 0) continue;
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05d.svg", frames);
    const std::filesystem::path file = std::filesystem::path(out_dir) / name;
    std::ofstream out(file, std::ios::binary);
    if (!out)
      throw std::runtime_error("render: cannot write " + file.string());
    out << render_frame(trace.meta, trace.events[i], forest);
    ++frames;
  }
  return frames;
}

}  // namespace mrrt
