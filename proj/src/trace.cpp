#include "mrrt/trace.hpp"

#include <fstream>

#include "json.hpp"

namespace mrrt {

using nlohmann::json;

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::replan: return "replan";
    case EventKind::prune: return "prune";
    case EventKind::goal: return "goal";
    case EventKind::collision: return "collision";
    case EventKind::timeout: return "timeout";
  }
  return "replan";
}

std::optional<EventKind> parse_event_kind(const std::string& name) {
  if (name == "replan") return EventKind::replan;
  if (name == "prune") return EventKind::prune;
  if (name == "goal") return EventKind::goal;
  if (name == "collision") return EventKind::collision;
  if (name == "timeout") return EventKind::timeout;
  return std::nullopt;
}

namespace {

json config_to_json(const Config& c) { return json::array({c.x, c.y}); }

Config config_from_json(const json& j) {
  return Config{j.at(0).get<double>(), j.at(1).get<double>()};
}

json discs_to_json(const std::vector<Disc>& discs) {
  json arr = json::array();
  for (const Disc& d : discs)
    arr.push_back(json::array({d.center.x, d.center.y, d.radius}));
  return arr;
}

std::vector<Disc> discs_from_json(const json& j) {
  std::vector<Disc> out;
  for (const auto& e : j)
    out.push_back(Disc{{e.at(0).get<double>(), e.at(1).get<double>()},
                       e.at(2).get<double>()});
  return out;
}

json edges_to_json(const std::vector<std::pair<NodeId, NodeId>>& edges) {
  json arr = json::array();
  for (const auto& [a, b] : edges) arr.push_back(json::array({a, b}));
  return arr;
}

std::vector<std::pair<NodeId, NodeId>> edges_from_json(const json& j) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& e : j)
    out.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
  return out;
}

json event_to_json(const TraceEvent& ev, bool include_timing) {
  json j;
  j["step"] = ev.step;
  j["time"] = ev.time;
  j["robot"] = config_to_json(ev.robot);
  j["kind"] = event_kind_name(ev.kind);
  j["obstacles_known"] = discs_to_json(ev.obstacles_known);
  j["obstacles_true"] = discs_to_json(ev.obstacles_true);
  j["stats"] = {{"samples_drawn", ev.stats.samples_drawn},
                {"edges_pruned", ev.stats.edges_pruned},
                {"trees_before", ev.stats.trees_before},
                {"trees_after", ev.stats.trees_after},
                {"connect_attempts", ev.stats.connect_attempts},
                {"elapsed", include_timing ? ev.stats.elapsed : 0.0}};
  if (ev.path) {
    json pts = json::array();
    for (const Config& c : ev.path->points) pts.push_back(config_to_json(c));
    j["path"] = pts;
  } else {
    j["path"] = nullptr;
  }
  json nodes = json::array();
  for (const auto& n : ev.nodes_added)
    nodes.push_back(json::array({n.id, n.config.x, n.config.y}));
  j["forest"] = {{"reset", ev.forest_reset},
                 {"nodes_added", std::move(nodes)},
                 {"edges_added", edges_to_json(ev.edges_added)},
                 {"edges_removed", edges_to_json(ev.edges_removed)}};
  return j;
}

TraceEvent event_from_json(const json& j) {
  TraceEvent ev;
  ev.step = j.at("step").get<int>();
  ev.time = j.at("time").get<double>();
  ev.robot = config_from_json(j.at("robot"));
  const auto kind = parse_event_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("unknown event kind");
  ev.kind = *kind;
  ev.obstacles_known = discs_from_json(j.at("obstacles_known"));
  ev.obstacles_true = discs_from_json(j.at("obstacles_true"));
  const json& s = j.at("stats");
  ev.stats.samples_drawn = s.at("samples_drawn").get<int>();
  ev.stats.edges_pruned = s.at("edges_pruned").get<std::size_t>();
  ev.stats.trees_before = s.at("trees_before").get<std::size_t>();
  ev.stats.trees_after = s.at("trees_after").get<std::size_t>();
  ev.stats.connect_attempts = s.at("connect_attempts").get<int>();
  ev.stats.elapsed = s.at("elapsed").get<double>();
  if (!j.at("path").is_null()) {
    Path p;
    for (const auto& pt : j.at("path")) p.points.push_back(config_from_json(pt));
    for (std::size_t i = 0; i + 1 < p.points.size(); ++i)
      p.total_length += dist(p.points[i], p.points[i + 1]);
    ev.path = std::move(p);
  }
  const json& f = j.at("forest");
  ev.forest_reset = f.at("reset").get<bool>();
  for (const auto& n : f.at("nodes_added"))
    ev.nodes_added.push_back({n.at(0).get<NodeId>(),
                              {n.at(1).get<double>(), n.at(2).get<double>()}});
  ev.edges_added = edges_from_json(f.at("edges_added"));
  ev.edges_removed = edges_from_json(f.at("edges_removed"));
  return ev;
}

json meta_to_json(const TraceMeta& m) {
  return {{"meta",
           {{"workspace",
             {{"min_x", m.workspace.min_x},
              {"min_y", m.workspace.min_y},
              {"max_x", m.workspace.max_x},
              {"max_y", m.workspace.max_y}}},
            {"start", config_to_json(m.start)},
            {"goal", config_to_json(m.goal)},
            {"robot_radius", m.robot_radius},
            {"inflation", m.inflation},
            {"dt", m.dt},
            {"variant", m.variant},
            {"seed", m.seed}}}};
}

TraceMeta meta_from_json(const json& j) {
  const json& m = j.at("meta");
  const json& w = m.at("workspace");
  TraceMeta out;
  out.workspace =
      Workspace(w.at("min_x").get<double>(), w.at("min_y").get<double>(),
                w.at("max_x").get<double>(), w.at("max_y").get<double>());
  out.start = config_from_json(m.at("start"));
  out.goal = config_from_json(m.at("goal"));
  out.robot_radius = m.at("robot_radius").get<double>();
  out.inflation = m.at("inflation").get<double>();
  out.dt = m.at("dt").get<double>();
  out.variant = m.at("variant").get<std::string>();
  out.seed = m.at("seed").get<std::uint64_t>();
  return out;
}

}  // namespace

void write_trace(const std::string& path, const TraceMeta& meta,
                 const std::vector<TraceEvent>& events, bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TraceError("trace: cannot open for writing: " + path);
  out << meta_to_json(meta).dump() << '\n';
  for (const TraceEvent& ev : events)
    out << event_to_json(ev, include_timing).dump() << '\n';
}

TraceFile read_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("trace: cannot open: " + path);
  TraceFile out;
  std::string line;
  int lineno = 0;
  bool have_meta = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_meta) {
        out.meta = meta_from_json(j);
        have_meta = true;
      } else {
        out.events.push_back(event_from_json(j));
      }
    } catch (const std::exception& e) {
      throw TraceError("trace: corrupt record at line " +
                       std::to_string(lineno) + ": " + e.what());
    }
  }
  // A file with no records at all is a valid empty trace.
  return out;
}

}  // namespace mrrt
