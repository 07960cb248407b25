#ifndef MRRT_SPATIAL_INDEX_HPP
#define MRRT_SPATIAL_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mrrt/geometry.hpp"

namespace mrrt {

using NodeId = std::uint32_t;
inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

/// Dynamic point index over forest nodes: a bucketed uniform grid sized for
/// steer-step-scale queries. Supports insert, nearest and radius queries;
/// there is no deletion, ineligible nodes are excluded by the query-time
/// filter. Ties are broken by smallest node id so query results are
/// reproducible.
class GridIndex {
 public:
  explicit GridIndex(double cell_size) : cell_(cell_size) {
    if (!(cell_size > 0.0))
      throw std::invalid_argument("grid index: cell size must be positive");
  }

  /// Throws std::invalid_argument when the id is already present.
  void insert(NodeId id, const Config& pos) {
    if (id < present_.size() && present_[id])
      throw std::invalid_argument("grid index: duplicate node id");
    if (id >= present_.size()) present_.resize(id + 1, false);
    present_[id] = true;
    const std::int32_t cx = cell_coord(pos.x);
    const std::int32_t cy = cell_coord(pos.y);
    cells_[pack(cx, cy)].push_back(Entry{id, pos});
    if (count_ == 0) {
      min_cx_ = max_cx_ = cx;
      min_cy_ = max_cy_ = cy;
    } else {
      min_cx_ = std::min(min_cx_, cx);
      max_cx_ = std::max(max_cx_, cx);
      min_cy_ = std::min(min_cy_, cy);
      max_cy_ = std::max(max_cy_, cy);
    }
    ++count_;
  }

  std::size_t size() const { return count_; }

  /// Entry minimizing distance to q among entries passing the filter;
  /// equidistant candidates resolve to the smallest id.
  template <typename Filter>
  std::optional<NodeId> nearest(const Config& q, Filter&& pass) const {
    if (count_ == 0) return std::nullopt;
    const std::int32_t qx = cell_coord(q.x);
    const std::int32_t qy = cell_coord(q.y);

    NodeId best_id = kInvalidNode;
    double best_d2 = std::numeric_limits<double>::infinity();

    // Expanding rings of cells around q. Any entry in a ring at Chebyshev
    // distance k lies at least (k-1)*cell from q, which bounds the search.
    const std::int32_t max_ring =
        std::max({ring_of(qx, min_cx_, max_cx_), ring_of(qy, min_cy_, max_cy_),
                  std::int32_t{0}});
    for (std::int32_t k = 0; k <= max_ring; ++k) {
      if (best_id != kInvalidNode) {
        const double ring_min = (k - 1) * cell_;
        if (ring_min > 0.0 && ring_min * ring_min > best_d2) break;
      }
      visit_ring(qx, qy, k, [&](const std::vector<Entry>& bucket) {
        for (const Entry& e : bucket) {
          if (!pass(e.id)) continue;
          const double d2 = dist_sq(q, e.pos);
          if (d2 < best_d2 || (d2 == best_d2 && e.id < best_id)) {
            best_d2 = d2;
            best_id = e.id;
          }
        }
      });
    }
    if (best_id == kInvalidNode) return std::nullopt;
    return best_id;
  }

  std::optional<NodeId> nearest(const Config& q) const {
    return nearest(q, [](NodeId) { return true; });
  }

  /// Entries within the closed ball of radius r around q, passing the
  /// filter, sorted by (distance, id).
  template <typename Filter>
  std::vector<NodeId> within_radius(const Config& q, double r,
                                    Filter&& pass) const {
    std::vector<NodeId> out;
    if (count_ == 0 || r < 0.0) return out;
    const double r2 = r * r;
    std::vector<std::pair<double, NodeId>> hits;
    const std::int32_t x_lo = clamp_cell((q.x - r) / cell_, min_cx_, max_cx_);
    const std::int32_t x_hi = clamp_cell((q.x + r) / cell_, min_cx_, max_cx_);
    const std::int32_t y_lo = clamp_cell((q.y - r) / cell_, min_cy_, max_cy_);
    const std::int32_t y_hi = clamp_cell((q.y + r) / cell_, min_cy_, max_cy_);
    for (std::int32_t cx = x_lo; cx <= x_hi; ++cx) {
      for (std::int32_t cy = y_lo; cy <= y_hi; ++cy) {
        const auto it = cells_.find(pack(cx, cy));
        if (it == cells_.end()) continue;
        for (const Entry& e : it->second) {
          const double d2 = dist_sq(q, e.pos);
          if (d2 <= r2 && pass(e.id)) hits.emplace_back(d2, e.id);
        }
      }
    }
    std::sort(hits.begin(), hits.end());
    out.reserve(hits.size());
    for (const auto& [d2, id] : hits) out.push_back(id);
    return out;
  }

  std::vector<NodeId> within_radius(const Config& q, double r) const {
    return within_radius(q, r, [](NodeId) { return true; });
  }

 private:
  struct Entry {
    NodeId id;
    Config pos;
  };

  std::int32_t cell_coord(double v) const {
    return static_cast<std::int32_t>(std::floor(v / cell_));
  }

  // Clamp a (possibly infinite) fractional cell coordinate into the occupied
  // range before converting, so that r = infinity is well defined.
  static std::int32_t clamp_cell(double t, std::int32_t lo, std::int32_t hi) {
    if (!(t > static_cast<double>(lo))) return lo;
    if (!(t < static_cast<double>(hi))) return hi;
    return static_cast<std::int32_t>(std::floor(t));
  }

  static std::int32_t ring_of(std::int32_t c, std::int32_t lo, std::int32_t hi) {
    return std::max(std::abs(c - lo), std::abs(c - hi));
  }

  static std::uint64_t pack(std::int32_t cx, std::int32_t cy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint32_t>(cy);
  }

  template <typename Visit>
  void visit_ring(std::int32_t qx, std::int32_t qy, std::int32_t k,
                  Visit&& visit) const {
    const auto try_cell = [&](std::int32_t cx, std::int32_t cy) {
      if (cx < min_cx_ || cx > max_cx_ || cy < min_cy_ || cy > max_cy_) return;
      const auto it = cells_.find(pack(cx, cy));
      if (it != cells_.end()) visit(it->second);
    };
    if (k == 0) {
      try_cell(qx, qy);
      return;
    }
    for (std::int32_t d = -k; d <= k; ++d) {
      try_cell(qx + d, qy - k);
      try_cell(qx + d, qy + k);
    }
    for (std::int32_t d = -k + 1; d <= k - 1; ++d) {
      try_cell(qx - k, qy + d);
      try_cell(qx + k, qy + d);
    }
  }

  double cell_;
  std::size_t count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Entry>> cells_;
  std::vector<bool> present_;
  std::int32_t min_cx_ = 0, max_cx_ = 0, min_cy_ = 0, max_cy_ = 0;
};

}  // namespace mrrt

#endif  // MRRT_SPATIAL_INDEX_HPP
