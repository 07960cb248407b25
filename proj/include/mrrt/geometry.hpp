#ifndef MRRT_GEOMETRY_HPP
#define MRRT_GEOMETRY_HPP

#include <cstdint>
#include <random>

namespace mrrt {

/// A robot configuration: a point in the 2D workspace.
struct Config {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Config& a, const Config& b) {
  return a.x == b.x && a.y == b.y;
}
inline bool operator!=(const Config& a, const Config& b) { return !(a == b); }

/// Axis-aligned planning region. Invariant: max_x > min_x, max_y > min_y.
struct Workspace {
  double min_x, min_y, max_x, max_y;

  Workspace(double min_x, double min_y, double max_x, double max_y);

  bool contains(const Config& c) const {
    return c.x >= min_x && c.x <= max_x && c.y >= min_y && c.y <= max_y;
  }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const;
};

/// Circular obstacle region. radius must be positive.
struct Disc {
  Config center;
  double radius = 1.0;
};

double dist(const Config& a, const Config& b);
double dist_sq(const Config& a, const Config& b);

/// Point at most `eta` from `from` along the segment from->toward.
/// Returns `toward` itself when it is within reach.
/// Throws std::invalid_argument on from == toward or eta <= 0.
Config steer(const Config& from, const Config& toward, double eta);

/// Closed-disc membership, with the disc grown by `inflation`.
bool point_in_disc(const Config& p, const Disc& d, double inflation);

/// Minimum distance from `p` to the closed segment ab.
double point_segment_dist(const Config& p, const Config& a, const Config& b);

/// True iff the closed segment ab touches the disc grown by `inflation`.
/// Degenerate segments (a == b) reduce to the point test.
bool segment_disc_collides(const Config& a, const Config& b, const Disc& d,
                           double inflation);

/// Seeded random stream with a fixed uint64 -> double mapping, so sample
/// sequences are identical across platforms and standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  bool chance(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform sample over the workspace rectangle; draws x then y.
Config sample_uniform(const Workspace& w, RandomStream& rng);

}  // namespace mrrt

#endif  // MRRT_GEOMETRY_HPP
