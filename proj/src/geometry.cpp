#include "mrrt/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace mrrt {

Workspace::Workspace(double min_x, double min_y, double max_x, double max_y)
    : min_x(min_x), min_y(min_y), max_x(max_x), max_y(max_y) {
  if (!(max_x > min_x) || !(max_y > min_y))
    throw std::invalid_argument("workspace: max bounds must exceed min bounds");
}

double Workspace::diagonal() const { return std::hypot(width(), height()); }

double dist_sq(const Config& a, const Config& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double dist(const Config& a, const Config& b) { return std::sqrt(dist_sq(a, b)); }

Config steer(const Config& from, const Config& toward, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("steer: eta must be positive");
  if (from == toward)
    throw std::invalid_argument("steer: degenerate input, from == toward");
  const double d = dist(from, toward);
  if (d <= eta) return toward;
  const double t = eta / d;
  return {from.x + t * (toward.x - from.x), from.y + t * (toward.y - from.y)};
}

bool point_in_disc(const Config& p, const Disc& d, double inflation) {
  const double r = d.radius + inflation;
  return dist_sq(p, d.center) <= r * r;
}

double point_segment_dist(const Config& p, const Config& a, const Config& b) {
  const double ux = b.x - a.x;
  const double uy = b.y - a.y;
  const double len_sq = ux * ux + uy * uy;
  if (len_sq == 0.0) return dist(p, a);
  // Clamp the projection parameter to stay on the closed segment.
  double t = ((p.x - a.x) * ux + (p.y - a.y) * uy) / len_sq;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  const Config q{a.x + t * ux, a.y + t * uy};
  return dist(p, q);
}

bool segment_disc_collides(const Config& a, const Config& b, const Disc& d,
                           double inflation) {
  return point_segment_dist(d.center, a, b) <= d.radius + inflation;
}

Config sample_uniform(const Workspace& w, RandomStream& rng) {
  const double x = rng.uniform(w.min_x, w.max_x);
  const double y = rng.uniform(w.min_y, w.max_y);
  return {x, y};
}

}  // namespace mrrt
