#include "venn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>

namespace venn::geometry {

namespace bg = boost::geometry;

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BMulti = bg::model::multi_polygon<BPolygon>;

// x - sin(x), with a series where the difference would cancel.
double x_minus_sin(double x) {
  if (x > 0.5) return x - std::sin(x);
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = 0.0;
  for (int k = 2; k < 12; ++k) {
    sum += term;
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
  }
  return sum;
}

// Area of a circular segment cut off by a chord subtending 2 * half_angle at the center.
double segment_area(double r, double half_angle) { return 0.5 * r * r * x_minus_sin(2.0 * half_angle); }

BPolygon to_boost(const Polygon& poly) {
  BPolygon out;
  for (std::size_t r = 0; r < poly.rings.size(); ++r) {
    auto& ring = r == 0 ? out.outer() : out.inners().emplace_back();
    for (const auto& p : poly.rings[r]) ring.emplace_back(p.x, p.y);
    ring.emplace_back(poly.rings[r].front().x, poly.rings[r].front().y);
  }
  return out;
}

Ring from_boost(const auto& ring) {
  Ring out;
  out.reserve(ring.size());
  for (const auto& p : ring) out.push_back({p.x(), p.y()});
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

double ring_area(const Ring& ring) {
  double sum = 0.0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    sum += ring[j].x * ring[i].y - ring[i].x * ring[j].y;
  }
  return 0.5 * sum;
}

double segment_distance_sq(Point p, Point a, Point b) {
  double x = a.x;
  double y = a.y;
  double dx = b.x - x;
  double dy = b.y - y;
  if (dx != 0.0 || dy != 0.0) {
    const double t = ((p.x - x) * dx + (p.y - y) * dy) / (dx * dx + dy * dy);
    if (t > 1.0) {
      x = b.x;
      y = b.y;
    } else if (t > 0.0) {
      x += dx * t;
      y += dy * t;
    }
  }
  dx = p.x - x;
  dy = p.y - y;
  return dx * dx + dy * dy;
}

struct Cell {
  Point center;
  double half = 0.0;
  double dist = 0.0;      // signed distance of the center
  double potential = 0.0;  // upper bound for any point in the cell

  Cell(Point c, double h, const Polygon& poly)
      : center(c), half(h), dist(signed_distance(c, poly)), potential(dist + h * std::sqrt(2.0)) {}
};

struct ByPotential {
  bool operator()(const Cell& a, const Cell& b) const { return a.potential < b.potential; }
};

Cell centroid_cell(const Polygon& poly) {
  const Ring& ring = poly.rings.front();
  double area = 0.0;
  double x = 0.0;
  double y = 0.0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    const double f = a.x * b.y - b.x * a.y;
    x += (a.x + b.x) * f;
    y += (a.y + b.y) * f;
    area += f * 3.0;
  }
  if (area == 0.0) return Cell(ring.front(), 0.0, poly);
  return Cell({x / area, y / area}, 0.0, poly);
}

}  // namespace

double radius_for_size(double count, double area_scale) {
  if (!(count > 0.0) || !(area_scale > 0.0))
    throw DomainError("radius_for_size needs positive count and area scale");
  return std::sqrt(count * area_scale / kPi);
}

double lens_area(double r1, double r2, double d) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("lens_area needs positive radii");
  if (d < 0.0) throw DomainError("lens_area needs a non-negative distance");
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  // Same quantity as r1^2 acos(..) + r2^2 acos(..) - sqrt(k)/2, summed as two circular segments
  // so that a thin segment of a large circle does not cancel against its own triangle.
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  const double half_chord = std::sqrt(std::max(k, 0.0)) / (2.0 * d);
  // signed distances from each center to the chord
  const double to_chord1 = ((d - r2) * (d + r2) + r1 * r1) / (2.0 * d);
  const double to_chord2 = ((d - r1) * (d + r1) + r2 * r2) / (2.0 * d);
  return segment_area(r1, std::atan2(half_chord, to_chord1)) + segment_area(r2, std::atan2(half_chord, to_chord2));
}

double distance_for_overlap(double r1, double r2, double target_area) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("distance_for_overlap needs positive radii");
  const double rmin = std::min(r1, r2);
  const double full = kPi * rmin * rmin;
  const double slack = 1e-9 * full;
  if (!(target_area >= -slack) || !(target_area <= full + slack))
    throw InfeasibleOverlapError("overlap area outside [0, pi*min(r1,r2)^2]");
  target_area = std::clamp(target_area, 0.0, full);
  if (target_area == 0.0) return r1 + r2;
  if (target_area == full) return std::abs(r1 - r2);

  double lo = std::abs(r1 - r2);
  double hi = r1 + r2;
  // Bisect to full double resolution, well inside 1e-12 * (r1 + r2).
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (lens_area(r1, r2, mid) > target_area)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double area_scale_for(std::size_t largest_count, double largest_radius) {
  if (largest_count == 0 || !(largest_radius > 0.0))
    throw DomainError("area scale needs a positive count and radius");
  return kPi * largest_radius * largest_radius / static_cast<double>(largest_count);
}

CircleModel target_distance_matrix(const setops::RegionTable& table,
                                   std::span<const std::size_t> sizes, double area_scale) {
  const auto n = sizes.size();
  CircleModel model;
  model.area_scale = area_scale;
  model.radii.reserve(n);
  for (auto s : sizes) model.radii.push_back(radius_for_size(static_cast<double>(s), area_scale));
  model.target.assign(n, std::vector<double>(n, 0.0));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ri = model.radii[i];
      const double rj = model.radii[j];
      const auto common = table.intersection_size((Mask{1} << i) | (Mask{1} << j));
      double d;
      if (common == 0)
        d = kSeparationFactor * (ri + rj);
      else if (common == std::min(sizes[i], sizes[j]))
        d = kContainmentFactor * std::abs(ri - rj);
      else
        d = distance_for_overlap(ri, rj, static_cast<double>(common) * area_scale);
      model.target[i][j] = model.target[j][i] = d;
    }
  }
  return model;
}

namespace detail {

Polygon inscribed_polygon(Point center, double radius, int segments) {
  if (segments < 3) throw DomainError("a polygon needs at least 3 vertices");
  if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
  Ring ring;
  ring.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * kPi * k / segments;
    ring.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Polygon{{std::move(ring)}};
}

}  // namespace detail

Polygon polygonize_circle(Point center, double radius, int segments) {
  if (segments < kMinSegments)
    throw DomainError("circle discretization needs at least " + std::to_string(kMinSegments) +
                      " segments");
  return detail::inscribed_polygon(center, radius, segments);
}

double area(const Polygon& polygon) {
  double sum = 0.0;
  for (const auto& ring : polygon.rings) sum += ring_area(ring);
  return sum;
}

double area(const MultiPolygon& parts) {
  double sum = 0.0;
  for (const auto& p : parts) sum += area(p);
  return sum;
}

std::map<Mask, MultiPolygon> region_polygons(std::span<const Circle> circles,
                                             std::span<const Mask> masks, int segments) {
  std::vector<BPolygon> discs;
  discs.reserve(circles.size());
  double largest = 0.0;
  for (const auto& c : circles) {
    discs.push_back(to_boost(polygonize_circle(c.center, c.radius, segments)));
    largest = std::max(largest, c.radius);
  }
  const double sliver = 1e-9 * largest * largest;

  std::map<Mask, MultiPolygon> out;
  for (Mask mask : masks) {
    BMulti region;
    bool first = true;
    for (std::size_t i = 0; i < circles.size(); ++i) {
      if (!(mask & (Mask{1} << i))) continue;
      if (first) {
        region.push_back(discs[i]);
        first = false;
        continue;
      }
      BMulti next;
      bg::intersection(region, discs[i], next);
      region = std::move(next);
      if (region.empty()) break;
    }
    for (std::size_t j = 0; j < circles.size() && !region.empty(); ++j) {
      if (mask & (Mask{1} << j)) continue;
      if (bg::disjoint(region, discs[j])) continue;
      BMulti next;
      bg::difference(region, discs[j], next);
      region = std::move(next);
    }

    MultiPolygon parts;
    for (const auto& bp : region) {
      Polygon part;
      part.rings.push_back(from_boost(bp.outer()));
      for (const auto& inner : bp.inners()) part.rings.push_back(from_boost(inner));
      if (part.rings.front().size() < 3 || area(part) <= sliver) continue;
      parts.push_back(std::move(part));
    }
    if (!parts.empty()) out.emplace(mask, std::move(parts));
  }
  return out;
}

double signed_distance(Point p, const Polygon& polygon) {
  bool inside = false;
  double min_sq = std::numeric_limits<double>::infinity();
  for (const auto& ring : polygon.rings) {
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      const Point a = ring[i];
      const Point b = ring[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
        inside = !inside;
      min_sq = std::min(min_sq, segment_distance_sq(p, a, b));
    }
  }
  const double d = std::sqrt(min_sq);
  return inside ? d : -d;
}

PolePlacement pole_of_inaccessibility(const Polygon& polygon, double precision) {
  if (!(precision > 0.0)) throw DomainError("pole precision must be positive");
  if (polygon.rings.empty() || polygon.rings.front().size() < 3 || !(area(polygon) > 0.0))
    throw DegenerateGeometryError("pole of inaccessibility needs a polygon with positive area");

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& p : polygon.rings.front()) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double width = max_x - min_x;
  const double height = max_y - min_y;
  const double cell_size = std::min(width, height);
  if (!(cell_size > 0.0))
    throw DegenerateGeometryError("pole of inaccessibility needs a polygon with positive area");

  std::priority_queue<Cell, std::vector<Cell>, ByPotential> queue;
  const double h = cell_size / 2.0;
  for (double x = min_x; x < max_x; x += cell_size) {
    for (double y = min_y; y < max_y; y += cell_size) queue.emplace(Point{x + h, y + h}, h, polygon);
  }

  Cell best = centroid_cell(polygon);
  if (Cell box({min_x + width / 2.0, min_y + height / 2.0}, 0.0, polygon); box.dist > best.dist)
    best = box;

  while (!queue.empty()) {
    Cell cell = queue.top();
    queue.pop();
    if (cell.dist > best.dist) best = cell;
    if (cell.potential - best.dist <= precision) continue;
    const double q = cell.half / 2.0;
    const Point c = cell.center;
    queue.emplace(Point{c.x - q, c.y - q}, q, polygon);
    queue.emplace(Point{c.x + q, c.y - q}, q, polygon);
    queue.emplace(Point{c.x - q, c.y + q}, q, polygon);
    queue.emplace(Point{c.x + q, c.y + q}, q, polygon);
  }
  return {best.center, std::max(best.dist, 0.0)};
}

PolePlacement pole_of_inaccessibility(const MultiPolygon& parts, double precision) {
  if (parts.empty()) throw DegenerateGeometryError("no polygon parts to label");
  const auto largest = std::max_element(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    return area(a) < area(b);
  });
  return pole_of_inaccessibility(*largest, precision);
}

}  // namespace venn::geometry
