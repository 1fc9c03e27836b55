#pragma once

#include <map>
#include <span>
#include <vector>

#include "venn/common.hpp"
#include "venn/setops.hpp"

namespace venn::geometry {

inline constexpr double kPi = 3.14159265358979323846;

// Gap factors for pairs that share nothing or where one set contains the other.
inline constexpr double kSeparationFactor = 1.1;
inline constexpr double kContainmentFactor = 0.9;

inline constexpr int kDefaultSegments = 256;
inline constexpr int kMinSegments = 16;
inline constexpr double kDefaultPrecision = 1.0;

// Radii and target center distances, both in diagram units.
struct CircleModel {
  std::vector<double> radii;
  // n x n, symmetric, zero diagonal
  std::vector<std::vector<double>> target;
  double area_scale = 1.0;  // area per element

  int size() const { return static_cast<int>(radii.size()); }
};

using Ring = std::vector<Point>;

// Outer ring counterclockwise, holes clockwise; rings stored unclosed.
struct Polygon {
  std::vector<Ring> rings;
};

// Disjoint parts of one region.
using MultiPolygon = std::vector<Polygon>;

struct PolePlacement {
  Point point;
  double clearance = 0.0;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

double radius_for_size(double count, double area_scale);

// Area of the intersection of two circles whose centers are `d` apart.
double lens_area(double r1, double r2, double d);

// Inverse of lens_area in d on [|r1-r2|, r1+r2].
double distance_for_overlap(double r1, double r2, double target_area);

// Area scale that gives the largest set a radius of `largest_radius`.
double area_scale_for(std::size_t largest_count, double largest_radius);

CircleModel target_distance_matrix(const setops::RegionTable& table,
                                   std::span<const std::size_t> sizes, double area_scale);

Polygon polygonize_circle(Point center, double radius, int segments = kDefaultSegments);

// Signed shoelace area summed over all rings.
double area(const Polygon& polygon);
double area(const MultiPolygon& parts);

// Boolean combination per mask: members intersected, non-members subtracted.
// Masks whose region comes out empty are left out of the result.
std::map<Mask, MultiPolygon> region_polygons(std::span<const Circle> circles,
                                             std::span<const Mask> masks,
                                             int segments = kDefaultSegments);

// Distance from p to the nearest polygon edge, negative when p is outside.
double signed_distance(Point p, const Polygon& polygon);

PolePlacement pole_of_inaccessibility(const Polygon& polygon, double precision = kDefaultPrecision);

// Pole of the largest-area part.
PolePlacement pole_of_inaccessibility(const MultiPolygon& parts, double precision = kDefaultPrecision);

namespace detail {
// Inscribed regular polygon, no minimum on the segment count beyond 3.
Polygon inscribed_polygon(Point center, double radius, int segments);
}  // namespace detail

}  // namespace venn::geometry
