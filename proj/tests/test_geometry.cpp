#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "venn/geometry.hpp"

using namespace venn;
using namespace venn::geometry;
using doctest::Approx;

namespace {

std::vector<oracle::Ring> rings_of(const Polygon& p) {
  std::vector<oracle::Ring> out;
  for (const auto& ring : p.rings) {
    oracle::Ring r;
    for (auto q : ring) r.push_back({q.x, q.y});
    out.push_back(r);
  }
  return out;
}

Polygon rectangle(double x0, double y0, double x1, double y1) {
  return Polygon{{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}};
}

setops::IdSet make(std::string name, setops::IdList ids) {
  return setops::make_id_set(std::move(name), Rgba{}, ids);
}

}  // namespace

TEST_CASE("radius_for_size") {
  CHECK(radius_for_size(kPi, 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(radius_for_size(100, 1.0) == Approx(5.641896).epsilon(1e-7));
  CHECK(radius_for_size(9, 1.0) == Approx(1.692569).epsilon(1e-6));
  CHECK_THROWS_AS(radius_for_size(0, 1.0), DomainError);
  CHECK_THROWS_AS(radius_for_size(3, -1.0), DomainError);
}

TEST_CASE("radii are area-proportional") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const double a = 1 + rng() % 1000;
    const double b = 1 + rng() % 1000;
    const double scale = 0.1 + (rng() % 1000) / 10.0;
    const double ra = radius_for_size(a, scale);
    const double rb = radius_for_size(b, scale);
    CHECK(std::abs(ra * ra / (rb * rb) - a / b) <= 1e-12 * (a / b));
    CHECK(std::abs(kPi * ra * ra - a * scale) <= 1e-9 * a * scale);
  }
}

TEST_CASE("lens_area closed form") {
  CHECK(lens_area(1, 1, 0) == Approx(kPi));
  CHECK(lens_area(1, 1, 2) == 0.0);
  CHECK(lens_area(1, 1, 1) == Approx(1.228370).epsilon(1e-6));
  CHECK(lens_area(1, 3, 1.5) == Approx(kPi));  // contained
  CHECK_THROWS_AS(lens_area(0, 1, 1), DomainError);
  CHECK_THROWS_AS(lens_area(1, 1, -1), DomainError);
}

TEST_CASE("lens_area agrees with Monte Carlo sampling") {
  const double mc = oracle::monte_carlo_lens(1, 1, 1, 10'000'000, 42);
  CHECK(std::abs(mc - lens_area(1, 1, 1)) < 1e-3);
  CHECK(std::abs(mc - 1.228370) < 1e-3);
  const double mc2 = oracle::monte_carlo_lens(2, 1.3, 2.1, 4'000'000, 7);
  CHECK(std::abs(mc2 - lens_area(2, 1.3, 2.1)) < 3e-3);
}

TEST_CASE("lens_area is monotone and bounded") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ur(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double r1 = ur(rng);
    const double r2 = ur(rng);
    const double cap = kPi * std::min(r1, r2) * std::min(r1, r2);
    double prev = lens_area(r1, r2, 0.0);
    CHECK(prev == Approx(cap));
    for (int k = 1; k <= 100; ++k) {
      const double d = (r1 + r2) * 1.05 * k / 100.0;
      const double a = lens_area(r1, r2, d);
      CHECK(a <= cap);
      CHECK(a <= prev);
      if (d > std::abs(r1 - r2) && d < r1 + r2 && d - (r1 + r2) * 1.05 / 100.0 > std::abs(r1 - r2)) {
        CHECK(a < prev);
        CHECK(a < cap);
      }
      prev = a;
    }
  }
}

TEST_CASE("distance_for_overlap") {
  CHECK(distance_for_overlap(1, 1, kPi) == 0.0);
  CHECK(distance_for_overlap(1, 1, 0) == 2.0);
  CHECK(distance_for_overlap(1, 1, 1.228370) == Approx(1.0).epsilon(1e-6));
  CHECK(distance_for_overlap(1, 1, lens_area(1, 1, 1)) == Approx(1.0).epsilon(1e-12));
  CHECK(distance_for_overlap(1, 3, kPi) == 2.0);
  CHECK_THROWS_AS(distance_for_overlap(1, 1, 3.2), InfeasibleOverlapError);
  CHECK_THROWS_AS(distance_for_overlap(1, 1, -0.1), InfeasibleOverlapError);
  // within slack: clamped
  CHECK(distance_for_overlap(1, 1, kPi * (1 + 1e-12)) == 0.0);
}

TEST_CASE("distance_for_overlap round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.01, 500.0), uf(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double r1 = ur(rng);
    const double r2 = ur(rng);
    const double cap = kPi * std::min(r1, r2) * std::min(r1, r2);
    const double a = uf(rng) * cap;
    const double d = distance_for_overlap(r1, r2, a);
    CHECK(d >= std::abs(r1 - r2));
    CHECK(d <= r1 + r2);
    CHECK(std::abs(lens_area(r1, r2, d) - a) <= 1e-9 * std::max(a, cap));
  }
}

TEST_CASE("target_distance_matrix policies") {
  SUBCASE("disjoint pair") {
    const std::vector<setops::IdSet> sets{make("X", {"1"}), make("Y", {"2"})};
    const auto t = setops::build_region_table(sets);
    const std::vector<std::size_t> sizes{1, 1};
    const auto m = target_distance_matrix(t, sizes, kPi);
    CHECK(m.radii[0] == Approx(1.0));
    CHECK(m.target[0][1] == Approx(2.2));
    CHECK(m.target[1][0] == m.target[0][1]);
    CHECK(m.target[0][0] == 0.0);
  }
  SUBCASE("containment") {
    const std::vector<setops::IdSet> sets{make("X", {"1"}), make("Y", {"1", "2", "3", "4"})};
    const auto t = setops::build_region_table(sets);
    const std::vector<std::size_t> sizes{1, 4};
    const auto m = target_distance_matrix(t, sizes, kPi);
    CHECK(m.radii[1] == Approx(2.0));
    CHECK(m.target[0][1] == Approx(0.9));
  }
  SUBCASE("six-set pair A,B") {
    std::vector<setops::IdSet> sets{
        make("A", setops::parse_id_list("A, B, C, D, E, F, G, H, I")),
        make("B", setops::parse_id_list("E, F, G, J, K, L, M, N, O, P, Q, R, S, T, U")),
    };
    const auto t = setops::build_region_table(sets);
    const std::vector<std::size_t> sizes{9, 15};
    const auto m = target_distance_matrix(t, sizes, 1.0);
    CHECK(m.radii[0] == Approx(1.692569).epsilon(1e-6));
    CHECK(m.radii[1] == Approx(2.185097).epsilon(1e-6));
    // root of the lens equation, solved independently at 30 digits
    CHECK(m.target[0][1] == Approx(2.431148844916195).epsilon(1e-12));
    CHECK(std::abs(lens_area(m.radii[0], m.radii[1], m.target[0][1]) - 3.0) <= 1e-9);
  }
}

TEST_CASE("polygonize_circle") {
  const Polygon square = detail::inscribed_polygon({0, 0}, 1.0, 4);
  REQUIRE(square.rings.size() == 1);
  const auto& v = square.rings[0];
  REQUIRE(v.size() == 4);
  const Point expected[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    CHECK(v[i].x == Approx(expected[i].x));
    CHECK(v[i].y == Approx(expected[i].y));
  }
  CHECK_THROWS_AS(polygonize_circle({0, 0}, 1.0, 4), DomainError);
  for (int segments : {16, 64, 256, 1000}) {
    const double r = 3.5;
    const double inscribed = r * r * (segments / 2.0) * std::sin(2 * kPi / segments);
    CHECK(area(polygonize_circle({1, 2}, r, segments)) == Approx(inscribed).epsilon(1e-12));
  }
  const double a256 = area(polygonize_circle({0, 0}, 10.0, 256));
  CHECK(std::abs(a256 - kPi * 100) / (kPi * 100) < 4e-4);
}

TEST_CASE("region_polygons") {
  SUBCASE("lone circle") {
    const std::vector<Circle> circles{{{0, 0}, 10.0}};
    const std::vector<Mask> masks{1};
    const auto r = region_polygons(circles, masks);
    REQUIRE(r.count(1));
    CHECK(area(r.at(1)) == Approx(area(polygonize_circle({0, 0}, 10.0))).epsilon(1e-9));
  }
  SUBCASE("disjoint circles have no shared region") {
    const std::vector<Circle> circles{{{0, 0}, 1.0}, {{5, 0}, 1.0}};
    const std::vector<Mask> masks{1, 2, 3};
    const auto r = region_polygons(circles, masks);
    CHECK(r.count(1));
    CHECK(r.count(2));
    CHECK_FALSE(r.count(3));
  }
  SUBCASE("lens of two unit circles") {
    const std::vector<Circle> circles{{{0, 0}, 1.0}, {{1, 0}, 1.0}};
    const std::vector<Mask> masks{1, 2, 3};
    const auto r = region_polygons(circles, masks);
    REQUIRE(r.count(3));
    CHECK(std::abs(area(r.at(3)) - 1.228370) < 0.01 * 1.228370);
    // exclusive parts sum with the lens to each disc
    CHECK(area(r.at(1)) + area(r.at(3)) == Approx(area(polygonize_circle({0, 0}, 1.0))).epsilon(1e-3));
  }
  SUBCASE("annulus when a small circle sits inside a big one") {
    const std::vector<Circle> circles{{{0, 0}, 10.0}, {{0, 0}, 3.0}};
    const std::vector<Mask> masks{1, 3};
    const auto r = region_polygons(circles, masks);
    REQUIRE(r.count(1));
    CHECK(r.at(1).front().rings.size() == 2);
    CHECK(area(r.at(1)) == Approx(kPi * 91).epsilon(1e-3));
  }
}

TEST_CASE("pole_of_inaccessibility fixtures") {
  SUBCASE("rectangle") {
    const auto pole = pole_of_inaccessibility(rectangle(0, 0, 4, 2), 1e-3);
    CHECK(pole.point.x == Approx(2.0).epsilon(1e-3));
    CHECK(pole.point.y == Approx(1.0).epsilon(1e-3));
    CHECK(pole.clearance == Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("256-gon") {
    const double precision = 0.01;
    const auto pole = pole_of_inaccessibility(polygonize_circle({0, 0}, 10.0, 256), precision);
    CHECK(std::hypot(pole.point.x, pole.point.y) <= precision);
    CHECK(std::abs(pole.clearance - 10 * std::cos(kPi / 256)) <= precision);
  }
  SUBCASE("degenerate input") {
    const Polygon flat{{{{0, 0}, {1, 0}, {2, 0}}}};
    CHECK_THROWS_AS(pole_of_inaccessibility(flat, 1.0), DegenerateGeometryError);
    CHECK_THROWS_AS(pole_of_inaccessibility(rectangle(0, 0, 1, 1), 0.0), DomainError);
  }
  SUBCASE("largest part of a multipolygon") {
    const MultiPolygon parts{rectangle(0, 0, 1, 1), rectangle(10, 10, 20, 14)};
    const auto pole = pole_of_inaccessibility(parts, 0.01);
    CHECK(pole.point.x == Approx(15).epsilon(1e-2));
    CHECK(pole.clearance == Approx(2.0).epsilon(1e-2));
  }
}

TEST_CASE("pole_of_inaccessibility against a dense grid") {
  std::mt19937_64 rng(1234);
  const double precision = 1.0;
  for (int trial = 0; trial < 6; ++trial) {
    const auto ring = oracle::random_star_polygon(rng, 10, 50, 50, 15, 60);
    Polygon poly;
    poly.rings.emplace_back();
    for (auto p : ring) poly.rings[0].push_back({p.x, p.y});
    const auto pole = pole_of_inaccessibility(poly, precision);
    const double grid = oracle::grid_max_clearance(rings_of(poly), 600);
    CHECK(std::abs(pole.clearance - grid) <= precision);
    // the returned point is inside and the clearance is its true edge distance
    const double check = oracle::signed_clearance(rings_of(poly), {pole.point.x, pole.point.y});
    CHECK(check > 0.0);
    CHECK(std::abs(check - pole.clearance) <= 1e-9);
  }
}
