#include <doctest.h>

#include <random>

#include "dodeca/geometry.hpp"
#include "oracle.hpp"

using namespace dodeca;

namespace {

std::vector<Isometry> linear_group() {
    std::vector<Isometry> g;
    for (int k = 0; k < 12; ++k)
        for (bool m : {false, true}) g.push_back({k, m, {}});
    return g;
}

} // namespace

TEST_CASE("directions are unit vectors at multiples of 30 degrees") {
    for (int k = 0; k < 12; ++k) {
        CHECK(length_squared(direction(k)) == RingValue(1));
        CHECK(direction_index(direction(k)) == k);
        const double a = k * 3.14159265358979323846 / 6;
        CHECK(direction(k).x.to_double() == doctest::Approx(std::cos(a)).epsilon(1e-12));
        CHECK(direction(k).y.to_double() == doctest::Approx(std::sin(a)).epsilon(1e-12));
    }
    CHECK_FALSE(direction_index(Point{RingValue(1), RingValue(1)}).has_value());
}

TEST_CASE("rhomb long diagonal squared is 2 + sqrt 3") {
    const Point d{RingValue(1) + RingValue::normalize(0, 1, 1), RingValue::half()};
    CHECK(length_squared(d) == RingValue::normalize(2, 1, 0));
    CHECK(length_squared(d).to_double() == doctest::Approx(2 + std::sqrt(3.0)));
}

TEST_CASE("isometries form a group under composition") {
    const Point p{RingValue::normalize(1, 2, 1), RingValue::normalize(-3, 1, 2)};
    const Point t{RingValue::half(), RingValue::sqrt3()};
    for (Isometry f : linear_group()) {
        f.t = t;
        CHECK(compose(f, invert(f)) == Isometry{});
        CHECK(apply(invert(f), apply(f, p)) == p);
        for (Isometry g : linear_group()) CHECK(apply(compose(f, g), p) == apply(f, apply(g, p)));
    }
}

TEST_CASE("isometries preserve distances") {
    const Point p{RingValue(1), RingValue::half()}, q{RingValue::sqrt3(), RingValue(-2)};
    for (const Isometry& f : linear_group()) CHECK(length_squared(apply(f, p) - apply(f, q)) == length_squared(p - q));
}

TEST_CASE("convex polygon area and disjointness") {
    const ConvexPolygon unit({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(area(unit) == RingValue(1));
    const ConvexPolygon right({{1, 0}, {2, 0}, {2, 1}, {1, 1}});
    const ConvexPolygon shifted({{RingValue::half(), 0}, {2, 0}, {2, 1}, {RingValue::half(), 1}});
    CHECK(interiors_disjoint(unit, right));
    CHECK_FALSE(interiors_disjoint(unit, shifted));
    CHECK(point_in_convex({RingValue::half(), RingValue::half()}, unit) == Location::Inside);
    CHECK(point_in_convex({1, RingValue::half()}, unit) == Location::Boundary);
    CHECK(point_in_convex({2, 2}, unit) == Location::Outside);
}

TEST_CASE("convex hull drops interior and collinear points") {
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}, {0, 1}};
    const std::vector<Point> hull = convex_hull(pts);
    CHECK(hull.size() == 4);
    CHECK(twice_signed_area(hull) == RingValue(8));
}

TEST_CASE("ring inverse exists exactly for units") {
    CHECK(ring_inverse(RingValue::lambda()) == RingValue::lambda_inverse());
    CHECK(ring_inverse(RingValue::normalize(2, 1, 0)) == RingValue::normalize(2, -1, 0));
    CHECK_FALSE(ring_inverse(RingValue(3)).has_value());
}
