#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dodeca/exact.hpp"

namespace dodeca {

/// Multiplicative inverse when it lies in the ring (norm a^2 - 3b^2 is +-2^k).
std::optional<RingValue> ring_inverse(const RingValue& x);

struct Point {
    RingValue x;
    RingValue y;

    friend bool operator==(const Point&, const Point&) = default;
    friend Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
    friend Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
    friend Point operator*(const RingValue& s, const Point& p) { return {s * p.x, s * p.y}; }
};

/// Canonical coordinate order: lexicographic on normalized x then y triples.
bool canonical_less(const Point& p, const Point& q);

/// Real-valued lexicographic order (x, then y).
bool geometric_less(const Point& p, const Point& q);

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
        const RingValueHash h;
        return h(p.x) * 1000003u ^ h(p.y);
    }
};

RingValue cross(const Point& u, const Point& v);
RingValue dot(const Point& u, const Point& v);
RingValue length_squared(const Point& u);

/// Unit vector at angle k * 30 degrees.
Point direction(int k);

/// Rotation by k * 30 degrees about the origin.
Point rotate(const Point& p, int k);

/// Direction index 0..11 of a non-zero vector whose angle is a multiple of 30
/// degrees, or nullopt otherwise.
std::optional<int> direction_index(const Point& v);

/// Element of the dihedral group of order 24 extended by translations.
/// Acts as: reflect across the x-axis (if `mirror`), rotate by `k` * 30
/// degrees, then translate by `t`.
struct Isometry {
    int k = 0;
    bool mirror = false;
    Point t{};

    static Isometry identity() { return {}; }
    static Isometry rotation(int k) { return {((k % 12) + 12) % 12, false, {}}; }
    static Isometry translation(const Point& t) { return {0, false, t}; }
    static Isometry reflection() { return {0, true, {}}; }

    Point apply(const Point& p) const;
    /// Applies only the linear part (no translation).
    Point apply_linear(const Point& v) const;

    friend bool operator==(const Isometry&, const Isometry&) = default;
};

Point apply(const Isometry& iso, const Point& p);
/// f after g: apply(compose(f, g), p) == apply(f, apply(g, p)).
Isometry compose(const Isometry& f, const Isometry& g);
Isometry invert(const Isometry& f);

/// Strictly convex, counterclockwise polygon. Construction validates.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }

private:
    std::vector<Point> vertices_;
};

/// Exact area (shoelace).
RingValue area(const ConvexPolygon& poly);
/// Twice the signed area of an arbitrary vertex loop.
RingValue twice_signed_area(std::span<const Point> loop);

enum class Location { Inside, Boundary, Outside };

Location point_in_convex(const Point& p, const ConvexPolygon& poly);

/// True iff the interiors do not intersect (shared edges/vertices allowed).
bool interiors_disjoint(const ConvexPolygon& a, const ConvexPolygon& b);

/// True iff p lies strictly between a and b on segment ab.
bool strictly_inside_segment(const Point& p, const Point& a, const Point& b);

/// Sum of the vertices divided by n is generally not dyadic; this returns the
/// vertex sum, which is n times the vertex centroid.
Point vertex_sum(const ConvexPolygon& poly);

/// Convex hull, counterclockwise, without collinear points. Fewer than three
/// non-collinear input points give an empty result.
std::vector<Point> convex_hull(std::vector<Point> points);

/// True iff p lies on the closed boundary of the counterclockwise convex loop.
bool on_hull_boundary(const Point& p, std::span<const Point> hull);

} // namespace dodeca
