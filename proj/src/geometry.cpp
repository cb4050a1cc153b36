#include "dodeca/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace dodeca {

namespace {

// cos(k * 30deg) for k = 0..11; sin(k * 30deg) = cos((k + 9) * 30deg).
const std::array<RingValue, 12>& cos_table() {
    static const std::array<RingValue, 12> table = [] {
        const RingValue one = 1;
        const RingValue h = RingValue::half();
        const RingValue r = RingValue::normalize(0, 1, 1);
        return std::array<RingValue, 12>{one, r, h, 0, -h, -r, -one, -r, -h, 0, h, r};
    }();
    return table;
}

int mod12(int k) { return ((k % 12) + 12) % 12; }

} // namespace

std::optional<RingValue> ring_inverse(const RingValue& x) {
    // 1 / (a + b s) = (a - b s) / (a^2 - 3 b^2), scaled by 2^e.
    if (x.is_zero()) return std::nullopt;
    const RingValue conj = RingValue::normalize(x.a(), -x.b(), 0);
    const RingValue norm = RingValue::normalize(x.a(), x.b(), 0) * conj; // rational integer
    if (norm.b() != 0 || norm.e() != 0) return std::nullopt;
    std::int64_t n = norm.a();
    const bool negative = n < 0;
    if (negative) n = -n;
    if (n == 0 || (n & (n - 1)) != 0) return std::nullopt;
    int k = 0;
    while ((std::int64_t{1} << k) != n) ++k;
    RingValue inv = conj.halved(k) * RingValue::normalize(std::int64_t{1} << x.e(), 0, 0);
    return negative ? -inv : inv;
}

bool canonical_less(const Point& p, const Point& q) {
    if (p.x != q.x) return triple_less(p.x, q.x);
    return triple_less(p.y, q.y);
}

bool geometric_less(const Point& p, const Point& q) {
    const int sx = (p.x - q.x).sign();
    if (sx != 0) return sx < 0;
    return (p.y - q.y).sign() < 0;
}

RingValue cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
RingValue dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
RingValue length_squared(const Point& u) { return dot(u, u); }

Point direction(int k) {
    const auto& c = cos_table();
    return {c[static_cast<std::size_t>(mod12(k))], c[static_cast<std::size_t>(mod12(k + 9))]};
}

Point rotate(const Point& p, int k) {
    k = mod12(k);
    if (k == 0) return p;
    const Point d = direction(k);
    return {d.x * p.x - d.y * p.y, d.y * p.x + d.x * p.y};
}

std::optional<int> direction_index(const Point& v) {
    if (v.x.is_zero() && v.y.is_zero()) return std::nullopt;
    for (int k = 0; k < 12; ++k) {
        const Point d = direction(k);
        if (cross(d, v).is_zero() && dot(d, v).sign() > 0) return k;
    }
    return std::nullopt;
}

Point Isometry::apply_linear(const Point& v) const {
    const Point r = mirror ? Point{v.x, -v.y} : v;
    return rotate(r, k);
}

Point Isometry::apply(const Point& p) const { return apply_linear(p) + t; }

Point apply(const Isometry& iso, const Point& p) { return iso.apply(p); }

Isometry compose(const Isometry& f, const Isometry& g) {
    Isometry r;
    r.k = mod12(f.k + (f.mirror ? -g.k : g.k));
    r.mirror = f.mirror != g.mirror;
    r.t = f.apply(g.t);
    return r;
}

Isometry invert(const Isometry& f) {
    Isometry r;
    r.mirror = f.mirror;
    r.k = f.mirror ? f.k : mod12(-f.k);
    const Point mt = r.apply_linear(f.t);
    r.t = {-mt.x, -mt.y};
    return r;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = vertices_[i];
        const Point& q = vertices_[(i + 1) % n];
        const Point& r = vertices_[(i + 2) % n];
        if (p == q) throw std::invalid_argument("polygon has a repeated vertex");
        if (cross(q - p, r - q).sign() <= 0) throw std::invalid_argument("polygon is degenerate or not strictly convex CCW");
    }
    if (twice_signed_area(vertices_).sign() <= 0) throw std::invalid_argument("polygon has zero area");
}

RingValue twice_signed_area(std::span<const Point> loop) {
    RingValue s;
    for (std::size_t i = 0; i < loop.size(); ++i) s += cross(loop[i], loop[(i + 1) % loop.size()]);
    return s;
}

RingValue area(const ConvexPolygon& poly) { return twice_signed_area(poly.vertices()).halved(); }

Location point_in_convex(const Point& p, const ConvexPolygon& poly) {
    bool on_edge = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        const int s = cross(b - a, p - a).sign();
        if (s < 0) return Location::Outside;
        if (s == 0) on_edge = true;
    }
    return on_edge ? Location::Boundary : Location::Inside;
}

namespace {

bool separated_along_edges(const ConvexPolygon& a, const ConvexPolygon& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point& p = a[i];
        const Point edge = a[(i + 1) % a.size()] - p;
        // a lies on the non-negative side of every edge line; b separated if
        // all of b is on the non-positive side.
        bool all_outside = true;
        for (const Point& v : b.vertices()) {
            if (cross(edge, v - p).sign() > 0) {
                all_outside = false;
                break;
            }
        }
        if (all_outside) return true;
    }
    return false;
}

} // namespace

bool interiors_disjoint(const ConvexPolygon& a, const ConvexPolygon& b) {
    return separated_along_edges(a, b) || separated_along_edges(b, a);
}

bool strictly_inside_segment(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    const Point ap = p - a;
    if (!cross(ab, ap).is_zero()) return false;
    const RingValue d = dot(ap, ab);
    return d.sign() > 0 && (d - dot(ab, ab)).sign() < 0;
}

Point vertex_sum(const ConvexPolygon& poly) {
    Point s{};
    for (const Point& v : poly.vertices()) s = s + v;
    return s;
}

std::vector<Point> convex_hull(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), geometric_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) return {};
    std::vector<Point> hull(2 * points.size());
    std::size_t k = 0;
    for (const Point& p : points) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]).sign() <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        const Point& p = points[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]).sign() <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    if (hull.size() < 3) return {};
    return hull;
}

bool on_hull_boundary(const Point& p, std::span<const Point> hull) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        if (p == a || strictly_inside_segment(p, a, b)) return true;
    }
    return false;
}


} // namespace dodeca
