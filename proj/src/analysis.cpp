#include "dodeca/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace dodeca {

namespace {

constexpr std::size_t kMaxListed = 20;
constexpr double kBinMargin = 1e-7;

std::string show(const Point& p) { return "(" + p.x.to_decimal(6) + ", " + p.y.to_decimal(6) + ")"; }

std::string show(const PlacedTile& t) {
    return std::string(kind_name(t.kind)) + " k=" + std::to_string(t.pose.k) + " m=" + (t.pose.mirror ? "1" : "0") +
           " at " + show(t.pose.t);
}

void add_problem(CheckResult& r, std::size_t& seen, std::string what) {
    r.passed = false;
    if (seen++ < kMaxListed) r.problems.push_back(std::move(what));
}

void close_listing(CheckResult& r, std::size_t seen, const std::string& label) {
    if (seen > kMaxListed) r.problems.push_back(std::to_string(seen - kMaxListed) + " more " + label);
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Box {
    double x0, y0, x1, y1;
};

Box bounds(std::span<const Point> pts) {
    Box b{HUGE_VAL, HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
    for (const Point& p : pts) {
        const double x = p.x.to_double();
        const double y = p.y.to_double();
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
    }
    b.x0 -= kBinMargin;
    b.y0 -= kBinMargin;
    b.x1 += kBinMargin;
    b.y1 += kBinMargin;
    return b;
}

std::int64_t cell_of(double v) { return static_cast<std::int64_t>(std::floor(v)); }
std::int64_t cell_key(std::int64_t cx, std::int64_t cy) { return cx * 2'000'003 + cy; }

// Unit-cell grid over boxes; pruning only.
class BoxGrid {
public:
    explicit BoxGrid(const std::vector<Box>& boxes) {
        for (std::size_t i = 0; i < boxes.size(); ++i)
            for_cells(boxes[i], [&](std::int64_t cx, std::int64_t cy) { cells_[cell_key(cx, cy)].push_back(i); });
    }

    template <class F>
    static void for_cells(const Box& b, F&& f) {
        for (std::int64_t cx = cell_of(b.x0); cx <= cell_of(b.x1); ++cx)
            for (std::int64_t cy = cell_of(b.y0); cy <= cell_of(b.y1); ++cy) f(cx, cy);
    }

    const std::vector<std::size_t>* at(std::int64_t cx, std::int64_t cy) const {
        const auto it = cells_.find(cell_key(cx, cy));
        return it == cells_.end() ? nullptr : &it->second;
    }

private:
    std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

std::vector<Point> all_vertices(const Patch& patch) {
    std::vector<Point> pts;
    pts.reserve(patch.tiles.size() * 4);
    for (const PlacedTile& t : patch.tiles)
        for (const Point& p : raw_vertices(t)) pts.push_back(p);
    return pts;
}

std::vector<Point> hull_of(const Patch& patch) { return convex_hull(all_vertices(patch)); }

bool segment_on_hull(const Point& a, const Point& b, std::span<const Point> hull) {
    if (hull.empty()) return false;
    const Point mid{(a.x + b.x).halved(1), (a.y + b.y).halved(1)};
    return on_hull_boundary(a, hull) && on_hull_boundary(b, hull) && on_hull_boundary(mid, hull);
}

std::vector<Point> polygon_points(const ConvexPolygon& poly) { return {poly.vertices().begin(), poly.vertices().end()}; }

// Vertices strictly inside some edge of `loops`, found through a point grid.
std::vector<std::pair<Point, std::size_t>> t_junctions(const std::vector<std::vector<Point>>& loops) {
    std::vector<Point> points;
    {
        std::unordered_map<Point, char, PointHash> seen;
        for (const auto& loop : loops)
            for (const Point& p : loop)
                if (seen.emplace(p, 0).second) points.push_back(p);
    }
    std::vector<Box> point_boxes;
    point_boxes.reserve(points.size());
    for (const Point& p : points) point_boxes.push_back(bounds(std::span<const Point>(&p, 1)));
    const BoxGrid grid(point_boxes);

    std::vector<std::pair<Point, std::size_t>> found;
    const auto count = static_cast<std::ptrdiff_t>(loops.size());
#pragma omp parallel
    {
        std::vector<std::pair<Point, std::size_t>> local;
#pragma omp for schedule(dynamic, 256)
        for (std::ptrdiff_t li = 0; li < count; ++li) {
            const auto& loop = loops[static_cast<std::size_t>(li)];
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Point& a = loop[i];
                const Point& b = loop[(i + 1) % loop.size()];
                const Point ends[2] = {a, b};
                BoxGrid::for_cells(bounds(ends), [&](std::int64_t cx, std::int64_t cy) {
                    const auto* cell = grid.at(cx, cy);
                    if (!cell) return;
                    for (std::size_t pi : *cell)
                        if (strictly_inside_segment(points[pi], a, b)) local.emplace_back(points[pi], static_cast<std::size_t>(li));
                });
            }
        }
#pragma omp critical
        found.insert(found.end(), local.begin(), local.end());
    }
    // Cells overlap at margins, so the same hit can be found twice.
    std::sort(found.begin(), found.end(), [](const auto& u, const auto& v) {
        if (u.second != v.second) return u.second < v.second;
        return canonical_less(u.first, v.first);
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

} // namespace

std::vector<Composite> composites(const Patch& patch, std::vector<std::string>* problems) {
    std::vector<Composite> out;
    std::map<EdgeKey, std::vector<std::size_t>> by_altitude;
    std::map<std::vector<RingValue>, std::vector<std::size_t>> by_center; // keyed by x, y of corner 0
    for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
        const PlacedTile& t = patch.tiles[i];
        if (t.kind == TileKind::Rhomb) {
            out.push_back({Composite::Kind::Rhomb, {i}, polygon_points(realize(t))});
        } else if (t.kind == TileKind::Square) {
            const Point c = vertex(t, 0);
            by_center[{c.x, c.y}].push_back(i);
        } else {
            by_altitude[make_edge_key(vertex(t, 1), vertex(t, 2))].push_back(i);
        }
    }
    auto singles = [&](const std::vector<std::size_t>& members, Composite::Kind kind) {
        for (std::size_t i : members) out.push_back({kind, {i}, polygon_points(realize(patch.tiles[i]))});
    };
    for (const auto& [key, members] : by_altitude) {
        if (members.size() == 2) {
            const PlacedTile& a = patch.tiles[members[0]];
            const PlacedTile& b = patch.tiles[members[1]];
            if (a.pose.mirror != b.pose.mirror && vertex(a, 2) == vertex(b, 2)) {
                std::vector<Point> pts = raw_vertices(a);
                for (const Point& p : raw_vertices(b)) pts.push_back(p);
                out.push_back({Composite::Kind::Triangle, members, convex_hull(pts)});
                continue;
            }
        }
        singles(members, Composite::Kind::HalfTriangle);
    }
    for (const auto& [key, members] : by_center) {
        std::vector<Point> pts;
        RingValue sum;
        for (std::size_t i : members) {
            for (const Point& p : raw_vertices(patch.tiles[i])) pts.push_back(p);
            sum = sum + prototype(TileKind::Square).area;
        }
        std::vector<Point> hull = convex_hull(pts);
        if (members.size() > 4 || hull.empty() || twice_signed_area(hull) != sum + sum) {
            if (problems)
                problems->push_back(std::to_string(members.size()) + " quarter-squares around " +
                                    show(Point{key[0], key[1]}) + " do not form one square");
            singles(members, Composite::Kind::Square);
            continue;
        }
        out.push_back({Composite::Kind::Square, members, std::move(hull)});
    }
    std::sort(out.begin(), out.end(), [](const Composite& a, const Composite& b) { return a.members < b.members; });
    return out;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& c : checks)
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"problems", c.problems}, {"notes", c.notes}});
    return j;
}

std::string VerificationReport::text() const {
    std::ostringstream os;
    for (const CheckResult& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
        for (const std::string& p : c.problems) os << "  problem: " << p << "\n";
        for (const std::string& n : c.notes) os << "  note: " << n << "\n";
    }
    return os.str();
}

VerificationReport verify_edge_to_edge(const Patch& patch) {
    const Timer timer;
    CheckResult r{"edge-to-edge", true, {}, {}, 0};
    std::vector<std::string> grouping;
    const std::vector<Composite> comps = composites(patch, &grouping);
    std::size_t seen = 0;
    for (std::string& g : grouping) add_problem(r, seen, std::move(g));

    std::unordered_map<EdgeKey, int, EdgeKeyHash> edges;
    for (const Composite& c : comps)
        for (std::size_t i = 0; i < c.polygon.size(); ++i)
            ++edges[make_edge_key(c.polygon[i], c.polygon[(i + 1) % c.polygon.size()])];

    const std::vector<Point> hull = hull_of(patch);
    std::vector<std::pair<EdgeKey, int>> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t shared = 0;
    std::size_t boundary = 0;
    for (const auto& [key, n] : sorted) {
        if (n > 2) add_problem(r, seen, "edge " + show(key.p) + "-" + show(key.q) + " used " + std::to_string(n) + " times");
        if (n == 2) ++shared;
        if (n == 1) {
            ++boundary;
            if (!segment_on_hull(key.p, key.q, hull))
                add_problem(r, seen, "unshared edge " + show(key.p) + "-" + show(key.q) + " is not on the patch hull");
        }
    }

    std::vector<std::vector<Point>> loops;
    loops.reserve(comps.size());
    for (const Composite& c : comps) loops.push_back(c.polygon);
    for (const auto& [p, li] : t_junctions(loops))
        add_problem(r, seen, "vertex " + show(p) + " lies inside an edge of the composite holding " +
                                 show(patch.tiles[comps[li].members.front()]));
    close_listing(r, seen, "problems");

    std::vector<std::vector<Point>> tiles;
    tiles.reserve(patch.tiles.size());
    for (const PlacedTile& t : patch.tiles) tiles.push_back(polygon_points(realize(t)));
    const std::size_t base = t_junctions(tiles).size();
    r.notes.push_back(std::to_string(comps.size()) + " composites, " + std::to_string(shared) + " shared edges, " +
                      std::to_string(boundary) + " boundary edges");
    r.notes.push_back(std::to_string(base) + " base-tile vertices lie inside a base-tile edge (all inside composites)");
    r.seconds = timer.seconds();
    return {{r}};
}

namespace {

VerificationReport overlap_report(const Patch& patch, const std::vector<std::pair<std::size_t, std::size_t>>& bad,
                                  const Timer& timer) {
    CheckResult r{"no-overlap", true, {}, {}, 0};
    std::size_t seen = 0;
    for (const auto& [i, j] : bad)
        add_problem(r, seen, "overlap: " + show(patch.tiles[i]) + " and " + show(patch.tiles[j]));
    close_listing(r, seen, "overlapping pairs");
    RingValue sum;
    for (const PlacedTile& t : patch.tiles) sum = sum + prototype(t.kind).area;
    if (!patch.tiles.empty()) {
        const std::vector<Point> hull = hull_of(patch);
        const RingValue hull_area = hull.empty() ? RingValue{} : twice_signed_area(hull).halved(1);
        if (hull_area != sum) {
            r.passed = false;
            r.problems.push_back("tile area " + sum.to_decimal(9) + " differs from hull area " + hull_area.to_decimal(9));
        } else {
            r.notes.push_back("tile area equals hull area " + sum.to_decimal(9) + " (no gaps)");
        }
    }
    r.seconds = timer.seconds();
    return {{r}};
}

} // namespace

VerificationReport verify_no_overlap(const Patch& patch) {
    const Timer timer;
    const std::size_t n = patch.tiles.size();
    std::vector<std::optional<ConvexPolygon>> polys(n);
    std::vector<Box> boxes(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto u = static_cast<std::size_t>(i);
        polys[u].emplace(realize(patch.tiles[u]));
        boxes[u] = bounds(polys[u]->vertices());
    }
    const BoxGrid grid(boxes);
    std::vector<std::pair<std::size_t, std::size_t>> bad;
#pragma omp parallel
    {
        std::vector<std::pair<std::size_t, std::size_t>> local;
#pragma omp for schedule(dynamic, 256)
        for (std::ptrdiff_t si = 0; si < count; ++si) {
            const auto i = static_cast<std::size_t>(si);
            BoxGrid::for_cells(boxes[i], [&](std::int64_t cx, std::int64_t cy) {
                for (std::size_t j : *grid.at(cx, cy)) {
                    if (j <= i) continue;
                    // Test each pair once, in the first cell both boxes share.
                    const std::int64_t fx = std::max(cell_of(boxes[i].x0), cell_of(boxes[j].x0));
                    const std::int64_t fy = std::max(cell_of(boxes[i].y0), cell_of(boxes[j].y0));
                    if (fx != cx || fy != cy) continue;
                    if (!interiors_disjoint(*polys[i], *polys[j])) local.emplace_back(i, j);
                }
            });
        }
#pragma omp critical
        bad.insert(bad.end(), local.begin(), local.end());
    }
    std::sort(bad.begin(), bad.end());
    return overlap_report(patch, bad, timer);
}

VerificationReport verify_no_overlap_serial(const Patch& patch) {
    const Timer timer;
    std::vector<ConvexPolygon> polys;
    polys.reserve(patch.tiles.size());
    for (const PlacedTile& t : patch.tiles) polys.push_back(realize(t));
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if (!interiors_disjoint(polys[i], polys[j])) bad.emplace_back(i, j);
    return overlap_report(patch, bad, timer);
}

VerificationReport verify_mating(const Patch& patch) {
    const Timer timer;
    CheckResult r{"mating", true, {}, {}, 0};
    std::map<EdgeKey, std::vector<std::size_t>> by_altitude;
    for (std::size_t i = 0; i < patch.tiles.size(); ++i)
        if (is_half_triangle(patch.tiles[i].kind))
            by_altitude[make_edge_key(vertex(patch.tiles[i], 1), vertex(patch.tiles[i], 2))].push_back(i);
    const std::vector<Point> hull = hull_of(patch);
    std::map<std::string, std::int64_t> pairs;
    std::size_t exempt = 0;
    std::size_t seen = 0;
    for (const auto& [key, members] : by_altitude) {
        if (members.size() == 1) {
            if (segment_on_hull(key.p, key.q, hull)) {
                ++exempt;
            } else {
                add_problem(r, seen, "unmated interior half: " + show(patch.tiles[members[0]]));
            }
            continue;
        }
        const PlacedTile& a = patch.tiles[members[0]];
        const PlacedTile& b = patch.tiles[members[1]];
        if (members.size() > 2 || a.pose.mirror == b.pose.mirror || vertex(a, 2) != vertex(b, 2)) {
            add_problem(r, seen, "altitude " + show(key.p) + "-" + show(key.q) + " is not one mirrored pair");
            continue;
        }
        std::string na(kind_name(a.kind));
        std::string nb(kind_name(b.kind));
        if (nb < na) std::swap(na, nb);
        ++pairs[na + "+" + nb];
    }
    close_listing(r, seen, "problems");
    for (const auto& [name, n] : pairs) r.notes.push_back("mated " + name + ": " + std::to_string(n));
    if (exempt) r.notes.push_back(std::to_string(exempt) + " halves on the patch boundary");
    r.seconds = timer.seconds();
    return {{r}};
}

VerificationReport verify_patch(const Patch& patch) {
    VerificationReport report = verify_edge_to_edge(patch);
    report.merge(verify_no_overlap(patch));
    report.merge(verify_mating(patch));
    return report;
}

namespace {

// Kind plus sorted vertices; a quarter-square also records its corner 0,
// which fixes the unit square it belongs to.
TileSignature placement_key(const PlacedTile& t, bool geometric_only) {
    TileSignature s = signature(t, geometric_only);
    if (t.kind == TileKind::Square) s.vertices.push_back(vertex(t, 0));
    return s;
}

std::vector<TileSignature> placement_keys(const std::vector<PlacedTile>& tiles, bool geometric_only) {
    std::vector<TileSignature> keys;
    keys.reserve(tiles.size());
    for (const PlacedTile& t : tiles) keys.push_back(placement_key(t, geometric_only));
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace

bool verify_rotational_symmetry(const Patch& patch, int order, const Point& center) {
    if (order <= 0 || 12 % order != 0) throw std::invalid_argument("symmetry order must divide 12");
    const int step = 12 / order;
    const Isometry about{step, false, center - rotate(center, step)};
    std::vector<PlacedTile> turned;
    turned.reserve(patch.tiles.size());
    for (const PlacedTile& t : patch.tiles) turned.push_back({t.kind, compose(about, t.pose)});
    return placement_keys(patch.tiles, false) == placement_keys(turned, false);
}

bool verify_nesting(const Patch& inner, const Patch& outer, NestingMode mode) {
    const bool geometric = mode == NestingMode::Geometric;
    const std::vector<TileSignature> pool = placement_keys(outer.tiles, geometric);
    for (const PlacedTile& t : inner.tiles)
        if (!std::binary_search(pool.begin(), pool.end(), placement_key(t, geometric))) return false;
    return true;
}

FrequencyReport frequency_analysis(const Patch& patch, const CountMatrix& m) {
    FrequencyReport f;
    std::array<double, kKindCount> counts{};
    for (const PlacedTile& t : patch.tiles) counts[static_cast<std::size_t>(index_of(t.kind))] += 1;
    const double total = static_cast<double>(patch.tiles.size());
    if (total > 0)
        for (std::size_t i = 0; i < counts.size(); ++i) f.empirical[i] = counts[i] / total;

    std::array<double, kKindCount> v;
    v.fill(1.0 / kKindCount);
    for (f.iterations = 1; f.iterations <= 100'000; ++f.iterations) {
        std::array<double, kKindCount> next{};
        for (std::size_t c = 0; c < next.size(); ++c)
            for (std::size_t p = 0; p < v.size(); ++p) next[c] += static_cast<double>(m[c][p]) * v[p];
        double norm = 0;
        for (double x : next) norm += x;
        double change = 0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] /= norm;
            change += std::abs(next[i] - v[i]);
        }
        v = next;
        f.eigenvalue = norm;
        if (change < 1e-12) break;
    }
    f.eigenvector = v;
    for (std::size_t i = 0; i < v.size(); ++i) f.l1_distance += std::abs(f.empirical[i] - v[i]);
    return f;
}

} // namespace dodeca
