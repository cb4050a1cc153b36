#include <algorithm>
#include <unordered_map>

#include "dodeca/search.hpp"

namespace dodeca {

namespace {

using Mask = std::uint16_t;
constexpr Mask kFull = 0x0FFF;

int mod12(int k) { return ((k % 12) + 12) % 12; }

Mask sector_range(int from, int count) {
    Mask m = 0;
    for (int i = 0; i < count; ++i) m = static_cast<Mask>(m | (1u << mod12(from + i)));
    return m;
}

const RingValue kHalf = RingValue::half();

PiecePrototype make_piece(std::span<const Point> pts, std::vector<bool> flags, int rational, int sqrt3) {
    return PiecePrototype{ConvexPolygon(std::vector<Point>(pts.begin(), pts.end())), std::move(flags), rational, sqrt3};
}

PiecePrototype make_piece(std::vector<Point> v, std::vector<bool> flags, int rational, int sqrt3) {
    return PiecePrototype{ConvexPolygon(std::move(v)), std::move(flags), rational, sqrt3};
}

} // namespace

std::string_view piece_name(Piece piece) {
    switch (piece) {
    case Piece::Rhomb: return "rhomb";
    case Piece::Half: return "half";
    case Piece::Triangle: return "triangle";
    case Piece::UnitSquare: return "unit-square";
    case Piece::HalfSquare: return "half-square";
    case Piece::QuarterSquare: return "quarter-square";
    }
    return "?";
}

const PiecePrototype& piece_prototype(Piece piece) {
    static const std::array<PiecePrototype, 6> table = [] {
        const RingValue h3 = RingValue::normalize(0, 1, 1);
        const Prototype& rhomb = prototype(Shape::Rhomb);
        const Prototype& half = prototype(Shape::HalfTriangle);
        std::vector<bool> altitude_flags;
        for (EdgeRole r : half.edge_roles) altitude_flags.push_back(r == EdgeRole::Altitude);
        return std::array<PiecePrototype, 6>{
            make_piece(rhomb.polygon.vertices(), {false, false, false, false}, 4, 0),
            make_piece(half.polygon.vertices(), altitude_flags, 0, 1),
            make_piece({{0, 0}, {1, 0}, {kHalf, h3}}, {false, false, false}, 0, 2),
            make_piece({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {false, false, false, false}, 8, 0),
            make_piece({{0, 0}, {1, 0}, {1, kHalf}, {0, kHalf}}, {true, false, false, false}, 4, 0),
            make_piece({{0, 0}, {kHalf, 0}, {kHalf, kHalf}, {0, kHalf}}, {true, false, false, true}, 2, 0),
        };
    }();
    return table[static_cast<std::size_t>(piece)];
}

namespace {

constexpr std::array<Piece, 6> kPieces{Piece::Rhomb,      Piece::Half,       Piece::Triangle,
                                       Piece::UnitSquare, Piece::HalfSquare, Piece::QuarterSquare};

// Counterclockwise realization of a piece under a linear pose.
struct PoseTemplate {
    Piece piece;
    Isometry pose; // translation zero
    std::vector<Point> ccw;
    std::vector<int> out_dir;
    std::vector<int> angle;
    std::vector<bool> on_boundary; // flag of outgoing edge i
};

std::vector<PoseTemplate> build_templates(bool whole_triangles) {
    std::vector<PoseTemplate> out;
    for (Piece piece : kPieces) {
        if (piece == Piece::Triangle && !whole_triangles) continue;
        const PiecePrototype& proto = piece_prototype(piece);
        std::vector<std::vector<Point>> seen;
        for (int m = 0; m < 2; ++m) {
            for (int k = 0; k < 12; ++k) {
                PoseTemplate t{piece, Isometry{k, m == 1, {}}, {}, {}, {}, {}};
                std::vector<Point> v;
                for (const Point& p : proto.polygon.vertices()) v.push_back(t.pose.apply(p));
                std::vector<bool> flags = proto.on_boundary;
                const std::size_t n = v.size();
                if (t.pose.mirror) {
                    // Reversing the loop maps edge i (v_i -> v_i+1) to the
                    // outgoing edge of the image of v_{i+1}.
                    std::reverse(v.begin(), v.end());
                    std::vector<bool> r(n);
                    for (std::size_t i = 0; i < n; ++i) r[(n - 2 - i + n) % n] = flags[i];
                    flags = r;
                }
                // Geometric key up to translation: sorted vertices followed by
                // the flagged edges' endpoints, relative to the first vertex.
                std::vector<Point> key = v;
                std::sort(key.begin(), key.end(), geometric_less);
                std::vector<EdgeKey> flagged;
                for (std::size_t i = 0; i < n; ++i)
                    if (flags[i]) flagged.push_back(make_edge_key(v[i], v[(i + 1) % n]));
                std::sort(flagged.begin(), flagged.end());
                for (const EdgeKey& e : flagged) {
                    key.push_back(e.p);
                    key.push_back(e.q);
                }
                const Point origin = key.front();
                for (Point& p : key) p = p - origin;
                if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
                seen.push_back(key);
                for (std::size_t i = 0; i < n; ++i) {
                    const int dout = *direction_index(v[(i + 1) % n] - v[i]);
                    const int dprev = *direction_index(v[(i + n - 1) % n] - v[i]);
                    t.out_dir.push_back(dout);
                    t.angle.push_back(mod12(dprev - dout));
                }
                t.ccw = v;
                t.on_boundary = flags;
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

struct PlacedPoly {
    Piece piece;
    Isometry pose;
    ConvexPolygon poly;
};

class PartitionSearch {
public:
    PartitionSearch(const ConvexPolygon& region, const PartitionOptions& opt,
                    const std::function<void(const std::vector<Placement>&)>& visit)
        : region_(region), opt_(opt), visit_(visit), templates_(build_templates(opt.whole_triangles)) {
        const RingValue eighths = area(region) * RingValue(8);
        if (eighths.e() != 0) throw std::invalid_argument("region area is not a multiple of 1/8");
        rational_left_ = eighths.a();
        sqrt3_left_ = eighths.b();
        for (const Point& p : region_.vertices()) add_vertex(p);
    }

    PartitionStats run() {
        recurse();
        return stats_;
    }

private:
    // Sectors at p that lie outside the region.
    Mask initial_mask(const Point& p) const {
        Mask covered = 0;
        for (int s = 0; s < 12; ++s) {
            const Point probe = direction(s) + direction(s + 1);
            bool inside = true;
            for (std::size_t i = 0; i < region_.size(); ++i) {
                const Point& a = region_[i];
                const Point& b = region_[(i + 1) % region_.size()];
                const int on_line = cross(b - a, p - a).sign();
                if (on_line < 0) return kFull;
                if (on_line == 0 && cross(b - a, probe).sign() <= 0) {
                    inside = false;
                    break;
                }
            }
            if (!inside) covered = static_cast<Mask>(covered | (1u << s));
        }
        return covered;
    }

    std::size_t add_vertex(const Point& p) {
        const auto it = index_.find(p);
        if (it != index_.end()) return it->second;
        const std::size_t id = points_.size();
        points_.push_back(p);
        masks_.push_back(initial_mask(p));
        index_.emplace(p, id);
        return id;
    }

    bool on_region_boundary(const Point& a, const Point& b) const {
        for (std::size_t j = 0; j < region_.size(); ++j) {
            const Point& r0 = region_[j];
            const Point& r1 = region_[(j + 1) % region_.size()];
            if (cross(r1 - r0, a - r0).is_zero() && cross(r1 - r0, b - r0).is_zero()) return true;
        }
        return false;
    }

    bool fits(const PlacedPoly& c, const PoseTemplate& tpl) const {
        for (const Point& v : c.poly.vertices())
            if (point_in_convex(v, region_) == Location::Outside) return false;
        const std::size_t n = c.poly.size();
        for (std::size_t i = 0; i < n; ++i)
            if (tpl.on_boundary[i] && !on_region_boundary(c.poly[i], c.poly[(i + 1) % n])) return false;
        for (const PlacedPoly& t : placed_) {
            if (!interiors_disjoint(t.poly, c.poly)) return false;
            for (const Point& v : c.poly.vertices())
                for (std::size_t i = 0; i < t.poly.size(); ++i)
                    if (strictly_inside_segment(v, t.poly[i], t.poly[(i + 1) % t.poly.size()])) return false;
            for (const Point& v : t.poly.vertices())
                for (std::size_t i = 0; i < n; ++i)
                    if (strictly_inside_segment(v, c.poly[i], c.poly[(i + 1) % n])) return false;
        }
        return true;
    }

    void recurse() {
        if (stats_.budget_exceeded) return;
        if (++stats_.nodes > opt_.node_budget) {
            stats_.budget_exceeded = true;
            return;
        }
        if (rational_left_ == 0 && sqrt3_left_ == 0) {
            std::vector<Placement> out;
            out.reserve(placed_.size());
            for (const PlacedPoly& t : placed_) out.push_back({t.piece, t.pose});
            ++stats_.solutions;
            visit_(out);
            return;
        }
        // Most constrained open vertex: smallest uncovered gap.
        std::size_t best = points_.size();
        int best_gap = 13;
        int best_start = 0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const Mask m = masks_[i];
            if (m == kFull) continue;
            for (int s = 0; s < 12; ++s) {
                if ((m >> s) & 1u) continue;
                if (!((m >> mod12(s - 1)) & 1u)) continue;
                int gap = 0;
                while (gap < 12 && !((m >> mod12(s + gap)) & 1u)) ++gap;
                if (gap < best_gap) {
                    best_gap = gap;
                    best = i;
                    best_start = s;
                }
            }
        }
        if (best == points_.size()) return;
        const Point p = points_[best];
        for (const PoseTemplate& tpl : templates_) {
            const PiecePrototype& proto = piece_prototype(tpl.piece);
            if (proto.rational_eighths > rational_left_ || proto.sqrt3_eighths > sqrt3_left_) continue;
            for (std::size_t vi = 0; vi < tpl.ccw.size(); ++vi) {
                if (tpl.out_dir[vi] != best_start || tpl.angle[vi] > best_gap) continue;
                const Point shift = p - tpl.ccw[vi];
                std::vector<Point> v;
                v.reserve(tpl.ccw.size());
                for (const Point& q : tpl.ccw) v.push_back(q + shift);
                PlacedPoly cand{tpl.piece, Isometry{tpl.pose.k, tpl.pose.mirror, shift}, ConvexPolygon(v)};
                if (!fits(cand, tpl)) continue;
                place(cand, tpl);
                recurse();
                unplace();
                if (stats_.budget_exceeded) return;
            }
        }
    }

    void place(const PlacedPoly& c, const PoseTemplate& tpl) {
        saved_sizes_.push_back(points_.size());
        saved_masks_.push_back({});
        for (std::size_t i = 0; i < c.poly.size(); ++i) {
            const std::size_t id = add_vertex(c.poly[i]);
            saved_masks_.back().emplace_back(id, masks_[id]);
            masks_[id] = static_cast<Mask>(masks_[id] | sector_range(tpl.out_dir[i], tpl.angle[i]));
        }
        placed_.push_back(c);
        const PiecePrototype& proto = piece_prototype(c.piece);
        rational_left_ -= proto.rational_eighths;
        sqrt3_left_ -= proto.sqrt3_eighths;
    }

    void unplace() {
        const PiecePrototype& proto = piece_prototype(placed_.back().piece);
        rational_left_ += proto.rational_eighths;
        sqrt3_left_ += proto.sqrt3_eighths;
        placed_.pop_back();
        auto& saved = saved_masks_.back();
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) masks_[it->first] = it->second;
        saved_masks_.pop_back();
        const std::size_t n = saved_sizes_.back();
        saved_sizes_.pop_back();
        while (points_.size() > n) {
            index_.erase(points_.back());
            points_.pop_back();
            masks_.pop_back();
        }
    }

    const ConvexPolygon& region_;
    PartitionOptions opt_;
    const std::function<void(const std::vector<Placement>&)>& visit_;
    std::vector<PoseTemplate> templates_;
    std::vector<Point> points_;
    std::vector<Mask> masks_;
    std::unordered_map<Point, std::size_t, PointHash> index_;
    std::vector<PlacedPoly> placed_;
    std::vector<std::size_t> saved_sizes_;
    std::vector<std::vector<std::pair<std::size_t, Mask>>> saved_masks_;
    std::int64_t rational_left_ = 0;
    std::int64_t sqrt3_left_ = 0;
    PartitionStats stats_;
};

} // namespace

PartitionStats enumerate_partitions(const ConvexPolygon& region, const PartitionOptions& options,
                                    const std::function<void(const std::vector<Placement>&)>& visit) {
    PartitionSearch search(region, options, visit);
    return search.run();
}

} // namespace dodeca
