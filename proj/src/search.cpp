#include "dodeca/search.hpp"

#include "dodeca/analysis.hpp"
#include "dodeca/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace dodeca {

namespace {

const RingValue kHalf = RingValue::half();
const RingValue kHalfSqrt3 = RingValue::normalize(0, 1, 1);

// Area of inflation^2 * parent in units of 1/8: (rational, sqrt3 coefficient).
std::pair<std::int64_t, std::int64_t> area_eighths(Shape parent, const RingValue& inflation) {
    const RingValue a = inflation * inflation * prototype(parent).area * RingValue(8);
    if (a.e() != 0) throw std::invalid_argument("inflated area is not a multiple of 1/8");
    return {a.a(), a.b()};
}

void sequences(const RingValue& left, std::vector<RingValue>& prefix, std::vector<std::vector<RingValue>>& out) {
    if (left.is_zero()) {
        out.push_back(prefix);
        return;
    }
    for (const RingValue& s : {kHalf, kHalfSqrt3, RingValue(1)}) {
        if ((left - s).sign() < 0) continue;
        prefix.push_back(s);
        sequences(left - s, prefix, out);
        prefix.pop_back();
    }
}

SegmentRole role_of_length(const RingValue& len) {
    if (len == kHalf) return SegmentRole::SquareSide;
    if (len == kHalfSqrt3) return SegmentRole::Altitude;
    return SegmentRole::HypotenuseOrRhombSide;
}

// End types along an inflated unit edge. An altitude segment has a right-angle
// end (B) and an apex end (C); a straddling unit square shows two adjacent
// half segments (its midline, ends M); a unit segment has ends U.
enum class End { Corner, B, C, M, U };

bool ends_compatible(End x, End y) {
    auto is = [&](End a, End b) { return (x == a && y == b) || (x == b && y == a); };
    return is(End::B, End::B) || is(End::B, End::M) || is(End::C, End::U) || is(End::C, End::Corner) ||
           is(End::U, End::Corner);
}

// Token strings of the apex orientations under which all neighboring ends of
// the segment sequence are compatible. Tokens: '<' / '>' altitude with its
// apex at the start / end of the reading, "MM" square midline, '1' unit.
std::vector<std::string> unit_edge_realizations(const std::vector<RingValue>& seq) {
    // Half segments come in midline pairs.
    std::vector<std::vector<std::array<End, 2>>> blocks;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] == kHalf) {
            if (i + 1 >= seq.size() || seq[i + 1] != kHalf) return {};
            blocks.push_back({{End::M, End::M}});
            ++i;
        } else if (seq[i] == kHalfSqrt3) {
            blocks.push_back({{End::B, End::C}, {End::C, End::B}});
        } else {
            blocks.push_back({{End::U, End::U}});
        }
    }
    // Every combination of altitude orientations.
    std::vector<std::string> out;
    std::vector<std::size_t> pick(blocks.size(), 0);
    for (;;) {
        bool ok = true;
        End prev = End::Corner;
        std::string tokens;
        for (std::size_t i = 0; i < blocks.size() && ok; ++i) {
            const auto& b = blocks[i][pick[i]];
            ok = ends_compatible(prev, b[0]);
            prev = b[1];
            if (b[0] == End::M) tokens += "MM";
            else if (b[0] == End::U) tokens += '1';
            else tokens += b[0] == End::C ? '<' : '>';
        }
        if (ok && ends_compatible(prev, End::Corner)) out.push_back(tokens);
        std::size_t i = 0;
        while (i < blocks.size() && ++pick[i] == blocks[i].size()) pick[i++] = 0;
        if (i == blocks.size()) return out;
    }
}

} // namespace

std::vector<AreaCounts> solve_area_counts(Shape parent, const RingValue& inflation) {
    const auto [rational, sqrt3] = area_eighths(parent, inflation);
    std::vector<AreaCounts> out;
    if (rational < 0 || sqrt3 < 0) return out;
    // square 1/4 = 2 eighths, rhomb 1/2 = 4 eighths, half-triangle sqrt3/8.
    for (std::int64_t rh = 0; 4 * rh <= rational; ++rh) {
        const std::int64_t rest = rational - 4 * rh;
        if (rest % 2 != 0) continue;
        out.push_back({static_cast<int>(rest / 2), static_cast<int>(rh), static_cast<int>(sqrt3)});
    }
    std::sort(out.begin(), out.end(), [](const AreaCounts& a, const AreaCounts& b) { return a.squares > b.squares; });
    return out;
}

std::vector<std::vector<RingValue>> raw_segment_sequences(const RingValue& edge_length) {
    std::vector<std::vector<RingValue>> out;
    std::vector<RingValue> prefix;
    sequences(edge_length, prefix, out);
    return out;
}

std::vector<EdgeLayout> edge_layouts(const RingValue& edge_length) {
    const RingValue unit = RingValue::lambda();
    const RingValue half_unit = unit.halved(1);
    if (edge_length != unit && edge_length != half_unit)
        throw std::invalid_argument("edge layouts exist for inflated unit and half-unit edges only");
    std::vector<EdgeLayout> out;
    for (const auto& seq : raw_segment_sequences(edge_length)) {
        if (edge_length == unit && unit_edge_realizations(seq).empty()) continue;
        EdgeLayout layout;
        for (const RingValue& len : seq) layout.push_back({len, role_of_length(len)});
        out.push_back(std::move(layout));
    }
    // Square-carrying layout first, then by position of the unit segment.
    std::stable_sort(out.begin(), out.end(), [](const EdgeLayout& a, const EdgeLayout& b) { return a.size() > b.size(); });
    return out;
}

std::string describe(const EdgeLayout& layout) {
    std::string s;
    for (const Segment& seg : layout) {
        if (!s.empty()) s += ' ';
        switch (seg.role) {
        case SegmentRole::SquareSide: s += "half"; break;
        case SegmentRole::ShortLeg: s += "leg"; break;
        case SegmentRole::Altitude: s += "alt"; break;
        case SegmentRole::HypotenuseOrRhombSide: s += "unit"; break;
        }
    }
    return s;
}

std::vector<TriangleCandidate> enumerate_triangle_candidates(Equivalence eq) {
    const std::vector<EdgeLayout> layouts = edge_layouts(RingValue::lambda());
    const int n = static_cast<int>(layouts.size());
    // Reversal of each layout, as an index.
    std::vector<int> reversed(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        EdgeLayout r(layouts[static_cast<std::size_t>(i)].rbegin(), layouts[static_cast<std::size_t>(i)].rend());
        reversed[static_cast<std::size_t>(i)] =
            static_cast<int>(std::find(layouts.begin(), layouts.end(), r) - layouts.begin());
    }
    auto code = [n](const std::array<int, 3>& l) { return (l[0] * n + l[1]) * n + l[2]; };
    std::vector<TriangleCandidate> out;
    std::set<int> seen;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const std::array<int, 3> l{a, b, c};
                if (eq == Equivalence::Raw) {
                    out.push_back({l});
                    continue;
                }
                if (eq == Equivalence::RequireSquare) {
                    if (a == 0) out.push_back({l});
                    continue;
                }
                if (seen.count(code(l))) continue;
                std::vector<std::array<int, 3>> orbit;
                for (int r = 0; r < 3; ++r) orbit.push_back({l[static_cast<std::size_t>(r)], l[static_cast<std::size_t>((r + 1) % 3)],
                                                             l[static_cast<std::size_t>((r + 2) % 3)]});
                if (eq == Equivalence::UpToReflection) {
                    orbit.clear();
                    orbit.push_back(l);
                    orbit.push_back({reversed[static_cast<std::size_t>(a)], reversed[static_cast<std::size_t>(c)],
                                     reversed[static_cast<std::size_t>(b)]});
                }
                if (eq == Equivalence::UpToSymmetry) {
                    // A reflection reverses the boundary order and each layout.
                    for (int r = 0; r < 3; ++r) {
                        std::array<int, 3> m{};
                        for (int i = 0; i < 3; ++i)
                            m[static_cast<std::size_t>(i)] = reversed[static_cast<std::size_t>(l[static_cast<std::size_t>((r - i + 3) % 3)])];
                        orbit.push_back(m);
                    }
                }
                for (const auto& o : orbit) seen.insert(code(o));
                out.push_back({l});
            }
    return out;
}

// ---------------------------------------------------------------- rule search

namespace {

using Sig = std::string;

Sig reverse_sig(const Sig& s) {
    Sig r(s.rbegin(), s.rend());
    for (char& c : r) c = c == '<' ? '>' : c == '>' ? '<' : c;
    return r;
}

std::set<Sig> unit_sigs(const RingValue& inflation) {
    std::set<Sig> out;
    for (const auto& seq : raw_segment_sequences(inflation))
        for (const Sig& t : unit_edge_realizations(seq)) out.insert(t);
    return out;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    const Point d = b - a;
    return cross(d, p - a).is_zero() && dot(p - a, d).sign() >= 0 && dot(p - b, d).sign() <= 0;
}

struct Item {
    RingValue pos;
    Sig text;
};

Sig join(std::vector<Item> items) {
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return (x.pos - y.pos).sign() < 0; });
    Sig out;
    for (const Item& it : items) out += it.text;
    return out;
}

std::vector<Point> piece_vertices(const Placement& pl) {
    std::vector<Point> out;
    for (const Point& v : piece_prototype(pl.piece).polygon.vertices()) out.push_back(pl.pose.apply(v));
    return out;
}

// Boundary token of piece edge j (u -> w) lying on segment a -> b.
Sig piece_token(const Placement& pl, std::size_t j, const Point& u, const Point& w, const Point& a, const Point& b) {
    switch (pl.piece) {
    case Piece::Rhomb:
    case Piece::Triangle:
    case Piece::UnitSquare: return "1";
    case Piece::Half: {
        if (j == 0) return "L";
        if (j == 2) return "1";
        const Point apex = pl.pose.apply(piece_prototype(Piece::Half).polygon[2]);
        const bool u_first = (dot(u - a, b - a) - dot(w - a, b - a)).sign() < 0;
        return (apex == u) == u_first ? "<" : ">";
    }
    case Piece::HalfSquare: return j == 0 ? "MM" : j == 2 ? "1" : "s";
    case Piece::QuarterSquare: return j == 0 || j == 3 ? "M" : "s";
    }
    return "?";
}

Sig boundary_sig(const std::vector<Placement>& pieces, const Point& a, const Point& b) {
    std::vector<Item> items;
    for (const Placement& pl : pieces) {
        const auto v = piece_vertices(pl);
        for (std::size_t j = 0; j < v.size(); ++j) {
            const Point& u = v[j];
            const Point& w = v[(j + 1) % v.size()];
            if (!on_segment(u, a, b) || !on_segment(w, a, b)) continue;
            const RingValue pu = dot(u - a, b - a), pw = dot(w - a, b - a);
            items.push_back({(pu - pw).sign() < 0 ? pu : pw, piece_token(pl, j, u, w, a, b)});
        }
    }
    return join(std::move(items));
}

TileKind parent_kind(Shape s) {
    switch (s) {
    case Shape::Square: return TileKind::Square;
    case Shape::Rhomb: return TileKind::Rhomb;
    case Shape::HalfTriangle: return TileKind::HalfGray;
    }
    return TileKind::Square;
}

// The four poses under which a rhomb covers the same region: identity, the
// half turn about its center, the reflection in its acute diagonal, and both.
const std::array<Isometry, 4>& rhomb_symmetries() {
    static const std::array<Isometry, 4> syms = [] {
        const Isometry half_turn{6, false, {RingValue(1) + kHalfSqrt3, kHalf}};
        const Isometry diagonal{1, true, {}};
        return std::array<Isometry, 4>{Isometry::identity(), half_turn, diagonal, compose(half_turn, diagonal)};
    }();
    return syms;
}

// Quarter-square tiles inside a unit-square piece: corner 0 on the square's
// center, never reflected.
std::vector<Isometry> quarter_poses(const Placement& pl) {
    Point center{};
    if (pl.piece == Piece::UnitSquare) center = {kHalf, kHalf};
    else if (pl.piece == Piece::HalfSquare) center = {kHalf, 0};
    const Point c = pl.pose.apply(center);
    const ConvexPolygon region(convex_hull(piece_vertices(pl)));
    std::vector<Isometry> out;
    for (int k = 0; k < 12; ++k) {
        const Isometry q{k, false, c};
        bool inside = true;
        for (const Point& v : prototype(Shape::Square).polygon.vertices())
            inside = inside && point_in_convex(q.apply(v), region) != Location::Outside;
        if (inside) out.push_back(q);
    }
    return out;
}

struct SharedSide {
    std::size_t i, j;
    Point p, q;
};

struct PartitionInfo {
    Shape parent;
    std::size_t index = 0;
    std::vector<Placement> pieces;
    std::vector<Sig> sides;
    std::vector<std::vector<Isometry>> quarters;
    std::vector<SharedSide> shared;
    std::optional<std::size_t> apex;  // piece at the half-triangle apex
    std::optional<std::size_t> acute; // piece at rhomb corner 0
};

PartitionInfo describe_partition(Shape parent, std::size_t index, const ConvexPolygon& region,
                                 std::vector<Placement> pieces) {
    PartitionInfo info{parent, index, std::move(pieces), {}, {}, {}, {}, {}};
    for (std::size_t e = 0; e < region.size(); ++e)
        info.sides.push_back(boundary_sig(info.pieces, region[e], region[(e + 1) % region.size()]));
    std::map<EdgeKey, std::vector<std::size_t>> by_edge;
    for (std::size_t i = 0; i < info.pieces.size(); ++i) {
        const Placement& pl = info.pieces[i];
        info.quarters.push_back(pl.piece == Piece::UnitSquare || pl.piece == Piece::HalfSquare ||
                                        pl.piece == Piece::QuarterSquare
                                    ? quarter_poses(pl)
                                    : std::vector<Isometry>{});
        const auto v = piece_vertices(pl);
        for (std::size_t j = 0; j < v.size(); ++j) {
            by_edge[make_edge_key(v[j], v[(j + 1) % v.size()])].push_back(i);
            if (parent == Shape::HalfTriangle && v[j] == region[2]) info.apex = i;
            if (parent == Shape::Rhomb && v[j] == region[0]) info.acute = i;
        }
    }
    for (const auto& [key, owners] : by_edge)
        if (owners.size() == 2) info.shared.push_back({owners[0], owners[1], key.p, key.q});
    return info;
}

bool boundary_consistent(const PartitionInfo& info, const std::set<Sig>& u) {
    const auto& s = info.sides;
    switch (info.parent) {
    case Shape::Square:
        // Four copies around the shared corner 0: the outer sides of two
        // neighbors make a unit side, the inner sides meet each other.
        return u.count(s[2] + s[1]) && s[0] == reverse_sig(s[3]);
    case Shape::HalfTriangle:
        // Short legs of mates make a unit side.
        return u.count(s[0] + reverse_sig(s[0])) && u.count(s[2]);
    case Shape::Rhomb: return std::all_of(s.begin(), s.end(), [&](const Sig& x) { return u.count(x) > 0; });
    }
    return false;
}

// Boundary layouts of every child tile at the next level, per kind and
// prototype edge, read from vertex i to vertex i + 1.
struct NextSigs {
    std::array<std::vector<Sig>, kKindCount> edges;
};

// Label of a piece: rhomb symmetry index, half color (both halves of a whole
// triangle), unused for squares.
std::vector<Child> piece_children(const PartitionInfo& info, std::size_t i, int label) {
    const Placement& pl = info.pieces[i];
    switch (pl.piece) {
    case Piece::Rhomb: return {{TileKind::Rhomb, compose(pl.pose, rhomb_symmetries()[static_cast<std::size_t>(label)])}};
    case Piece::Half: return {{static_cast<TileKind>(label), pl.pose}};
    case Piece::Triangle:
        return {{static_cast<TileKind>(label), pl.pose},
                {static_cast<TileKind>(label), compose(pl.pose, Isometry{6, true, {1, 0}})}};
    default: {
        std::vector<Child> out;
        for (const Isometry& q : info.quarters[i]) out.push_back({TileKind::Square, q});
        return out;
    }
    }
}

Sig next_sig(const std::vector<Child>& children, const NextSigs& ns, const Point& a, const Point& b) {
    std::vector<Item> items;
    for (const Child& c : children) {
        const PlacedTile t{c.kind, c.pose};
        const auto& sigs = ns.edges[static_cast<std::size_t>(index_of(c.kind))];
        const std::size_t n = prototype(c.kind).polygon.size();
        for (std::size_t e = 0; e < n; ++e) {
            const Point u = vertex(t, e), w = vertex(t, (e + 1) % n);
            if (!on_segment(u, a, b) || !on_segment(w, a, b)) continue;
            const RingValue pu = dot(u - a, b - a), pw = dot(w - a, b - a);
            items.push_back({(pu - pw).sign() < 0 ? pu : pw, (pw - pu).sign() > 0 ? sigs[e] : reverse_sig(sigs[e])});
        }
    }
    return join(std::move(items));
}

// Every labeling whose internally shared sides present identical layouts
// from both sides at the next level.
std::vector<std::vector<int>> solve_labels(const PartitionInfo& info, const std::vector<std::vector<int>>& domains,
                                           const NextSigs& ns) {
    const std::size_t n = info.pieces.size();
    std::vector<std::vector<const SharedSide*>> closing(n);
    for (const SharedSide& s : info.shared) closing[std::max(s.i, s.j)].push_back(&s);
    std::vector<int> label(n, -1);
    std::vector<std::vector<Child>> kids(n);
    std::vector<std::vector<int>> out;
    const std::function<void(std::size_t)> step = [&](std::size_t i) {
        if (i == n) {
            out.push_back(label);
            return;
        }
        for (int l : domains[i]) {
            label[i] = l;
            kids[i] = piece_children(info, i, l);
            bool ok = true;
            for (const SharedSide* s : closing[i]) {
                if (next_sig(kids[s->i], ns, s->p, s->q) != next_sig(kids[s->j], ns, s->p, s->q)) {
                    ok = false;
                    break;
                }
            }
            if (ok) step(i + 1);
        }
    };
    step(0);
    return out;
}

SubstitutionRule make_rule(const PartitionInfo& info, const std::vector<int>& labels, TileKind parent) {
    SubstitutionRule r;
    r.parent = parent;
    for (std::size_t i = 0; i < info.pieces.size(); ++i)
        for (const Child& c : piece_children(info, i, labels[i])) r.children.push_back(c);
    std::sort(r.children.begin(), r.children.end(), [](const Child& a, const Child& b) {
        return canonical_less(PlacedTile{a.kind, a.pose}, PlacedTile{b.kind, b.pose});
    });
    return r;
}

} // namespace

namespace {

struct Catalog {
    std::array<std::size_t, 3> raw{};
    std::vector<PartitionInfo> square, half, rhomb;
    std::set<Sig> unit;
    bool budget_exceeded = false;
};

Catalog build_catalog(const SearchOptions& options) {
    Catalog cat;
    cat.unit = unit_sigs(options.inflation);
    const std::array<Shape, 3> shapes{Shape::Square, Shape::HalfTriangle, Shape::Rhomb};
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        const ConvexPolygon region = inflated_parent(parent_kind(shapes[s]), options.inflation);
        PartitionOptions po;
        po.node_budget = options.node_budget;
        po.whole_triangles = options.whole_triangles;
        auto& dest = s == 0 ? cat.square : s == 1 ? cat.half : cat.rhomb;
        const PartitionStats st = enumerate_partitions(region, po, [&](const std::vector<Placement>& pieces) {
            PartitionInfo info = describe_partition(shapes[s], cat.raw[s]++, region, pieces);
            if (boundary_consistent(info, cat.unit)) dest.push_back(std::move(info));
        });
        cat.budget_exceeded = cat.budget_exceeded || st.budget_exceeded;
    }
    return cat;
}

// Side layouts assumed for every parent kind at the next level.
struct Hypothesis {
    std::vector<Sig> square, rhomb;
    Sig leg, altitude;
    std::array<Sig, 3> hyp; // gray, yellow, blue
};

NextSigs next_sigs(const Hypothesis& h) {
    NextSigs ns;
    ns.edges[static_cast<std::size_t>(index_of(TileKind::Square))] = h.square;
    ns.edges[static_cast<std::size_t>(index_of(TileKind::Rhomb))] = h.rhomb;
    for (int c = 0; c < 3; ++c)
        ns.edges[static_cast<std::size_t>(index_of(TileKind::HalfGray) + c)] = {h.leg, h.altitude, h.hyp[static_cast<std::size_t>(c)]};
    return ns;
}

const std::vector<int> kAllColors{index_of(TileKind::HalfGray), index_of(TileKind::HalfYellow), index_of(TileKind::HalfBlue)};

std::vector<std::vector<int>> domains_for(const PartitionInfo& info, const std::vector<int>& colors) {
    std::vector<std::vector<int>> d;
    for (const Placement& pl : info.pieces) {
        if (pl.piece == Piece::Rhomb) d.push_back({0, 1, 2, 3});
        else if (pl.piece == Piece::Half || pl.piece == Piece::Triangle) d.push_back(colors);
        else d.push_back({-1});
    }
    return d;
}

struct Candidate {
    SubstitutionRule rule;
    const PartitionInfo* partition;
    std::vector<int> labels;
};

struct RuleCandidates {
    std::vector<Candidate> square, rhomb;
    std::array<std::vector<Candidate>, 3> halves; // gray, yellow, blue
};

void collect(const PartitionInfo& info, const std::vector<std::vector<int>>& domains, const NextSigs& ns,
             TileKind parent, std::vector<Candidate>& out) {
    for (auto& labels : solve_labels(info, domains, ns)) {
        SubstitutionRule r = make_rule(info, labels, parent);
        // Distinct partitions can coincide once split into tiles.
        if (std::none_of(out.begin(), out.end(), [&](const Candidate& o) { return o.rule.children == r.children; }))
            out.push_back({std::move(r), &info, std::move(labels)});
    }
}

std::string label_text(const Candidate& c) {
    std::string d = "part" + std::to_string(c.partition->index) + ":";
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        const Piece p = c.partition->pieces[i].piece;
        if (p == Piece::Rhomb) d += " R" + std::to_string(c.labels[i]);
        else if (p == Piece::Half) d += std::string(" ") + "?gyb"[c.labels[i] - 1];
        else d += " q";
    }
    return d;
}

// Rule candidates under a hypothesis. Apex constraints: squares hold yellow
// halves only, rhombs hold gray and blue halves and keep a rhomb on their
// acute corner 0, yellow halves carry a rhomb at the apex, gray and blue
// halves a yellow half.
RuleCandidates candidates_for(const Hypothesis& h, const Catalog& cat, bool apex_rules) {
    const NextSigs ns = next_sigs(h);
    RuleCandidates rc;
    const std::vector<int> yellow{index_of(TileKind::HalfYellow)};
    const std::vector<int> gray_blue{index_of(TileKind::HalfGray), index_of(TileKind::HalfBlue)};
    const std::vector<int> gray_only{index_of(TileKind::HalfGray)};
    for (const PartitionInfo& p : cat.square)
        if (p.sides == h.square) collect(p, domains_for(p, apex_rules ? yellow : gray_only), ns, TileKind::Square, rc.square);
    for (const PartitionInfo& p : cat.rhomb) {
        if (p.sides != h.rhomb) continue;
        auto d = domains_for(p, apex_rules ? gray_blue : gray_only);
        if (apex_rules) {
            if (!p.acute || p.pieces[*p.acute].piece != Piece::Rhomb) continue;
            d[*p.acute] = {0};
        }
        collect(p, d, ns, TileKind::Rhomb, rc.rhomb);
    }

    const std::array<TileKind, 3> colors{TileKind::HalfGray, TileKind::HalfYellow, TileKind::HalfBlue};
    for (std::size_t c = 0; c < 3; ++c) {
        if (!apex_rules && c != 0) continue;
        for (const PartitionInfo& p : cat.half) {
            if (p.sides[0] != h.leg || p.sides[1] != h.altitude || p.sides[2] != h.hyp[c]) continue;
            auto d = domains_for(p, apex_rules ? kAllColors : gray_only);
            if (apex_rules) {
                const Piece at_apex = p.pieces[*p.apex].piece;
                if (colors[c] == TileKind::HalfYellow && at_apex != Piece::Rhomb) continue;
                if (colors[c] != TileKind::HalfYellow) {
                    if (at_apex != Piece::Half) continue;
                    d[*p.apex] = yellow;
                }
            }
            collect(p, d, ns, colors[c], rc.halves[c]);
        }
    }
    return rc;
}

std::vector<Hypothesis> hypotheses(const Catalog& cat, bool apex_rules) {
    std::set<std::pair<Sig, Sig>> groups;
    for (const PartitionInfo& p : cat.half) groups.insert({p.sides[0], p.sides[1]});
    std::set<std::vector<Sig>> squares, rhombs;
    for (const PartitionInfo& p : cat.square) squares.insert(p.sides);
    for (const PartitionInfo& p : cat.rhomb) rhombs.insert(p.sides);
    std::vector<Hypothesis> out;
    for (const auto& sq : squares)
        for (const auto& rh : rhombs)
            for (const auto& [leg, alt] : groups) {
                std::set<Sig> yellow_hyps, other_hyps, any_hyps;
                for (const PartitionInfo& p : cat.half) {
                    if (p.sides[0] != leg || p.sides[1] != alt) continue;
                    any_hyps.insert(p.sides[2]);
                    (p.pieces[*p.apex].piece == Piece::Rhomb ? yellow_hyps : other_hyps).insert(p.sides[2]);
                }
                if (!apex_rules) {
                    for (const Sig& g : any_hyps) out.push_back({sq, rh, leg, alt, {g, g, g}});
                    continue;
                }
                for (const Sig& g : other_hyps)
                    for (const Sig& y : yellow_hyps)
                        for (const Sig& b : other_hyps) out.push_back({sq, rh, leg, alt, {g, y, b}});
            }
    return out;
}

} // namespace

namespace {

// Tile content of a rule up to rhomb orientation.
std::vector<TileSignature> content(const std::vector<Child>& children, const Isometry& frame = {}) {
    std::vector<TileSignature> keys;
    for (const Child& c : children) {
        const PlacedTile t{c.kind, compose(frame, c.pose)};
        TileSignature s = signature(t, false);
        if (t.kind == TileKind::Square) s.vertices.push_back(vertex(t, 0));
        keys.push_back(std::move(s));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

// True iff the rhomb rule looks the same from all four symmetric poses, so
// the orientation of rhomb children never matters.
bool rhomb_rule_symmetric(const SubstitutionRule& r, const RingValue& inflation) {
    const auto base = content(r.children);
    for (const Isometry& s : rhomb_symmetries()) {
        const Isometry scaled{s.k, s.mirror, inflation * s.t};
        if (content(r.children, scaled) != base) return false;
    }
    return true;
}

// True iff the quarter-square rule is mirror symmetric about the diagonal
// through the composite square's center.
bool square_rule_symmetric(const SubstitutionRule& r) {
    return content(r.children, Isometry{3, true, {}}) == content(r.children);
}

// Keeps the first candidate of every class; with a symmetric rhomb rule,
// candidates differing only in rhomb orientation form one class.
std::vector<Candidate> distinct(const std::vector<Candidate>& in, bool ignore_rhomb_pose) {
    std::vector<Candidate> out;
    std::set<std::vector<TileSignature>> seen;
    for (const Candidate& c : in) {
        if (ignore_rhomb_pose && !seen.insert(content(c.rule.children)).second) continue;
        out.push_back(c);
    }
    return out;
}

const std::array<TileKind, 3> kHalfKinds{TileKind::HalfGray, TileKind::HalfYellow, TileKind::HalfBlue};

std::string rule_set_name(const RingValue& inflation) {
    // a + b sqrt(3) reads "apb3", e.g. dodeca-1p3 for 1 + sqrt(3).
    const std::string b = inflation.b() == 1 ? "" : std::to_string(inflation.b());
    return "dodeca-" + std::to_string(inflation.a()) + "p" + b + "3";
}

RuleSet assemble(const RingValue& inflation, const Candidate& square, const Candidate& rhomb,
                 const std::array<std::vector<Candidate>, 3>& halves) {
    RuleSet rs;
    rs.name = rule_set_name(inflation);
    rs.inflation = inflation;
    auto put = [&](const Candidate& c, TileKind kind, int variant) {
        SubstitutionRule r = c.rule;
        r.parent = kind;
        r.variant = variant;
        rs.rules[{kind, variant}] = std::move(r);
    };
    put(square, TileKind::Square, 1);
    put(rhomb, TileKind::Rhomb, 1);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t v = 0; v < halves[c].size(); ++v) put(halves[c][v], kHalfKinds[c], static_cast<int>(v) + 1);
    return rs;
}

std::vector<VariantChoice> all_choices(const RuleSet& rs) {
    std::vector<VariantChoice> out;
    for (int g = 1; g <= rs.variant_count(TileKind::HalfGray); ++g)
        for (int y = 1; y <= rs.variant_count(TileKind::HalfYellow); ++y) out.push_back({g, y});
    return out;
}

bool patch_ok(SeedKind seed, int generations, const RuleSet& rs, const VariantChoice& choice) {
    try {
        return verify_patch(iterate(make_seed(seed, seed_colors(rs)), generations, rs, choice)).passed();
    } catch (const std::exception&) {
        return false;
    }
}

bool square_ok(const RuleSet& rs, const SearchOptions& o) {
    for (const VariantChoice& ch : all_choices(rs))
        if (!patch_ok(SeedKind::Square, o.square_generations, rs, ch)) return false;
    return true;
}

// Seed colors for which every choice grows a verified rosette; among those,
// prefer colors under which the rosette reappears unchanged, colors included.
std::optional<std::pair<TileKind, TileKind>> pick_seed_colors(RuleSet& rs, const SearchOptions& o) {
    std::optional<std::pair<TileKind, TileKind>> fallback;
    for (TileKind ccw : kHalfKinds)
        for (TileKind cw : kHalfKinds) {
            rs.metadata = {{"seed-halves", std::string(kind_name(ccw)) + " " + std::string(kind_name(cw))}};
            bool ok = true;
            bool nested = true;
            for (const VariantChoice& ch : all_choices(rs)) {
                ok = ok && patch_ok(SeedKind::Rosette, o.rosette_generations, rs, ch);
                const Patch seed = make_seed(SeedKind::Rosette, seed_colors(rs));
                nested = nested && verify_nesting(seed, substitute_once(seed, rs, ch), NestingMode::StrictColors);
                if (!ok) break;
            }
            if (ok && nested) return std::pair{ccw, cw};
            if (ok && !fallback) fallback = std::pair{ccw, cw};
        }
    return fallback;
}

} // namespace

std::string SearchReport::text() const {
    std::ostringstream out;
    out << "triangle candidates, raw: " << raw_candidates << "\n";
    out << "triangle candidates, up to the base reflection: " << reflection_classes << "\n";
    out << "triangle candidates, up to rotation: " << rotation_classes << "\n";
    out << "triangle candidates, up to rotation and reflection: " << symmetry_classes << "\n";
    out << "triangle candidates, square on the base: " << with_square << "\n";
    const char* names[3] = {"square", "half-triangle", "rhomb"};
    for (std::size_t i = 0; i < 3; ++i)
        out << "partitions of the inflated " << names[i] << ": " << partitions[i] << ", with valid side layouts "
            << boundary_consistent[i] << "\n";
    out << "side-layout hypotheses: " << hypotheses << ", viable " << viable_hypotheses << "\n";
    out << "consistent rule sets: " << consistent_rule_sets << "\n";
    out << "gray-only triangle substitution: " << (gray_only_triangle_exists ? "exists" : "none") << "\n";
    if (budget_exceeded) out << "search budget exceeded; results are partial\n";
    for (const std::string& n : notes) out << "note: " << n << "\n";
    return out.str();
}

namespace {

// Most symmetric rhomb rule first; with full symmetry the orientation of
// every rhomb child is immaterial and candidates collapse accordingly.
struct Reduced {
    std::vector<Candidate> squares, rhombs;
    std::array<std::vector<Candidate>, 3> halves;
};

Reduced reduce(const RuleCandidates& rc, const RingValue& inflation) {
    Reduced r;
    const auto sym = std::find_if(rc.rhomb.begin(), rc.rhomb.end(),
                                  [&](const Candidate& c) { return rhomb_rule_symmetric(c.rule, inflation); });
    const bool free_rhombs = sym != rc.rhomb.end();
    r.rhombs = free_rhombs ? std::vector<Candidate>{*sym} : rc.rhomb;
    r.squares = distinct(rc.square, free_rhombs);
    for (std::size_t c = 0; c < 3; ++c) r.halves[c] = distinct(rc.halves[c], free_rhombs);
    return r;
}

bool viable(const RuleCandidates& rc, bool single_color) {
    if (rc.square.empty() || rc.rhomb.empty() || rc.halves[0].empty()) return false;
    return single_color || (!rc.halves[1].empty() && !rc.halves[2].empty());
}

// Rule sets with three colored half-triangle kinds under the apex rules.
void colored_rule_sets(const Catalog& cat, const SearchOptions& options, SearchResult& result) {
    SearchReport& rep = result.report;
    for (const Hypothesis& h : hypotheses(cat, true)) {
        ++rep.hypotheses;
        const RuleCandidates rc = candidates_for(h, cat, true);
        if (!viable(rc, false)) continue;
        ++rep.viable_hypotheses;
        const Reduced r = reduce(rc, options.inflation);
        std::ostringstream o;
        o << "hypotenuse layouts gray " << h.hyp[0] << ", yellow " << h.hyp[1] << ", blue " << h.hyp[2] << ": "
          << r.squares.size() << " square, " << r.rhombs.size() << " rhomb, " << r.halves[0].size() << " gray, "
          << r.halves[1].size() << " yellow, " << r.halves[2].size() << " blue rules";
        rep.notes.push_back(o.str());
        if (r.halves[2].size() != 1 || r.halves[0].size() > 3 || r.halves[1].size() > 3) {
            rep.notes.push_back("  not representable: blue needs exactly one rule, gray and yellow at most three");
            continue;
        }
        for (const Candidate& sq : r.squares)
            for (const Candidate& rh : r.rhombs) {
                RuleSet rs = assemble(options.inflation, sq, rh, r.halves);
                if (!square_ok(rs, options)) {
                    rep.notes.push_back("  square seed fails verification");
                    continue;
                }
                const auto colors = pick_seed_colors(rs, options);
                if (!colors) {
                    rep.notes.push_back("  no rosette seed coloring verifies");
                    continue;
                }
                rs.metadata = {{"seed-halves", std::string(kind_name(colors->first)) + " " + std::string(kind_name(colors->second))}};
                for (std::size_t c = 0; c < 3; ++c)
                    for (std::size_t v = 0; v < r.halves[c].size(); ++v)
                        rep.notes.push_back("  " + std::string(kind_name(kHalfKinds[c])) + " variant " +
                                            std::to_string(v + 1) + ": " + label_text(r.halves[c][v]));
                result.rule_sets.push_back(std::move(rs));
            }
    }
}

// Rule sets whose half-triangles all carry one color, without apex rules.
// Symmetric square rules are tried first, and the search stops at the first
// rule set that verifies.
std::vector<RuleSet> single_color_rule_sets(const Catalog& cat, const SearchOptions& options, SearchReport& rep) {
    std::vector<RuleSet> out;
    std::size_t tried = 0, hyps = 0, good = 0;
    for (const Hypothesis& h : hypotheses(cat, false)) {
        ++hyps;
        if (!out.empty()) continue;
        const RuleCandidates rc = candidates_for(h, cat, false);
        if (!viable(rc, true)) continue;
        ++good;
        Reduced r = reduce(rc, options.inflation);
        std::vector<Candidate> symmetric;
        for (const Candidate& c : r.squares)
            if (square_rule_symmetric(c.rule)) symmetric.push_back(c);
        if (!symmetric.empty()) r.squares = std::move(symmetric);
        for (const Candidate& sq : r.squares)
            for (const Candidate& rh : r.rhombs)
                for (const Candidate& g : r.halves[0]) {
                    if (!out.empty()) break;
                    ++tried;
                    RuleSet rs = assemble(options.inflation, sq, rh, {std::vector<Candidate>{g}, {g}, {g}});
                    rs.metadata = {{"seed-halves", "gray gray"}};
                    if (square_ok(rs, options) && patch_ok(SeedKind::Rosette, options.rosette_generations, rs, {})) {
                        rep.notes.push_back("single color rules: square " + label_text(sq) + ", rhomb " + label_text(rh) +
                                            ", half " + label_text(g));
                        out.push_back(std::move(rs));
                    }
                }
    }
    rep.notes.push_back("single color: " + std::to_string(hyps) + " hypotheses, " + std::to_string(good) +
                        " examined with every rule nonempty, " + std::to_string(tried) + " rule sets iterated, " +
                        std::to_string(out.size()) + " verified");
    return out;
}

} // namespace

SearchResult search_consistent_rule_sets(const SearchOptions& options) {
    SearchResult result;
    SearchReport& rep = result.report;
    rep.raw_candidates = enumerate_triangle_candidates(Equivalence::Raw).size();
    rep.reflection_classes = enumerate_triangle_candidates(Equivalence::UpToReflection).size();
    rep.rotation_classes = enumerate_triangle_candidates(Equivalence::UpToRotation).size();
    rep.symmetry_classes = enumerate_triangle_candidates(Equivalence::UpToSymmetry).size();
    rep.with_square = enumerate_triangle_candidates(Equivalence::RequireSquare).size();
    rep.notes.push_back("orbit counts of the 27 layout assignments under the subgroups of the triangle's symmetry group are " +
                        std::to_string(rep.raw_candidates) + ", " + std::to_string(rep.reflection_classes) + ", " +
                        std::to_string(rep.rotation_classes) + ", " + std::to_string(rep.symmetry_classes) +
                        "; none of them is 13");

    const Catalog cat = build_catalog(options);
    rep.budget_exceeded = cat.budget_exceeded;
    rep.partitions = cat.raw;
    rep.boundary_consistent = {cat.square.size(), cat.half.size(), cat.rhomb.size()};

    // The three-color apex rules belong to the 1 + sqrt(3) tiling; other
    // inflations are searched with a single triangle color.
    const bool colored = options.inflation == RingValue::lambda();
    if (colored) {
        colored_rule_sets(cat, options, result);
        rep.gray_only_triangle_exists = !single_color_rule_sets(cat, options, rep).empty();
    } else {
        result.rule_sets = single_color_rule_sets(cat, options, rep);
        rep.gray_only_triangle_exists = !result.rule_sets.empty();
    }
    rep.consistent_rule_sets = result.rule_sets.size();
    std::vector<std::pair<std::string, RuleSet>> keyed;
    for (RuleSet& rs : result.rule_sets) keyed.emplace_back(serialize(rs), std::move(rs));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    result.rule_sets.clear();
    for (auto& [key, rs] : keyed) result.rule_sets.push_back(std::move(rs));
    return result;
}

} // namespace dodeca
