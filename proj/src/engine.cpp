#include "dodeca/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace dodeca {

namespace {

const RingValue kHalf = RingValue::half();
const RingValue kHalfSqrt3 = RingValue::normalize(0, 1, 1);

// Half-triangle with its right-angle vertex at `b`, altitude pointing from
// the apex toward direction k, on the counterclockwise (ccw) or clockwise side.
PlacedTile rosette_half(TileKind kind, int k, bool ccw) {
    PlacedTile t;
    t.kind = kind;
    t.pose.mirror = ccw;
    t.pose.k = ((ccw ? k - 3 : k + 3) % 12 + 12) % 12;
    const Point b = (RingValue(1) + kHalfSqrt3) * direction(k);
    const Point proto_b{kHalf, 0};
    t.pose.t = b - t.pose.apply_linear(proto_b);
    return t;
}

} // namespace

SeedColors seed_colors(const RuleSet& rs) {
    SeedColors c;
    for (const auto& [key, value] : rs.metadata) {
        if (key != "seed-halves") continue;
        const auto space = value.find(' ');
        const auto ccw = parse_kind(value.substr(0, space));
        const auto cw = space == std::string::npos ? std::nullopt : parse_kind(value.substr(space + 1));
        if (!ccw || !cw || !is_half_triangle(*ccw) || !is_half_triangle(*cw))
            throw RuleValidationError("bad seed-halves metadata '" + value + "'");
        c.ccw = *ccw;
        c.cw = *cw;
    }
    return c;
}

Patch make_seed(SeedKind kind, const SeedColors& colors) {
    Patch p;
    p.seed = kind;
    switch (kind) {
    case SeedKind::Square:
        p.tiles.push_back({TileKind::Square, Isometry::identity()});
        break;
    case SeedKind::Rhomb:
        p.tiles.push_back({TileKind::Rhomb, Isometry::identity()});
        break;
    case SeedKind::Equilateral:
    case SeedKind::HalfTrianglePair: {
        // Base on the x-axis from (0,0) to (1,0), apex up; mated along x = 1/2.
        const TileKind right = kind == SeedKind::Equilateral ? colors.cw : TileKind::HalfYellow;
        const TileKind left = kind == SeedKind::Equilateral ? colors.ccw : TileKind::HalfGray;
        p.tiles.push_back({left, Isometry::identity()});
        p.tiles.push_back({right, Isometry{6, true, {1, 0}}});
        break;
    }
    case SeedKind::Rosette:
    case SeedKind::Dodecagon:
        for (int k = 0; k < 12; ++k) {
            p.tiles.push_back({TileKind::Rhomb, Isometry::rotation(k)});
            p.tiles.push_back(rosette_half(colors.ccw, k, true));
            p.tiles.push_back(rosette_half(colors.cw, k, false));
        }
        break;
    }
    p.sort_canonical();
    return p;
}

Isometry child_world_pose(const Isometry& parent, const Isometry& child, const RingValue& inflation) {
    Isometry scaled = parent;
    scaled.t = inflation * parent.t;
    return compose(scaled, child);
}

namespace {

// Child lists per (kind, variant) under the fixed choice, unmirrored frame.
std::array<const SubstitutionRule*, kKindCount> resolve_rules(const RuleSet& rs, const VariantChoice& choice) {
    check_choice(rs, choice);
    std::array<const SubstitutionRule*, kKindCount> out{};
    for (TileKind k : kAllKinds) {
        int variant = 1;
        if (k == TileKind::HalfGray) variant = choice.gray;
        if (k == TileKind::HalfYellow) variant = choice.yellow;
        const auto it = rs.rules.find({k, variant});
        if (it == rs.rules.end())
            throw std::out_of_range("missing rule for " + std::string(kind_name(k)));
        out[static_cast<std::size_t>(index_of(k))] = &it->second;
    }
    return out;
}

} // namespace

std::size_t predicted_size(const Patch& patch, const RuleSet& rs, const VariantChoice& choice) {
    const auto rules = resolve_rules(rs, choice);
    std::size_t n = 0;
    for (const PlacedTile& t : patch.tiles) n += rules[static_cast<std::size_t>(index_of(t.kind))]->children.size();
    return n;
}

Patch substitute_once_serial(const Patch& patch, const RuleSet& rs, const VariantChoice& choice) {
    const auto rules = resolve_rules(rs, choice);
    Patch out;
    out.generation = patch.generation + 1;
    out.choice = choice;
    out.seed = patch.seed;
    for (const PlacedTile& t : patch.tiles)
        for (const Child& c : rules[static_cast<std::size_t>(index_of(t.kind))]->children)
            out.tiles.push_back({c.kind, child_world_pose(t.pose, c.pose, rs.inflation)});
    out.sort_canonical();
    return out;
}

Patch substitute_once(const Patch& patch, const RuleSet& rs, const VariantChoice& choice) {
    const auto rules = resolve_rules(rs, choice);
    const std::size_t n = patch.tiles.size();
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        offset[i + 1] = offset[i] + rules[static_cast<std::size_t>(index_of(patch.tiles[i].kind))]->children.size();

    Patch out;
    out.generation = patch.generation + 1;
    out.choice = choice;
    out.seed = patch.seed;
    out.tiles.resize(offset[n]);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const PlacedTile& t = patch.tiles[static_cast<std::size_t>(i)];
        std::size_t at = offset[static_cast<std::size_t>(i)];
        for (const Child& c : rules[static_cast<std::size_t>(index_of(t.kind))]->children)
            out.tiles[at++] = {c.kind, child_world_pose(t.pose, c.pose, rs.inflation)};
    }
    out.sort_canonical();
    return out;
}

Patch iterate(const Patch& seed, int generations, const RuleSet& rs, const VariantChoice& choice, std::size_t budget) {
    if (generations < 0) throw std::invalid_argument("generation count must be non-negative");
    Patch p = seed;
    p.choice = choice;
    for (int g = 0; g < generations; ++g) {
        const std::size_t next = predicted_size(p, rs, choice);
        if (next > budget)
            throw BudgetExceeded("generation " + std::to_string(p.generation + 1) + " would hold " + std::to_string(next) +
                                 " tiles, over the budget of " + std::to_string(budget));
        p = substitute_once(p, rs, choice);
    }
    return p;
}

Patch iterate(SeedKind seed, int generations, const RuleSet& rs, const VariantChoice& choice, std::size_t budget) {
    return iterate(make_seed(seed, seed_colors(rs)), generations, rs, choice, budget);
}

std::int64_t Census::half_triangles() const {
    return (*this)[TileKind::HalfGray] + (*this)[TileKind::HalfYellow] + (*this)[TileKind::HalfBlue];
}

std::int64_t Census::total() const { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

Census census(const Patch& patch) {
    Census c;
    std::map<EdgeKey, int> altitudes;
    for (const PlacedTile& t : patch.tiles) {
        ++c.counts[static_cast<std::size_t>(index_of(t.kind))];
        if (!is_half_triangle(t.kind)) continue;
        for (const TaggedEdge& e : edge_keys(t))
            if (e.role == EdgeRole::Altitude) ++altitudes[e.key];
    }
    for (const auto& [key, n] : altitudes)
        if (n == 2) ++c.equilaterals;
    return c;
}

} // namespace dodeca
