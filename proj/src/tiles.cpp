#include "dodeca/tiles.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace dodeca {

namespace {

const RingValue kHalf = RingValue::half();
const RingValue kHalfSqrt3 = RingValue::normalize(0, 1, 1);

Prototype make_prototype(TileKind kind) {
    switch (shape_of(kind)) {
    case Shape::Square:
        return {kind,
                ConvexPolygon({{0, 0}, {kHalf, 0}, {kHalf, kHalf}, {0, kHalf}}),
                {"corner0", "corner1", "corner2", "corner3"},
                {EdgeRole::Side, EdgeRole::Side, EdgeRole::Side, EdgeRole::Side},
                RingValue::normalize(1, 0, 2)};
    case Shape::Rhomb:
        return {kind,
                ConvexPolygon({{0, 0}, {1, 0}, {RingValue(1) + kHalfSqrt3, kHalf}, {kHalfSqrt3, kHalf}}),
                {"acute0", "obtuse1", "acute2", "obtuse3"},
                {EdgeRole::Side, EdgeRole::Side, EdgeRole::Side, EdgeRole::Side},
                kHalf};
    case Shape::HalfTriangle:
        return {kind,
                ConvexPolygon({{0, 0}, {kHalf, 0}, {kHalf, kHalfSqrt3}}),
                {"corner60", "corner90", "apex30"},
                {EdgeRole::ShortLeg, EdgeRole::Altitude, EdgeRole::Hypotenuse},
                RingValue::normalize(0, 1, 3)};
    }
    throw std::logic_error("unknown shape");
}

} // namespace

std::string_view kind_name(TileKind kind) {
    switch (kind) {
    case TileKind::Square: return "square";
    case TileKind::Rhomb: return "rhomb";
    case TileKind::HalfGray: return "gray";
    case TileKind::HalfYellow: return "yellow";
    case TileKind::HalfBlue: return "blue";
    }
    return "?";
}

std::optional<TileKind> parse_kind(std::string_view name) {
    for (TileKind k : kAllKinds)
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

Shape shape_of(TileKind kind) {
    switch (kind) {
    case TileKind::Square: return Shape::Square;
    case TileKind::Rhomb: return Shape::Rhomb;
    default: return Shape::HalfTriangle;
    }
}

std::string_view role_name(EdgeRole role) {
    switch (role) {
    case EdgeRole::Side: return "side";
    case EdgeRole::ShortLeg: return "shortLeg";
    case EdgeRole::Altitude: return "altitude";
    case EdgeRole::Hypotenuse: return "hypotenuse";
    }
    return "?";
}

const Prototype& prototype(TileKind kind) {
    static const std::array<Prototype, kKindCount> table{
        make_prototype(TileKind::Square), make_prototype(TileKind::Rhomb), make_prototype(TileKind::HalfGray),
        make_prototype(TileKind::HalfYellow), make_prototype(TileKind::HalfBlue)};
    return table[static_cast<std::size_t>(index_of(kind))];
}

const Prototype& prototype(Shape shape) {
    switch (shape) {
    case Shape::Square: return prototype(TileKind::Square);
    case Shape::Rhomb: return prototype(TileKind::Rhomb);
    default: return prototype(TileKind::HalfGray);
    }
}

bool canonical_less(const PlacedTile& a, const PlacedTile& b) {
    if (a.kind != b.kind) return index_of(a.kind) < index_of(b.kind);
    if (a.pose.k != b.pose.k) return a.pose.k < b.pose.k;
    if (a.pose.mirror != b.pose.mirror) return !a.pose.mirror;
    return canonical_less(a.pose.t, b.pose.t);
}

Point vertex(const PlacedTile& tile, std::size_t index) {
    return tile.pose.apply(prototype(tile.kind).polygon[index]);
}

std::vector<Point> raw_vertices(const PlacedTile& tile) {
    const auto proto = prototype(tile.kind).polygon.vertices();
    std::vector<Point> out;
    out.reserve(proto.size());
    for (const Point& p : proto) out.push_back(tile.pose.apply(p));
    return out;
}

ConvexPolygon realize(const PlacedTile& tile) {
    std::vector<Point> v = raw_vertices(tile);
    if (tile.pose.mirror) std::reverse(v.begin(), v.end());
    return ConvexPolygon(std::move(v));
}

bool operator<(const EdgeKey& a, const EdgeKey& b) {
    if (a.p != b.p) return canonical_less(a.p, b.p);
    return canonical_less(a.q, b.q);
}

EdgeKey make_edge_key(const Point& a, const Point& b) {
    return canonical_less(a, b) ? EdgeKey{a, b} : EdgeKey{b, a};
}

std::vector<TaggedEdge> edge_keys(const PlacedTile& tile) {
    const std::vector<Point> v = raw_vertices(tile);
    const auto& roles = prototype(tile.kind).edge_roles;
    std::vector<TaggedEdge> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back({make_edge_key(v[i], v[(i + 1) % v.size()]), roles[i]});
    return out;
}

bool operator<(const TileSignature& a, const TileSignature& b) {
    if (a.kind_class != b.kind_class) return a.kind_class < b.kind_class;
    return std::lexicographical_compare(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                                        [](const Point& p, const Point& q) { return canonical_less(p, q); });
}

TileSignature signature(const PlacedTile& tile, bool geometric_only) {
    TileSignature s;
    s.kind_class = geometric_only ? static_cast<int>(shape_of(tile.kind)) + 100 : index_of(tile.kind);
    s.vertices = raw_vertices(tile);
    std::sort(s.vertices.begin(), s.vertices.end(), [](const Point& p, const Point& q) { return canonical_less(p, q); });
    return s;
}

std::string_view seed_name(SeedKind kind) {
    switch (kind) {
    case SeedKind::Square: return "square";
    case SeedKind::Rhomb: return "rhomb";
    case SeedKind::HalfTrianglePair: return "halfpair";
    case SeedKind::Equilateral: return "equilateral";
    case SeedKind::Rosette: return "rosette";
    case SeedKind::Dodecagon: return "dodecagon";
    }
    return "?";
}

std::optional<SeedKind> parse_seed(std::string_view name) {
    for (SeedKind k : {SeedKind::Square, SeedKind::Rhomb, SeedKind::HalfTrianglePair, SeedKind::Equilateral,
                       SeedKind::Rosette, SeedKind::Dodecagon})
        if (seed_name(k) == name) return k;
    return std::nullopt;
}

void Patch::sort_canonical() {
    std::sort(tiles.begin(), tiles.end(), [](const PlacedTile& a, const PlacedTile& b) { return canonical_less(a, b); });
}

RingValue Patch::total_area() const {
    RingValue s;
    for (const PlacedTile& t : tiles) s += prototype(t.kind).area;
    return s;
}

nlohmann::json to_json(const RingValue& v) { return nlohmann::json::array({v.a(), v.b(), v.e()}); }

RingValue ring_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("ring value must be [a, b, e]");
    const RingValue v = RingValue::normalize(j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>());
    if (v.a() != j[0].get<std::int64_t>() || v.b() != j[1].get<std::int64_t>() || v.e() != j[2].get<std::int64_t>())
        throw std::invalid_argument("ring value is not in normal form");
    return v;
}

nlohmann::json to_json(const PlacedTile& tile) {
    return {{"kind", std::string(kind_name(tile.kind))},
            {"k", tile.pose.k},
            {"m", tile.pose.mirror ? 1 : 0},
            {"t", nlohmann::json::array({to_json(tile.pose.t.x), to_json(tile.pose.t.y)})}};
}

PlacedTile tile_from_json(const nlohmann::json& j) {
    PlacedTile t;
    const auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown tile kind " + j.at("kind").dump());
    t.kind = *kind;
    t.pose.k = j.at("k").get<int>();
    if (t.pose.k < 0 || t.pose.k > 11) throw std::invalid_argument("rotation index out of range");
    t.pose.mirror = j.at("m").get<int>() != 0;
    const auto& tr = j.at("t");
    t.pose.t = {ring_from_json(tr.at(0)), ring_from_json(tr.at(1))};
    return t;
}

nlohmann::json to_json(const Patch& patch) {
    nlohmann::json tiles = nlohmann::json::array();
    for (const PlacedTile& t : patch.tiles) tiles.push_back(to_json(t));
    return {{"generation", patch.generation},
            {"seed", std::string(seed_name(patch.seed))},
            {"variant", {{"gray", patch.choice.gray}, {"yellow", patch.choice.yellow}}},
            {"tiles", std::move(tiles)}};
}

Patch patch_from_json(const nlohmann::json& j) {
    Patch p;
    p.generation = j.at("generation").get<int>();
    const auto seed = parse_seed(j.at("seed").get<std::string>());
    if (!seed) throw std::invalid_argument("unknown seed kind");
    p.seed = *seed;
    p.choice.gray = j.at("variant").at("gray").get<int>();
    p.choice.yellow = j.at("variant").at("yellow").get<int>();
    for (const auto& t : j.at("tiles")) p.tiles.push_back(tile_from_json(t));
    return p;
}

} // namespace dodeca
