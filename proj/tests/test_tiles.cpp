#include <doctest.h>

#include <nlohmann/json.hpp>

#include "dodeca/tiles.hpp"

using namespace dodeca;

TEST_CASE("prototype areas") {
    CHECK(prototype(TileKind::Square).area == RingValue::normalize(1, 0, 2));
    CHECK(prototype(TileKind::Rhomb).area == RingValue::half());
    for (TileKind k : {TileKind::HalfGray, TileKind::HalfYellow, TileKind::HalfBlue})
        CHECK(prototype(k).area == RingValue::normalize(0, 1, 3));
    // shoelace on the realized polygon agrees with the stored value
    for (TileKind k : kAllKinds) CHECK(area(realize({k, {}})) == prototype(k).area);
}

TEST_CASE("half-triangle edges are short leg, altitude, hypotenuse") {
    const Prototype& p = prototype(TileKind::HalfGray);
    REQUIRE(p.edge_roles.size() == 3);
    CHECK(p.edge_roles[0] == EdgeRole::ShortLeg);
    CHECK(p.edge_roles[1] == EdgeRole::Altitude);
    CHECK(p.edge_roles[2] == EdgeRole::Hypotenuse);
    CHECK(length_squared(p.polygon[1] - p.polygon[0]) == RingValue::normalize(1, 0, 2));
    CHECK(length_squared(p.polygon[2] - p.polygon[1]) == RingValue::normalize(3, 0, 2));
    CHECK(length_squared(p.polygon[0] - p.polygon[2]) == RingValue(1));
}

TEST_CASE("names round-trip") {
    for (TileKind k : kAllKinds) CHECK(parse_kind(kind_name(k)) == k);
    for (SeedKind s : {SeedKind::Square, SeedKind::Rhomb, SeedKind::Equilateral, SeedKind::Rosette, SeedKind::Dodecagon})
        CHECK(parse_seed(seed_name(s)) == s);
    CHECK_FALSE(parse_kind("hexagon").has_value());
}

TEST_CASE("mirrored tiles realize counterclockwise") {
    const PlacedTile t{TileKind::Rhomb, {3, true, {RingValue(1), RingValue::sqrt3()}}};
    const ConvexPolygon poly = realize(t);
    CHECK(twice_signed_area(poly.vertices()).sign() > 0);
    CHECK(area(realize(t)) == prototype(TileKind::Rhomb).area);
}

TEST_CASE("signature ignores the symmetric pose that produced the tile") {
    // the rhomb's half turn about its center maps it onto itself
    const PlacedTile a{TileKind::Rhomb, {}};
    const PlacedTile b{TileKind::Rhomb, {6, false, {RingValue(1) + RingValue::normalize(0, 1, 1), RingValue::half()}}};
    CHECK(signature(a, false) == signature(b, false));
    CHECK(signature({TileKind::HalfGray, {}}, true) == signature({TileKind::HalfBlue, {}}, true));
    CHECK_FALSE(signature({TileKind::HalfGray, {}}, false) == signature({TileKind::HalfBlue, {}}, false));
}

TEST_CASE("patch JSON round-trips exactly") {
    Patch p;
    p.tiles = {{TileKind::Square, {}}, {TileKind::HalfYellow, {5, true, {RingValue::normalize(3, -1, 2), RingValue(7)}}}};
    p.generation = 2;
    p.choice = {2, 3};
    p.seed = SeedKind::Rosette;
    const Patch q = patch_from_json(to_json(p));
    CHECK(q.tiles == p.tiles);
    CHECK(q.generation == 2);
    CHECK(q.choice == p.choice);
    CHECK(q.seed == SeedKind::Rosette);
    CHECK(to_json(q).dump() == to_json(p).dump());
}
