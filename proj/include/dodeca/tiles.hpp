#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dodeca/geometry.hpp"

namespace dodeca {

enum class TileKind { Square = 0, Rhomb = 1, HalfGray = 2, HalfYellow = 3, HalfBlue = 4 };

inline constexpr std::array<TileKind, 5> kAllKinds{TileKind::Square, TileKind::Rhomb, TileKind::HalfGray,
                                                   TileKind::HalfYellow, TileKind::HalfBlue};
inline constexpr int kKindCount = 5;

inline bool is_half_triangle(TileKind k) { return k == TileKind::HalfGray || k == TileKind::HalfYellow || k == TileKind::HalfBlue; }
inline int index_of(TileKind k) { return static_cast<int>(k); }

std::string_view kind_name(TileKind kind);
std::optional<TileKind> parse_kind(std::string_view name);

/// Geometric shape class; the three half-triangle colors share one shape.
enum class Shape { Square, Rhomb, HalfTriangle };
Shape shape_of(TileKind kind);

enum class EdgeRole { Side, ShortLeg, Altitude, Hypotenuse };
std::string_view role_name(EdgeRole role);

/// Named vertex positions of the half-triangle prototype.
enum class HalfVertex { Corner60 = 0, Corner90 = 1, Apex30 = 2 };

struct Prototype {
    TileKind kind;
    ConvexPolygon polygon;
    std::vector<std::string> vertex_roles;
    /// Role of edge i (from vertex i to vertex i+1).
    std::vector<EdgeRole> edge_roles;
    RingValue area;
};

const Prototype& prototype(TileKind kind);
const Prototype& prototype(Shape shape);

struct PlacedTile {
    TileKind kind = TileKind::Square;
    Isometry pose;

    friend bool operator==(const PlacedTile&, const PlacedTile&) = default;
};

/// Total order on (kind, k, mirror, t) using normalized triples.
bool canonical_less(const PlacedTile& a, const PlacedTile& b);

/// Pose image of the prototype vertex `index` (in prototype numbering).
Point vertex(const PlacedTile& tile, std::size_t index);
/// Pose-transformed vertices in prototype numbering (clockwise when mirrored).
std::vector<Point> raw_vertices(const PlacedTile& tile);
/// Realized polygon, counterclockwise.
ConvexPolygon realize(const PlacedTile& tile);

struct EdgeKey {
    Point p; // canonical_less(p, q)
    Point q;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};
bool operator<(const EdgeKey& a, const EdgeKey& b);
EdgeKey make_edge_key(const Point& a, const Point& b);

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const noexcept {
        const PointHash h;
        return h(k.p) * 31u ^ h(k.q);
    }
};

struct TaggedEdge {
    EdgeKey key;
    EdgeRole role;
};

std::vector<TaggedEdge> edge_keys(const PlacedTile& tile);

/// Kind plus sorted vertex set; identifies a tile's geometry independent of
/// which symmetric pose produced it. With `geometric_only`, the three
/// half-triangle colors compare equal.
struct TileSignature {
    int kind_class;
    std::vector<Point> vertices;
    friend bool operator==(const TileSignature&, const TileSignature&) = default;
};
bool operator<(const TileSignature& a, const TileSignature& b);
TileSignature signature(const PlacedTile& tile, bool geometric_only);

struct VariantChoice {
    int gray = 1;
    int yellow = 1;
    friend bool operator==(const VariantChoice&, const VariantChoice&) = default;
};

enum class SeedKind { Square, Rhomb, HalfTrianglePair, Equilateral, Rosette, Dodecagon };
std::string_view seed_name(SeedKind kind);
std::optional<SeedKind> parse_seed(std::string_view name);

struct Patch {
    std::vector<PlacedTile> tiles;
    int generation = 0;
    VariantChoice choice{};
    SeedKind seed = SeedKind::Square;

    void sort_canonical();
    RingValue total_area() const;
};

nlohmann::json to_json(const RingValue& v);
RingValue ring_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PlacedTile& tile);
PlacedTile tile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Patch& patch);
Patch patch_from_json(const nlohmann::json& j);

} // namespace dodeca
