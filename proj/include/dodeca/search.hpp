#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dodeca/rules.hpp"

namespace dodeca {

// ---------------------------------------------------------------- area counts

struct AreaCounts {
    int squares = 0;
    int rhombs = 0;
    int half_triangles = 0;
    friend bool operator==(const AreaCounts&, const AreaCounts&) = default;
};

/// All non-negative (squares, rhombs, half-triangles) whose areas sum to
/// inflation^2 * area(parent), split into rational and sqrt(3) parts.
std::vector<AreaCounts> solve_area_counts(Shape parent, const RingValue& inflation = RingValue::lambda());

// --------------------------------------------------------------- edge layouts

enum class SegmentRole { SquareSide, ShortLeg, Altitude, HypotenuseOrRhombSide };

struct Segment {
    RingValue length;
    SegmentRole role;
    friend bool operator==(const Segment&, const Segment&) = default;
};

using EdgeLayout = std::vector<Segment>;

/// Boundary layouts of an inflated edge. Supported lengths are lambda * 1
/// (unit edges) and lambda / 2 (square sides). Unit-edge layouts are the
/// reversal-symmetric-or-not sequences whose halves mate across the edge;
/// see the implementation for the realizability filter.
std::vector<EdgeLayout> edge_layouts(const RingValue& edge_length);

/// Every ordered sequence of segment lengths {1/2, sqrt3/2, 1} summing to
/// `edge_length`, with no realizability filter.
std::vector<std::vector<RingValue>> raw_segment_sequences(const RingValue& edge_length);

std::string describe(const EdgeLayout& layout);

// ---------------------------------------------------- triangle candidates

/// Raw: all 27 assignments. UpToReflection: orbits under the reflection that
/// fixes the base side. UpToRotation: orbits under the rotations of the
/// triangle (layouts keep their direction along the counterclockwise
/// boundary). UpToSymmetry: orbits under rotations and reflections, where a
/// reflection reverses every layout. RequireSquare: the square-carrying
/// layout on the base side, the other two sides free.
enum class Equivalence { Raw, UpToReflection, UpToRotation, UpToSymmetry, RequireSquare };

/// A whole inflated equilateral triangle described by the layout index
/// (into edge_layouts(lambda)) on each of its three sides, counterclockwise.
struct TriangleCandidate {
    std::array<int, 3> layouts{};
};

std::vector<TriangleCandidate> enumerate_triangle_candidates(Equivalence eq);

// ---------------------------------------------------------- partitions

/// Pieces of a composite-level partition. Unit squares are made of four
/// quarter-square base tiles around a shared corner; a unit square straddling
/// the region boundary leaves a 1 x 1/2 rectangle (two quarters) inside, and
/// one centered on a right-angled region corner leaves a single quarter.
/// Half-triangles straddle the boundary with their altitude on it.
enum class Piece { Rhomb, Half, Triangle, UnitSquare, HalfSquare, QuarterSquare };
std::string_view piece_name(Piece piece);

/// Prototype polygon of a piece; edges flagged in `on_boundary` must lie on
/// the region boundary.
struct PiecePrototype {
    ConvexPolygon polygon;
    std::vector<bool> on_boundary;
    /// Area in units of 1/8: rational part and coefficient of sqrt(3).
    int rational_eighths;
    int sqrt3_eighths;
};
const PiecePrototype& piece_prototype(Piece piece);

struct Placement {
    Piece piece;
    Isometry pose;
};

struct PartitionOptions {
    /// Whole triangles (two halves mated inside the region) are allowed.
    bool whole_triangles = false;
    /// Search node cap; exceeding it aborts with `budget_exceeded`.
    std::uint64_t node_budget = 10'000'000;
};

struct PartitionStats {
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    bool budget_exceeded = false;
};

/// Enumerates every partition of the convex `region` into pieces that meet
/// edge-to-edge (no piece vertex strictly inside another piece's edge).
/// Each geometric partition is reported once.
PartitionStats enumerate_partitions(const ConvexPolygon& region, const PartitionOptions& options,
                                    const std::function<void(const std::vector<Placement>&)>& visit);

// ------------------------------------------------------------ rule search

struct SearchReport {
    std::size_t raw_candidates = 0;
    std::size_t reflection_classes = 0;
    std::size_t rotation_classes = 0;
    std::size_t symmetry_classes = 0;
    std::size_t with_square = 0;
    /// Partitions of the inflated square, half-triangle, rhomb: all, and
    /// those whose sides carry valid edge layouts.
    std::array<std::size_t, 3> partitions{};
    std::array<std::size_t, 3> boundary_consistent{};
    /// Side-layout assignments tried, and those leaving every rule nonempty.
    std::size_t hypotheses = 0;
    std::size_t viable_hypotheses = 0;
    std::size_t consistent_rule_sets = 0;
    bool gray_only_triangle_exists = false;
    bool budget_exceeded = false;
    std::vector<std::string> notes;
    std::string text() const;
};

struct SearchOptions {
    /// 1 + sqrt(3) searches three colors under the apex rules; any other
    /// inflation is searched with a single triangle color.
    RingValue inflation = RingValue::lambda();
    /// Allow whole triangles (mated halves) inside an inflated tile.
    bool whole_triangles = false;
    std::uint64_t node_budget = 10'000'000;
    /// Generations of the square and rosette seeds iterated to accept a rule set.
    int square_generations = 3;
    int rosette_generations = 2;
};

struct SearchResult {
    std::vector<RuleSet> rule_sets;
    SearchReport report;
};

/// Re-derives substitution rule sets for the 1 + sqrt(3) inflation from the
/// consistency constraints. The first returned rule set is the canonical one.
SearchResult search_consistent_rule_sets(const SearchOptions& options = {});

} // namespace dodeca
