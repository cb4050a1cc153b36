#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "dodeca/rules.hpp"
#include "dodeca/tiles.hpp"

namespace dodeca {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultTileBudget = 1'000'000;

/// Colors of the two half-triangles in each rosette/equilateral seed
/// triangle. `ccw` is the half lying counterclockwise of the altitude as seen
/// from the rosette center.
struct SeedColors {
    TileKind ccw = TileKind::HalfGray;
    TileKind cw = TileKind::HalfGray;
};

/// Seed colors recorded in the rule set metadata ("seed-halves <ccw> <cw>"),
/// falling back to gray/gray.
SeedColors seed_colors(const RuleSet& rs);

Patch make_seed(SeedKind kind, const SeedColors& colors = {});

/// Child pose in world coordinates for a parent at `parent` (pre-inflation).
Isometry child_world_pose(const Isometry& parent, const Isometry& child, const RingValue& inflation);

/// One substitution step; tiles are processed in parallel when OpenMP is on.
Patch substitute_once(const Patch& patch, const RuleSet& rs, const VariantChoice& choice);
/// Single-threaded reference of substitute_once.
Patch substitute_once_serial(const Patch& patch, const RuleSet& rs, const VariantChoice& choice);

/// Number of tiles substitute_once would produce.
std::size_t predicted_size(const Patch& patch, const RuleSet& rs, const VariantChoice& choice);

Patch iterate(const Patch& seed, int generations, const RuleSet& rs, const VariantChoice& choice,
              std::size_t budget = kDefaultTileBudget);
Patch iterate(SeedKind seed, int generations, const RuleSet& rs, const VariantChoice& choice,
              std::size_t budget = kDefaultTileBudget);

struct Census {
    std::array<std::int64_t, kKindCount> counts{};
    /// Mated half-triangle pairs sharing an altitude edge.
    std::int64_t equilaterals = 0;

    std::int64_t operator[](TileKind k) const { return counts[static_cast<std::size_t>(index_of(k))]; }
    std::int64_t half_triangles() const;
    std::int64_t total() const;
};

Census census(const Patch& patch);

} // namespace dodeca
