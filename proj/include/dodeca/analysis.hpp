#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dodeca/rules.hpp"
#include "dodeca/tiles.hpp"

namespace dodeca {

/// Tiles merged into the shapes the tiling is made of: mated half-triangles
/// form equilateral triangles, quarter-squares sharing their corner 0 form
/// (possibly partial) unit squares. Unmated halves stay single.
struct Composite {
    enum class Kind { Rhomb, Triangle, HalfTriangle, Square };
    Kind kind;
    std::vector<std::size_t> members; // indices into patch.tiles
    std::vector<Point> polygon;       // counterclockwise, no collinear vertices
};

/// Groups the tiles of `patch`. Groups that do not merge into one convex shape
/// are reported in `problems` and kept as their individual tiles.
std::vector<Composite> composites(const Patch& patch, std::vector<std::string>* problems = nullptr);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> problems;
    std::vector<std::string> notes;
    double seconds = 0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* find(const std::string& name) const;
    void merge(const VerificationReport& other);
    nlohmann::json to_json() const;
    std::string text() const;
};

/// Edge-to-edge on the composite tiling: every composite edge is shared by at
/// most two composites, no composite vertex lies strictly inside another
/// composite edge, and unshared edges lie on the patch hull. Base-tile
/// T-junctions are counted in the notes.
VerificationReport verify_edge_to_edge(const Patch& patch);

/// Pairwise interior disjointness using a spatial bin index (parallel), plus
/// gap-freeness: the tile areas must add up to the area of the convex hull.
VerificationReport verify_no_overlap(const Patch& patch);
/// Same verdict from an all-pairs scan without binning.
VerificationReport verify_no_overlap_serial(const Patch& patch);

/// Every half-triangle altitude is shared with exactly one half of opposite
/// handedness and the same apex; unshared altitudes must lie on the hull.
VerificationReport verify_mating(const Patch& patch);

/// The three structural checks together.
VerificationReport verify_patch(const Patch& patch);

/// Rotating every tile by 360/order degrees about `center` maps the tile set
/// onto itself (kinds and geometry).
bool verify_rotational_symmetry(const Patch& patch, int order, const Point& center = {});

enum class NestingMode { Geometric, StrictColors };

/// Every tile of `inner` occurs in `outer` with the same geometry; both are
/// in the grow-in-place frame, where tiles keep unit size across generations.
bool verify_nesting(const Patch& inner, const Patch& outer, NestingMode mode = NestingMode::Geometric);

struct FrequencyReport {
    std::array<double, kKindCount> empirical{};
    std::array<double, kKindCount> eigenvector{};
    double eigenvalue = 0;
    double l1_distance = 0;
    int iterations = 0;
};

/// Kind frequencies of the patch against the Perron eigenvector of M (power
/// iteration to 1e-12).
FrequencyReport frequency_analysis(const Patch& patch, const CountMatrix& m);

} // namespace dodeca
