#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "dodeca/analysis.hpp"
#include "dodeca/engine.hpp"

using namespace dodeca;

namespace {

const RuleSet& primary() {
    static const RuleSet rs = load_rule_set_file(std::string(DODECA_RULES_DIR) + "/dodeca-1p3.rules");
    return rs;
}

} // namespace

TEST_CASE("grown patches pass all structural checks") {
    const Patch p = iterate(SeedKind::Rosette, 2, primary(), {2, 2});
    const VerificationReport r = verify_patch(p);
    CHECK_MESSAGE(r.passed(), r.text());
    CHECK(r.find("edge-to-edge") != nullptr);
    CHECK(r.to_json().is_object());
}

TEST_CASE("an overlapping tile is caught") {
    Patch p = iterate(SeedKind::Square, 2, primary(), {});
    PlacedTile extra = p.tiles.front();
    extra.pose.t = extra.pose.t + Point{RingValue::normalize(1, 0, 3), RingValue(0)};
    p.tiles.push_back(extra);
    CHECK_FALSE(verify_no_overlap(p).passed());
    CHECK_FALSE(verify_no_overlap_serial(p).passed());
}

TEST_CASE("a missing tile leaves a gap") {
    Patch p = iterate(SeedKind::Square, 2, primary(), {});
    // drop an interior tile: one whose removal keeps the hull
    p.tiles.erase(p.tiles.begin() + static_cast<long>(p.tiles.size() / 2));
    CHECK_FALSE(verify_patch(p).passed());
}

TEST_CASE("binned and all-pairs overlap checks agree") {
    const Patch p = iterate(SeedKind::Rosette, 1, primary(), {3, 1});
    CHECK(verify_no_overlap(p).passed() == verify_no_overlap_serial(p).passed());
}

TEST_CASE("a lone half-triangle has its altitude on the hull") {
    Patch p;
    p.tiles = {{TileKind::HalfGray, {}}};
    CHECK(verify_mating(p).passed());
}

TEST_CASE("a blue and a gray half mated across the altitude") {
    Patch p = make_seed(SeedKind::Equilateral, {TileKind::HalfGray, TileKind::HalfBlue});
    CHECK(verify_mating(p).passed());
    const auto comps = composites(p);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].kind == Composite::Kind::Triangle);
    CHECK(comps[0].polygon.size() == 3);
}

TEST_CASE("rosette growth keeps 12-fold symmetry and nests") {
    Patch p = make_seed(SeedKind::Rosette, seed_colors(primary()));
    CHECK(verify_rotational_symmetry(p, 12));
    for (int g = 0; g < 2; ++g) {
        const Patch q = substitute_once(p, primary(), {2, 2});
        CHECK(verify_rotational_symmetry(q, 12));
        CHECK(verify_nesting(p, q));
        p = q;
    }
}

TEST_CASE("the square patch is not 12-fold symmetric") {
    CHECK_FALSE(verify_rotational_symmetry(iterate(SeedKind::Square, 2, primary(), {}), 12));
}

TEST_CASE("frequencies approach the Perron eigenvector") {
    const CountMatrix m = count_matrix(primary(), {2, 2});
    const FrequencyReport early = frequency_analysis(iterate(SeedKind::Rosette, 1, primary(), {2, 2}), m);
    const FrequencyReport late = frequency_analysis(iterate(SeedKind::Rosette, 3, primary(), {2, 2}), m);
    CHECK(late.eigenvalue == doctest::Approx(4 + 2 * std::sqrt(3.0)).epsilon(1e-9));
    CHECK(late.l1_distance < early.l1_distance);
    double sum = 0;
    for (double v : late.eigenvector) sum += v;
    CHECK(sum == doctest::Approx(1.0));
}
