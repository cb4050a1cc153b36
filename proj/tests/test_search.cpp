#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "dodeca/search.hpp"

using namespace dodeca;

namespace {

std::set<std::pair<int, int>> square_rhomb_pairs(Shape s) {
    std::set<std::pair<int, int>> out;
    for (const AreaCounts& c : solve_area_counts(s)) out.insert({c.squares, c.rhombs});
    return out;
}

} // namespace

TEST_CASE("area counts of the inflated half-triangle") {
    CHECK(square_rhomb_pairs(Shape::HalfTriangle) == std::set<std::pair<int, int>>{{3, 0}, {1, 1}});
    for (const AreaCounts& c : solve_area_counts(Shape::HalfTriangle)) CHECK(c.half_triangles == 4);
}

TEST_CASE("area counts agree with a brute-force enumeration") {
    // In units of 1/8: quarter-square 2, rhomb 4, half-triangle sqrt3.
    // lambda^2 = 4 + 2 sqrt3 times the parent area gives the targets.
    const std::array<std::tuple<Shape, int, int>, 3> targets{{{Shape::Square, 8, 4}, {Shape::Rhomb, 16, 8}, {Shape::HalfTriangle, 6, 4}}};
    for (const auto& [shape, rational, root] : targets) {
        std::set<std::tuple<int, int, int>> brute;
        for (int q = 0; q <= 20; ++q)
            for (int r = 0; r <= 20; ++r)
                if (2 * q + 4 * r == rational) brute.insert({q, r, root});
        std::set<std::tuple<int, int, int>> got;
        for (const AreaCounts& c : solve_area_counts(shape)) got.insert({c.squares, c.rhombs, c.half_triangles});
        CHECK(got == brute);
    }
}

TEST_CASE("three layouts of the inflated unit edge") {
    const auto layouts = edge_layouts(RingValue::lambda());
    CHECK(layouts.size() == 3);
    for (const EdgeLayout& l : layouts) {
        RingValue sum;
        for (const Segment& s : l) sum += s.length;
        CHECK(sum == RingValue::lambda());
    }
    CHECK(raw_segment_sequences(RingValue::lambda()).size() > layouts.size());
}

TEST_CASE("triangle candidate counts") {
    CHECK(enumerate_triangle_candidates(Equivalence::Raw).size() == 27);
    CHECK(enumerate_triangle_candidates(Equivalence::RequireSquare).size() == 9);
    // Burnside over the 3 rotations: (27 + 3 + 3) / 3
    CHECK(enumerate_triangle_candidates(Equivalence::UpToRotation).size() == 11);
}

TEST_CASE("the search derives exactly the shipped rule set") {
    const SearchResult r = search_consistent_rule_sets();
    CHECK(r.report.consistent_rule_sets == 1);
    CHECK_FALSE(r.report.gray_only_triangle_exists);
    CHECK_FALSE(r.report.budget_exceeded);
    REQUIRE(r.rule_sets.size() == 1);
    std::ifstream in(std::string(DODECA_RULES_DIR) + "/dodeca-1p3.rules", std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(serialize(r.rule_sets[0]) == os.str());
}
