#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dodeca/rules.hpp"

using namespace dodeca;

namespace {

std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::string kPrimary = std::string(DODECA_RULES_DIR) + "/dodeca-1p3.rules";

} // namespace

TEST_CASE("shipped rule set has one square, one rhomb, three gray, three yellow and one blue rule") {
    const RuleSet rs = load_rule_set_file(kPrimary);
    CHECK(rs.inflation == RingValue::lambda());
    CHECK(rs.variant_count(TileKind::Square) == 1);
    CHECK(rs.variant_count(TileKind::Rhomb) == 1);
    CHECK(rs.variant_count(TileKind::HalfGray) == 3);
    CHECK(rs.variant_count(TileKind::HalfYellow) == 3);
    CHECK(rs.variant_count(TileKind::HalfBlue) == 1);
}

TEST_CASE("every shipped rule fills its inflated parent exactly") {
    const RuleSet rs = load_rule_set_file(kPrimary);
    for (const auto& [key, rule] : rs.rules) {
        const ValidationReport r = validate_rule(rule, rs.inflation);
        CHECK_MESSAGE(r.passed, r.summary());
        CHECK(r.residue.is_zero());
        CHECK(r.children_area == rs.inflation * rs.inflation * prototype(key.first).area);
    }
}

TEST_CASE("serialization is byte-stable") {
    const std::string text = read(kPrimary);
    CHECK(serialize(load_rule_set(text)) == text);
}

TEST_CASE("count matrices balance area for all nine choices") {
    const RuleSet rs = load_rule_set_file(kPrimary);
    for (int g = 1; g <= 3; ++g)
        for (int y = 1; y <= 3; ++y) CHECK(area_balanced(count_matrix(rs, {g, y}), rs.inflation));
}

TEST_CASE("yellow rules put a rhomb at the apex, gray and blue put a yellow half there") {
    const RuleSet rs = load_rule_set_file(kPrimary);
    const Point apex = rs.inflation * vertex({TileKind::HalfGray, {}}, 2);
    for (const auto& [key, rule] : rs.rules) {
        if (!is_half_triangle(key.first)) continue;
        int at_apex = 0;
        for (const Child& c : rule.children)
            for (const Point& v : raw_vertices({c.kind, c.pose}))
                if (v == apex) {
                    ++at_apex;
                    CHECK(c.kind == (key.first == TileKind::HalfYellow ? TileKind::Rhomb : TileKind::HalfYellow));
                }
        CHECK(at_apex == 1);
    }
}

TEST_CASE("mirrored parents reflect their children") {
    const RuleSet rs = load_rule_set_file(kPrimary);
    const SubstitutionRule plain = rule_for(rs, TileKind::Rhomb, false, {});
    const SubstitutionRule mirrored = rule_for(rs, TileKind::Rhomb, true, {});
    REQUIRE(plain.children.size() == mirrored.children.size());
    for (std::size_t i = 0; i < plain.children.size(); ++i)
        CHECK(mirrored.children[i].pose == compose(Isometry::reflection(), plain.children[i].pose));
}

TEST_CASE("malformed rule text is rejected") {
    CHECK_THROWS_AS(load_rule_set("ruleset x inflation 1 1 0\nrule square variant 1\nchild square k=zero\n"), RuleParseError);
    CHECK_THROWS_AS(load_rule_set("nonsense\n"), RuleParseError);
}

TEST_CASE("a rule with a missing child fails validation") {
    std::string text = read(kPrimary);
    const auto pos = text.find("child", text.find("rule rhomb"));
    text.erase(pos, text.find('\n', pos) - pos + 1);
    CHECK_THROWS_AS(load_rule_set(text), RuleValidationError);
}

TEST_CASE("the optional 2 + sqrt 3 rule set loads and validates") {
    const RuleSet rs = load_rule_set_file(std::string(DODECA_RULES_DIR) + "/dodeca-2p3.rules");
    CHECK(rs.inflation == RingValue::normalize(2, 1, 0));
    CHECK_NOTHROW(validate_rule_set(rs));
    CHECK(area_balanced(count_matrix(rs, {}), rs.inflation));
}
