#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dodeca/analysis.hpp"
#include "dodeca/cli.hpp"
#include "dodeca/engine.hpp"

using namespace dodeca;

namespace {

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "dodeca");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

const std::filesystem::path kTmp = std::filesystem::temp_directory_path() / "dodeca-cli-test";
const std::string kRules = std::string(DODECA_RULES_DIR) + "/dodeca-1p3.rules";

} // namespace

TEST_CASE("svg numbers carry twelve significant digits") {
    CHECK(svg_number(RingValue::lambda()) == "2.73205080757");
    CHECK(svg_number(RingValue::normalize(0, 1, 1)) == "0.866025403784");
    CHECK(svg_number(RingValue(0)) == "0");
    CHECK(svg_number(RingValue(-3)) == "-3");
    CHECK(svg_number(RingValue::normalize(123, 4, 0)) == "129.92820323");
}

TEST_CASE("one polygon per tile, or per mated triangle when monochrome") {
    const RuleSet rs = load_rule_set_file(kRules);
    const Patch p = iterate(SeedKind::Rosette, 1, rs, {2, 2});
    CHECK(count(render_svg(p, rs.inflation), "<polygon") == p.tiles.size());
    RenderStyle mono;
    mono.monochrome_triangles = true;
    std::size_t expected = 0;
    for (const Composite& c : composites(p)) expected += c.kind == Composite::Kind::Triangle ? 1 : c.members.size();
    const std::string svg = render_svg(p, rs.inflation, mono);
    CHECK(count(svg, "<polygon") == expected);
    CHECK(count(svg, "#F4C542") == 0);
}

TEST_CASE("deflated rendering keeps every generation at seed size") {
    const RuleSet rs = load_rule_set_file(kRules);
    const std::string g1 = render_svg(iterate(SeedKind::Square, 1, rs, {}), rs.inflation);
    const std::string g3 = render_svg(iterate(SeedKind::Square, 3, rs, {}), rs.inflation);
    const auto view = [](const std::string& s) { return s.substr(s.find("viewBox"), 40); };
    CHECK(view(g1) == view(g3));
}

TEST_CASE("generate writes identical files on repeated runs") {
    std::filesystem::create_directories(kTmp);
    for (int i = 0; i < 2; ++i) {
        const std::string n = std::to_string(i);
        CHECK(run({"generate", "--seed", "rosette", "--generations", "2", "--rules", kRules, "--out",
                   (kTmp / ("a" + n + ".svg")).string(), "--json", (kTmp / ("a" + n + ".json")).string()}) == 0);
        CHECK(run({"stats", "--seed", "rosette", "--generations", "2", "--rules", kRules, "--csv",
                   (kTmp / ("a" + n + ".csv")).string()}) == 0);
    }
    CHECK(read(kTmp / "a0.svg") == read(kTmp / "a1.svg"));
    CHECK(read(kTmp / "a0.json") == read(kTmp / "a1.json"));
    CHECK(read(kTmp / "a0.csv") == read(kTmp / "a1.csv"));
    const std::string csv = read(kTmp / "a0.csv");
    CHECK(csv.rfind("generation,squares,rhombs,gray,yellow,blue,equilaterals,area_decimal\n0,0,12,0,0,24,12,", 0) == 0);
}

TEST_CASE("JSON dump round-trips to the same patch") {
    std::filesystem::create_directories(kTmp);
    CHECK(run({"generate", "--seed", "square", "--generations", "2", "--rules", kRules, "--json", (kTmp / "b.json").string()}) == 0);
    const Patch back = patch_from_json(nlohmann::json::parse(read(kTmp / "b.json")));
    const Patch p = iterate(SeedKind::Square, 2, load_rule_set_file(kRules), {});
    CHECK(back.tiles == p.tiles);
}

TEST_CASE("exit codes") {
    CHECK(run({"generate", "--bogus"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"verify", "--generations", "0", "--rules", kRules}) == 0);
    CHECK(run({"generate", "--seed", "rosette", "--generations", "5", "--rules", kRules, "--budget", "1000"}) == 3);
    std::filesystem::create_directories(kTmp);
    const auto broken = kTmp / "broken.rules";
    std::ofstream(broken) << "ruleset broken inflation 1 1 0\nrule square variant 1\n";
    CHECK(run({"verify", "--rules", broken.string()}) == 1);
}

TEST_CASE("verify with a generated patch passes") {
    CHECK(run({"verify", "--seed", "rosette", "--generations", "2", "--gray", "3", "--yellow", "1", "--rules", kRules}) == 0);
    CHECK(run({"generate", "--seed", "square", "--generations", "2", "--rules", kRules, "--verify"}) == 0);
}
