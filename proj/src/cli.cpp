#include "dodeca/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dodeca/analysis.hpp"
#include "dodeca/engine.hpp"
#include "dodeca/search.hpp"

#ifndef DODECA_DEFAULT_RULES
#define DODECA_DEFAULT_RULES "rules/dodeca-1p3.rules"
#endif

namespace dodeca {

std::string svg_number(const RingValue& x) {
    if (x.is_zero()) return "0";
    const double mag = std::fabs(x.to_double());
    const int int_digits = mag >= 1 ? static_cast<int>(std::floor(std::log10(mag))) + 1 : 1 + static_cast<int>(std::floor(std::log10(mag)));
    const int frac = std::max(1, 12 - int_digits);
    std::string s = x.to_decimal(frac);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

namespace {

// inflation^-g, exact.
RingValue view_scale(const RingValue& inflation, int generations) {
    const auto inv = ring_inverse(inflation);
    if (!inv) throw std::invalid_argument("inflation factor is not a unit of the ring");
    return power(*inv, generations);
}

struct Frame {
    RingValue scale;
    Point map(const Point& p) const { return {scale * p.x, -(scale * p.y)}; }
};

std::string points_attr(const std::vector<Point>& loop, const Frame& f) {
    std::string s;
    for (const Point& p : loop) {
        const Point q = f.map(p);
        if (!s.empty()) s += ' ';
        s += svg_number(q.x) + "," + svg_number(q.y);
    }
    return s;
}

std::string number(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

std::string render_svg(const Patch& patch, const RingValue& inflation, const RenderStyle& style) {
    const Frame frame{style.deflate ? view_scale(inflation, patch.generation) : RingValue(1)};

    std::optional<RingValue> x0, x1, y0, y1;
    for (const PlacedTile& t : patch.tiles)
        for (const Point& v : raw_vertices(t)) {
            const Point q = frame.map(v);
            if (!x0 || q.x < *x0) x0 = q.x;
            if (!x1 || q.x > *x1) x1 = q.x;
            if (!y0 || q.y < *y0) y0 = q.y;
            if (!y1 || q.y > *y1) y1 = q.y;
        }
    double vx = 0, vy = 0, vw = 1, vh = 1;
    if (x0) {
        const double m = style.margin;
        vx = x0->to_double() - m;
        vy = y0->to_double() - m;
        vw = (*x1 - *x0).to_double() + 2 * m;
        vh = (*y1 - *y0).to_double() + 2 * m;
    }

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << number(vx) << ' ' << number(vy) << ' '
       << number(vw) << ' ' << number(vh) << "\">\n";
    os << "<g stroke=\"none\">\n";

    const std::vector<Composite> comps = composites(patch);
    std::vector<std::vector<Point>> outlines;
    std::vector<bool> merged(patch.tiles.size(), false);
    if (style.monochrome_triangles)
        for (const Composite& c : comps)
            if (c.kind == Composite::Kind::Triangle) {
                os << "<polygon fill=\"" << style.fill[index_of(TileKind::HalfGray)] << "\" points=\""
                   << points_attr(c.polygon, frame) << "\"/>\n";
                for (std::size_t m : c.members) merged[m] = true;
            }
    for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
        if (merged[i]) continue;
        const PlacedTile& t = patch.tiles[i];
        TileKind shown = t.kind;
        if (style.monochrome_triangles && is_half_triangle(shown)) shown = TileKind::HalfGray;
        const ConvexPolygon poly = realize(t);
        const std::vector<Point> loop(poly.vertices().begin(), poly.vertices().end());
        os << "<polygon fill=\"" << style.fill[index_of(shown)] << "\" points=\"" << points_attr(loop, frame) << "\"/>\n";
        if (!style.monochrome_triangles && is_half_triangle(t.kind)) outlines.push_back(loop);
    }
    os << "</g>\n";

    // Outlines follow the composite shapes so quarter-squares read as whole
    // squares; halves keep their own outline unless drawn as one triangle.
    for (const Composite& c : comps)
        if (c.kind != Composite::Kind::Triangle || style.monochrome_triangles) outlines.push_back(c.polygon);
    std::set<EdgeKey> edges;
    for (const auto& loop : outlines)
        for (std::size_t i = 0; i < loop.size(); ++i) edges.insert(make_edge_key(loop[i], loop[(i + 1) % loop.size()]));
    os << "<path fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\"" << number(style.stroke_width)
       << "\" stroke-linejoin=\"round\" d=\"";
    bool first = true;
    for (const EdgeKey& e : edges) {
        const Point p = frame.map(e.p), q = frame.map(e.q);
        if (!first) os << ' ';
        first = false;
        os << 'M' << svg_number(p.x) << ',' << svg_number(p.y) << 'L' << svg_number(q.x) << ',' << svg_number(q.y);
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

namespace {

struct PatchArgs {
    std::string seed = "square";
    int generations = 0;
    int gray = 1;
    int yellow = 1;
    std::string rules = DODECA_DEFAULT_RULES;
    std::size_t budget = kDefaultTileBudget;
};

void add_patch_options(CLI::App* cmd, PatchArgs& a) {
    cmd->add_option("--seed", a.seed, "square|rhomb|equilateral|rosette|dodecagon")
        ->check(CLI::IsMember({"square", "rhomb", "equilateral", "rosette", "dodecagon"}));
    cmd->add_option("--generations", a.generations, "substitution steps")->check(CLI::NonNegativeNumber);
    cmd->add_option("--gray", a.gray, "gray variant")->check(CLI::Range(1, 3));
    cmd->add_option("--yellow", a.yellow, "yellow variant")->check(CLI::Range(1, 3));
    cmd->add_option("--rules", a.rules, "rule file");
    cmd->add_option("--budget", a.budget, "maximum tile count");
}

SeedKind seed_of(const PatchArgs& a) { return *parse_seed(a.seed); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Seed area times (inflation^2)^g must equal the patch area; for square and
// triangle seeds the hull must also be the inflated seed shape.
CheckResult shape_check(const Patch& patch, const RuleSet& rs) {
    CheckResult r{"shape", true, {}, {}, 0};
    const Patch seed = make_seed(patch.seed, seed_colors(rs));
    const RingValue expected = seed.total_area() * power(rs.inflation * rs.inflation, patch.generation);
    if (patch.total_area() != expected) {
        r.passed = false;
        r.problems.push_back("area " + patch.total_area().to_decimal(9) + " expected " + expected.to_decimal(9));
    }
    std::vector<Point> pts, seed_pts;
    for (const PlacedTile& t : patch.tiles)
        for (const Point& v : raw_vertices(t)) pts.push_back(v);
    const RingValue s = power(rs.inflation, patch.generation);
    for (const PlacedTile& t : seed.tiles)
        for (const Point& v : raw_vertices(t)) seed_pts.push_back({s * v.x, s * v.y});
    if (convex_hull(pts) != convex_hull(seed_pts)) {
        r.notes.push_back("hull differs from the inflated seed hull");
        if (patch.seed == SeedKind::Square || patch.seed == SeedKind::Equilateral) r.passed = false;
    }
    return r;
}

VerificationReport analysis_suite(const Patch& patch, const RuleSet& rs) {
    VerificationReport rep = verify_patch(patch);
    rep.checks.push_back(shape_check(patch, rs));
    if (patch.seed == SeedKind::Rosette || patch.seed == SeedKind::Dodecagon) {
        CheckResult sym{"12-fold symmetry", verify_rotational_symmetry(patch, 12), {}, {}, 0};
        rep.checks.push_back(sym);
    }
    return rep;
}

RingValue parse_inflation(const std::string& text) {
    // "a,b" for a + b sqrt(3)
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--inflation", "expected a,b for a + b*sqrt(3)");
    return RingValue::normalize(std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1)), 0);
}

Equivalence parse_equivalence(const std::string& s) {
    if (s == "raw") return Equivalence::Raw;
    if (s == "reflection") return Equivalence::UpToReflection;
    if (s == "rotation") return Equivalence::UpToRotation;
    if (s == "symmetry") return Equivalence::UpToSymmetry;
    return Equivalence::RequireSquare;
}

int cmd_generate(const PatchArgs& a, const std::string& out, const std::string& json, RenderStyle style, bool verify) {
    const RuleSet rs = load_rule_set_file(a.rules);
    const VariantChoice choice{a.gray, a.yellow};
    check_choice(rs, choice);
    const Patch patch = iterate(make_seed(seed_of(a), seed_colors(rs)), a.generations, rs, choice, a.budget);
    if (verify) {
        const VerificationReport rep = analysis_suite(patch, rs);
        std::cout << rep.text();
        if (!rep.passed()) return static_cast<int>(ExitCode::VerifyFailed);
    }
    if (!out.empty()) write_file(out, render_svg(patch, rs.inflation, style));
    if (!json.empty()) write_file(json, to_json(patch).dump(1) + "\n");
    std::cout << patch.tiles.size() << " tiles\n";
    return 0;
}

int cmd_verify(const PatchArgs& a, bool all_variants) {
    RuleSet rs;
    try {
        rs = load_rule_set_file(a.rules);
    } catch (const RuleParseError& e) {
        std::cout << "FAIL rule file\n  problem: " << e.what() << "\n";
        return static_cast<int>(ExitCode::VerifyFailed);
    } catch (const RuleValidationError& e) {
        std::cout << "FAIL rule file\n  problem: " << e.what() << "\n";
        return static_cast<int>(ExitCode::VerifyFailed);
    }
    std::vector<VariantChoice> choices;
    if (all_variants) {
        for (int g = 1; g <= rs.variant_count(TileKind::HalfGray); ++g)
            for (int y = 1; y <= rs.variant_count(TileKind::HalfYellow); ++y) choices.push_back({g, y});
    } else {
        choices.push_back({a.gray, a.yellow});
    }
    bool all_passed = true;
    for (const VariantChoice& ch : choices) {
        check_choice(rs, ch);
        const Patch patch = iterate(make_seed(seed_of(a), seed_colors(rs)), a.generations, rs, ch, a.budget);
        const VerificationReport rep = analysis_suite(patch, rs);
        std::cout << "variant gray " << ch.gray << " yellow " << ch.yellow << ": " << patch.tiles.size() << " tiles, "
                  << (rep.passed() ? "pass" : "FAIL") << "\n";
        if (!rep.passed()) std::cout << rep.text();
        all_passed = all_passed && rep.passed();
    }
    return all_passed ? 0 : static_cast<int>(ExitCode::VerifyFailed);
}

int cmd_search(const std::string& emit, const std::string& equivalence, const std::string& inflation, bool whole_triangles) {
    SearchOptions options;
    options.inflation = parse_inflation(inflation);
    options.whole_triangles = whole_triangles;
    const SearchResult result = search_consistent_rule_sets(options);
    std::cout << "triangle candidates (" << equivalence
              << "): " << enumerate_triangle_candidates(parse_equivalence(equivalence)).size() << "\n";
    std::cout << result.report.text();
    if (!emit.empty()) {
        std::filesystem::create_directories(emit);
        for (const RuleSet& rs : result.rule_sets) {
            const auto path = std::filesystem::path(emit) / (rs.name + ".rules");
            write_file(path.string(), serialize(rs));
            std::cout << "wrote " << path.string() << "\n";
        }
    }
    return result.report.budget_exceeded ? static_cast<int>(ExitCode::Budget) : 0;
}

int cmd_stats(const PatchArgs& a, const std::string& csv) {
    const RuleSet rs = load_rule_set_file(a.rules);
    const VariantChoice choice{a.gray, a.yellow};
    check_choice(rs, choice);
    const CountMatrix m = count_matrix(rs, choice);
    std::ostringstream table;
    table << "generation,squares,rhombs,gray,yellow,blue,equilaterals,area_decimal\n";
    Patch patch = make_seed(seed_of(a), seed_colors(rs));
    std::optional<RingValue> previous_area;
    for (int g = 0;; ++g) {
        const Census c = census(patch);
        const RingValue area = patch.total_area();
        table << g << ',' << c[TileKind::Square] << ',' << c[TileKind::Rhomb] << ',' << c[TileKind::HalfGray] << ','
              << c[TileKind::HalfYellow] << ',' << c[TileKind::HalfBlue] << ',' << c.equilaterals << ','
              << area.to_decimal(10) << "\n";
        const FrequencyReport f = frequency_analysis(patch, m);
        std::cout << "generation " << g << ": " << c.total() << " tiles, area " << area.to_triple() << " = "
                  << area.to_decimal(10);
        if (previous_area) std::cout << ", ratio " << std::setprecision(11) << (area.to_double() / previous_area->to_double()) << std::setprecision(6);
        std::cout << ", frequency distance " << f.l1_distance << "\n";
        previous_area = area;
        if (g == a.generations) break;
        if (predicted_size(patch, rs, choice) > a.budget) throw BudgetExceeded("tile budget exceeded");
        patch = substitute_once(patch, rs, choice);
    }
    std::cout << table.str();
    if (!csv.empty()) write_file(csv, table.str());
    return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Exact substitution tilings with 12-fold symmetry"};
    app.require_subcommand(1);

    PatchArgs gen_args, verify_args, stats_args;
    std::string out, json, csv, emit, equivalence = "rotation", inflation = "1,1";
    bool monochrome = false, no_deflate = false, verify = false, all_variants = false, whole_triangles = false;
    RenderStyle style;

    CLI::App* gen = app.add_subcommand("generate", "grow a patch and write SVG/JSON");
    add_patch_options(gen, gen_args);
    gen->add_option("--out", out, "SVG output file");
    gen->add_option("--json", json, "exact JSON dump");
    gen->add_flag("--monochrome-triangles", monochrome, "one color for all triangles");
    gen->add_flag("--no-deflate", no_deflate, "keep the grown world frame");
    gen->add_flag("--verify", verify, "run the analysis suite before writing");
    gen->add_option("--square-color", style.fill[0]);
    gen->add_option("--rhomb-color", style.fill[1]);
    gen->add_option("--gray-color", style.fill[2]);
    gen->add_option("--yellow-color", style.fill[3]);
    gen->add_option("--blue-color", style.fill[4]);
    gen->add_option("--stroke-color", style.stroke);
    gen->add_option("--stroke-width", style.stroke_width);

    CLI::App* ver = app.add_subcommand("verify", "run the analysis suite");
    add_patch_options(ver, verify_args);
    ver->add_flag("--all-variants", all_variants, "loop over every gray/yellow choice");

    CLI::App* search = app.add_subcommand("search", "derive rule sets from the edge constraints");
    search->add_option("--emit", emit, "directory for discovered rule files");
    search->add_option("--equivalence", equivalence, "candidate equivalence for the stage count")
        ->check(CLI::IsMember({"raw", "reflection", "rotation", "symmetry", "square"}));
    search->add_option("--inflation", inflation, "a,b for a + b*sqrt(3)");
    search->add_flag("--whole-triangles", whole_triangles, "allow whole triangles inside inflated tiles");

    CLI::App* stats = app.add_subcommand("stats", "census per generation");
    add_patch_options(stats, stats_args);
    stats->add_option("--csv", csv, "CSV output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
    }

    try {
        if (*gen) {
            style.monochrome_triangles = monochrome;
            style.deflate = !no_deflate;
            return cmd_generate(gen_args, out, json, style, verify);
        }
        if (*ver) return cmd_verify(verify_args, all_variants);
        if (*search) return cmd_search(emit, equivalence, inflation, whole_triangles);
        return cmd_stats(stats_args, csv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Budget);
    } catch (const RuleParseError& e) {
        std::cerr << "rule file: " << e.what() << "\n";
        return static_cast<int>(ExitCode::VerifyFailed);
    } catch (const RuleValidationError& e) {
        std::cerr << "rule file: " << e.what() << "\n";
        return static_cast<int>(ExitCode::VerifyFailed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return static_cast<int>(ExitCode::Usage);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Usage);
    }
}

} // namespace dodeca
