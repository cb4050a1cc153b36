#include "dodeca/rules.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dodeca {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::int64_t parse_int(const std::string& s, int line) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw RuleParseError(line, "expected integer, got '" + s + "'");
    return v;
}

RingValue parse_triple(const std::vector<std::string>& tok, std::size_t at, int line) {
    if (at + 3 > tok.size()) throw RuleParseError(line, "truncated ring triple");
    const std::int64_t a = parse_int(tok[at], line);
    const std::int64_t b = parse_int(tok[at + 1], line);
    const std::int64_t e = parse_int(tok[at + 2], line);
    if (e < 0) throw RuleParseError(line, "negative exponent");
    const RingValue v = RingValue::normalize(a, b, e);
    if (v.a() != a || v.b() != b || v.e() != e) throw RuleParseError(line, "ring triple not in normal form");
    return v;
}

std::string strip_prefix(const std::string& tok, const std::string& prefix, int line) {
    if (tok.rfind(prefix, 0) != 0) throw RuleParseError(line, "expected '" + prefix + "...', got '" + tok + "'");
    return tok.substr(prefix.size());
}

std::string rule_label(TileKind kind, int variant) {
    return std::string(kind_name(kind)) + " variant " + std::to_string(variant);
}

} // namespace

std::string ValidationReport::summary() const {
    std::ostringstream out;
    out << rule_name << ": " << (passed ? "pass" : "FAIL") << " (area residue " << residue.to_triple();
    out << ", outside " << outside_children.size() << ", overlaps " << overlapping_pairs.size() << ")";
    return out.str();
}

ConvexPolygon inflated_parent(TileKind parent, const RingValue& inflation) {
    std::vector<Point> v;
    for (const Point& p : prototype(parent).polygon.vertices()) v.push_back(inflation * p);
    return ConvexPolygon(std::move(v));
}

ValidationReport validate_rule(const SubstitutionRule& rule, const RingValue& inflation) {
    ValidationReport rep;
    rep.rule_name = rule_label(rule.parent, rule.variant);
    rep.expected_area = inflation * inflation * prototype(rule.parent).area;
    const ConvexPolygon parent = inflated_parent(rule.parent, inflation);
    std::vector<ConvexPolygon> polys;
    polys.reserve(rule.children.size());
    for (std::size_t i = 0; i < rule.children.size(); ++i) {
        const Child& c = rule.children[i];
        polys.push_back(realize({c.kind, c.pose}));
        rep.children_area += prototype(c.kind).area;
        for (const Point& v : polys.back().vertices()) {
            if (point_in_convex(v, parent) == Location::Outside) {
                rep.outside_children.push_back(i);
                break;
            }
        }
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if (!interiors_disjoint(polys[i], polys[j])) rep.overlapping_pairs.emplace_back(i, j);
    rep.residue = rep.children_area - rep.expected_area;
    rep.passed = rep.residue.is_zero() && rep.outside_children.empty() && rep.overlapping_pairs.empty();
    return rep;
}

int RuleSet::variant_count(TileKind kind) const {
    int n = 0;
    for (const auto& [key, rule] : rules)
        if (key.first == kind) ++n;
    return n;
}

void validate_rule_set(const RuleSet& rs) {
    if (rs.inflation.sign() <= 0 || (rs.inflation - RingValue(1)).sign() <= 0)
        throw RuleValidationError("inflation factor must exceed 1");
    for (TileKind kind : kAllKinds) {
        const int n = rs.variant_count(kind);
        if (n == 0) throw RuleValidationError("missing rule for " + std::string(kind_name(kind)));
        const bool multi = kind == TileKind::HalfGray || kind == TileKind::HalfYellow;
        if (!multi && n != 1)
            throw RuleValidationError(std::string(kind_name(kind)) + " must have exactly one variant");
        if (n > 3) throw RuleValidationError(std::string(kind_name(kind)) + " has more than three variants");
        for (int v = 1; v <= n; ++v)
            if (!rs.rules.contains({kind, v}))
                throw RuleValidationError("missing variant " + rule_label(kind, v));
    }
    for (const auto& [key, rule] : rs.rules) {
        const ValidationReport rep = validate_rule(rule, rs.inflation);
        if (!rep.residue.is_zero())
            throw RuleValidationError(rep.rule_name + ": area mismatch (residue " + rep.residue.to_triple() + ")");
        if (!rep.outside_children.empty())
            throw RuleValidationError(rep.rule_name + ": child " + std::to_string(rep.outside_children.front()) +
                                      " outside the inflated parent");
        if (!rep.overlapping_pairs.empty())
            throw RuleValidationError(rep.rule_name + ": children " + std::to_string(rep.overlapping_pairs.front().first) +
                                      " and " + std::to_string(rep.overlapping_pairs.front().second) + " overlap");
    }
}

RuleSet load_rule_set(const std::string& text) {
    RuleSet rs;
    bool have_header = false;
    SubstitutionRule* current = nullptr;
    std::istringstream in(text);
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::vector<std::string> tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string& head = tok[0];
        if (head == "ruleset") {
            if (have_header) throw RuleParseError(line_no, "duplicate ruleset header");
            if (tok.size() != 6 || tok[2] != "inflation")
                throw RuleParseError(line_no, "expected 'ruleset <name> inflation <a> <b> <e>'");
            rs.name = tok[1];
            rs.inflation = parse_triple(tok, 3, line_no);
            have_header = true;
        } else if (!have_header) {
            throw RuleParseError(line_no, "missing ruleset header");
        } else if (head == "meta") {
            if (tok.size() < 3) throw RuleParseError(line_no, "expected 'meta <key> <value...>'");
            std::string value = tok[2];
            for (std::size_t i = 3; i < tok.size(); ++i) value += " " + tok[i];
            rs.metadata.emplace_back(tok[1], value);
        } else if (head == "rule") {
            if (tok.size() != 4 || tok[2] != "variant")
                throw RuleParseError(line_no, "expected 'rule <kind> variant <n>'");
            const auto kind = parse_kind(tok[1]);
            if (!kind) throw RuleParseError(line_no, "unknown tile kind '" + tok[1] + "'");
            const int variant = static_cast<int>(parse_int(tok[3], line_no));
            if (variant < 1) throw RuleParseError(line_no, "variant numbers start at 1");
            auto [it, inserted] = rs.rules.try_emplace({*kind, variant}, SubstitutionRule{*kind, variant, {}});
            if (!inserted) throw RuleParseError(line_no, "duplicate rule " + rule_label(*kind, variant));
            current = &it->second;
        } else if (head == "child") {
            if (current == nullptr) throw RuleParseError(line_no, "child line outside a rule block");
            if (tok.size() != 10) throw RuleParseError(line_no, "expected 'child <kind> k=<n> m=<0|1> t=<6 integers>'");
            const auto kind = parse_kind(tok[1]);
            if (!kind) throw RuleParseError(line_no, "unknown tile kind '" + tok[1] + "'");
            const std::int64_t k = parse_int(strip_prefix(tok[2], "k=", line_no), line_no);
            if (k < 0 || k > 11)
                throw RuleParseError(line_no, "rotation k=" + std::to_string(k) + " is not a multiple of 30 degrees in 0..11");
            const std::int64_t m = parse_int(strip_prefix(tok[3], "m=", line_no), line_no);
            if (m != 0 && m != 1) throw RuleParseError(line_no, "m must be 0 or 1");
            std::vector<std::string> nums(tok.begin() + 4, tok.end());
            nums[0] = strip_prefix(nums[0], "t=", line_no);
            const RingValue tx = parse_triple(nums, 0, line_no);
            const RingValue ty = parse_triple(nums, 3, line_no);
            current->children.push_back({*kind, Isometry{static_cast<int>(k), m == 1, {tx, ty}}});
        } else {
            throw RuleParseError(line_no, "unknown directive '" + head + "'");
        }
    }
    if (!have_header) throw RuleParseError(line_no, "missing ruleset header");
    validate_rule_set(rs);
    return rs;
}

RuleSet load_rule_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rule file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_rule_set(buf.str());
}

std::string serialize(const RuleSet& rs) {
    std::ostringstream out;
    out << "ruleset " << rs.name << " inflation " << rs.inflation.to_triple() << "\n";
    for (const auto& [k, v] : rs.metadata) out << "meta " << k << " " << v << "\n";
    for (const auto& [key, rule] : rs.rules) {
        out << "\nrule " << kind_name(rule.parent) << " variant " << rule.variant << "\n";
        for (const Child& c : rule.children) {
            out << "child " << kind_name(c.kind) << " k=" << c.pose.k << " m=" << (c.pose.mirror ? 1 : 0)
                << " t=" << c.pose.t.x.to_triple() << " " << c.pose.t.y.to_triple() << "\n";
        }
    }
    return out.str();
}

void check_choice(const RuleSet& rs, const VariantChoice& choice) {
    if (choice.gray < 1 || choice.gray > rs.variant_count(TileKind::HalfGray))
        throw std::invalid_argument("gray variant " + std::to_string(choice.gray) + " not available");
    if (choice.yellow < 1 || choice.yellow > rs.variant_count(TileKind::HalfYellow))
        throw std::invalid_argument("yellow variant " + std::to_string(choice.yellow) + " not available");
}

SubstitutionRule rule_for(const RuleSet& rs, TileKind kind, bool mirrored, const VariantChoice& choice) {
    int variant = 1;
    if (kind == TileKind::HalfGray) variant = choice.gray;
    if (kind == TileKind::HalfYellow) variant = choice.yellow;
    const auto it = rs.rules.find({kind, variant});
    if (it == rs.rules.end()) throw std::out_of_range("no rule for " + rule_label(kind, variant));
    SubstitutionRule r = it->second;
    if (mirrored)
        for (Child& c : r.children) c.pose = compose(Isometry::reflection(), c.pose);
    return r;
}

CountMatrix count_matrix(const RuleSet& rs, const VariantChoice& choice) {
    CountMatrix m{};
    for (TileKind p : kAllKinds) {
        const SubstitutionRule r = rule_for(rs, p, false, choice);
        for (const Child& c : r.children) ++m[static_cast<std::size_t>(index_of(c.kind))][static_cast<std::size_t>(index_of(p))];
    }
    return m;
}

bool area_balanced(const CountMatrix& m, const RingValue& inflation) {
    for (TileKind p : kAllKinds) {
        RingValue sum;
        for (TileKind c : kAllKinds)
            sum += RingValue(m[static_cast<std::size_t>(index_of(c))][static_cast<std::size_t>(index_of(p))]) * prototype(c).area;
        if (sum != inflation * inflation * prototype(p).area) return false;
    }
    return true;
}

} // namespace dodeca
