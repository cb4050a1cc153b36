#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dodeca/tiles.hpp"

namespace dodeca {

/// Malformed rule text; carries the 1-based line number.
class RuleParseError : public std::runtime_error {
public:
    RuleParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A rule or rule set that parses but violates a substitution invariant.
class RuleValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Child {
    TileKind kind;
    Isometry pose; // in the inflated-parent frame
    friend bool operator==(const Child&, const Child&) = default;
};

struct SubstitutionRule {
    TileKind parent = TileKind::Square;
    int variant = 1;
    std::vector<Child> children;
};

struct ValidationReport {
    std::string rule_name;
    RingValue expected_area;
    RingValue children_area;
    RingValue residue; // children_area - expected_area
    /// Indices of children with a vertex outside the inflated parent.
    std::vector<std::size_t> outside_children;
    /// Child index pairs whose interiors overlap.
    std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs;
    bool passed = false;

    std::string summary() const;
};

/// Inflated parent polygon for a rule under the given inflation factor.
ConvexPolygon inflated_parent(TileKind parent, const RingValue& inflation);

ValidationReport validate_rule(const SubstitutionRule& rule, const RingValue& inflation);

struct RuleSet {
    std::string name;
    RingValue inflation = RingValue::lambda();
    /// Keyed by (parent kind, variant).
    std::map<std::pair<TileKind, int>, SubstitutionRule> rules;
    /// Free-form key/value annotations such as the seed half-triangle colors.
    std::vector<std::pair<std::string, std::string>> metadata;

    int variant_count(TileKind kind) const;
    std::size_t rule_count() const { return rules.size(); }
};

/// Parses and fully validates rule-file text.
RuleSet load_rule_set(const std::string& text);
RuleSet load_rule_set_file(const std::string& path);

/// Checks completeness plus per-rule validation; throws RuleValidationError.
void validate_rule_set(const RuleSet& rs);

/// Bit-exact serialization in the rule-file grammar.
std::string serialize(const RuleSet& rs);

/// Rule for a tile of `kind`; when `mirrored`, the children are reflected
/// across the x-axis (the parent frame of a reflected tile).
SubstitutionRule rule_for(const RuleSet& rs, TileKind kind, bool mirrored, const VariantChoice& choice);

void check_choice(const RuleSet& rs, const VariantChoice& choice);

/// counts[c][p]: number of children of kind c in the rule for parent p.
using CountMatrix = std::array<std::array<std::int64_t, kKindCount>, kKindCount>;

CountMatrix count_matrix(const RuleSet& rs, const VariantChoice& choice);

/// Checks sum_c M[c][p] * area(c) == inflation^2 * area(p) for every parent.
bool area_balanced(const CountMatrix& m, const RingValue& inflation);

} // namespace dodeca
