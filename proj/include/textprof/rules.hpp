#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "textprof/attrs.hpp"
#include "textprof/corpus.hpp"

namespace textprof {

// Open/closed real interval used by numeric selectors.  Default bounds
// are ±infinity (never closed).
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double v) const {
    if (lo_closed ? v < lo : v <= lo) return false;
    if (hi_closed ? v > hi : v >= hi) return false;
    return true;
  }
  bool empty() const {
    if (lo < hi) return false;
    if (lo > hi) return true;
    return !(lo_closed && hi_closed);
  }
  bool operator==(const Interval&) const = default;
};

// A categorical/subject value inside a selector; nullopt stands for NULL.
using CatValue = std::optional<std::string>;

// One attribute condition, possibly an internal disjunction (several
// allowed values / intervals).  Subject selectors hold hierarchy nodes
// interpreted through `covers`; NULL matches only an explicit NULL entry.
struct Selector {
  std::string attribute;
  AttrKind kind = AttrKind::categorical;
  std::set<CatValue> allowed;       // subject / categorical
  std::vector<Interval> intervals;  // numeric

  bool operator==(const Selector&) const = default;
};

// Conjunction of selectors, at most one per attribute (map key = attribute
// name).  Empty = the universal complex.
struct Complex {
  std::map<std::string, Selector> selectors;

  bool operator==(const Complex&) const = default;
  bool universal() const { return selectors.empty(); }
};

// Does `value` satisfy the selector?  NULL satisfies only an explicit
// NULL entry; numeric NULL never satisfies an interval.
bool selector_matches(const Selector& s, const AttrValue& value,
                      const GeneralizationHierarchy* h);

// Does the complex cover the row?  Attributes missing from the schema are
// treated as NULL.
bool covers_row(const Complex& c, const Row& row, const Schema& schema);

// Is every row matched by `specific` also matched by `general`?  Used for
// absorption (dropping non-maximal star members).  Conservative for
// subject selectors: value-wise coverage via the hierarchy.
bool selector_subsumes(const Selector& general, const Selector& specific,
                       const GeneralizationHierarchy* h);
bool complex_subsumes(const Complex& general, const Complex& specific,
                      const GeneralizationHierarchy* h);

// Per-attribute conjunction of two complexes; nullopt when some attribute
// intersection is empty (the conjunction is unsatisfiable).
std::optional<Complex> intersect(const Complex& a, const Complex& b,
                                 const GeneralizationHierarchy* h);

// Positive-class DNF profile produced by the covering learner.  rules[i]
// covered new_coverage[i] then-uncovered positives when it was added and
// total_coverage[i] positives overall.
struct RuleSet {
  std::vector<Complex> rules;
  std::vector<std::size_t> new_coverage;
  std::vector<std::size_t> total_coverage;
};

// One ordered decision rule extracted from a tree path.
struct ClassRule {
  Complex conditions;
  Label label = Label::negative;
  double train_accuracy = 0.0;
  std::size_t train_covered = 0;
};

// Ordered rule list with fallback class, as produced by rule pruning.
struct PrunedRuleSet {
  std::vector<ClassRule> rules;
  Label default_label = Label::negative;
};

// --- rendering -------------------------------------------------------
// Human form mirrors the report style:
//   IF subject1 = nature or physical science & subject2 = medical science
//   THEN article is of interest
// Complexes of a DNF are joined with " or "; selectors with " & "; values
// of an internal disjunction with " or ".  Subject/hierarchy values render
// with underscores as spaces; attribute names render verbatim.
std::string render_selector(const Selector& s);
std::string render_complex(const Complex& c);
// DNF over the given complexes with the standard positive conclusion.
std::string render_positive_dnf(const std::vector<Complex>& complexes);
std::string render_ruleset(const RuleSet& rs);
std::string render_pruned_ruleset(const PrunedRuleSet& rs);

// --- machine form ----------------------------------------------------
nlohmann::ordered_json ruleset_to_json(const RuleSet& rs);
RuleSet ruleset_from_json(const nlohmann::json& j);
nlohmann::ordered_json pruned_ruleset_to_json(const PrunedRuleSet& rs);
PrunedRuleSet pruned_ruleset_from_json(const nlohmann::json& j);
nlohmann::ordered_json complex_to_json(const Complex& c);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace textprof
