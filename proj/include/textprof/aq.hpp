#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "textprof/attrs.hpp"
#include "textprof/rules.hpp"

namespace textprof::aq {

// Preference criteria for picking complexes out of a star, applied
// lexicographically; remaining ties keep construction order.
enum class LefCriterion {
  max_new_positive_coverage,  // most still-uncovered positives (descending)
  min_selector_count,         // fewest selectors
  min_value_count,            // fewest allowed values / intervals overall
};

struct LefConfig {
  std::vector<LefCriterion> criteria = {LefCriterion::max_new_positive_coverage,
                                        LefCriterion::min_selector_count,
                                        LefCriterion::min_value_count};
  std::size_t maxstar = 10;    // beam width during star generation
  std::uint64_t seed_rng = 0;  // drives seed-example selection
};

// Observed value set per categorical/subject attribute (incl. NULL when it
// occurs); complement selectors are built against this closed world.
using Domains = std::map<std::string, std::set<CatValue>>;

Domains collect_domains(const Schema& schema, const std::vector<Row>& positives,
                        const std::vector<Row>& negatives);

// For each attribute where seed and negative differ, the most general
// selector covering the seed's value and excluding the negative's:
// subject → highest ancestor of the seed value not covering the negative
// (complement-of-domain when either side is NULL); categorical → all
// observed values except the negative's; numeric → open half-interval on
// the seed's side of the midpoint.  NoiseError when the rows are
// identical.  Attributes admitting no such selector contribute none.
std::vector<Selector> extend_against(const Schema& schema, const Domains& domains,
                                     const Row& seed, const Row& negative);

// The star around a seed: most general complexes covering the seed and no
// negative, built by iterative specialization with the extend_against
// selectors, absorption of subsumed members, and a LEF-ranked trim to
// maxstar after each negative.  `uncovered` feeds the coverage criterion.
// Result is LEF-sorted, best first.
std::vector<Complex> generate_star(const Schema& schema, const Row& seed,
                                   const std::vector<Row>& negatives,
                                   const Domains& domains, const LefConfig& lef,
                                   const std::vector<Row>& uncovered);

// AQ covering loop: shuffle the positives by seed_rng, repeatedly pick the
// first uncovered one as seed, take the LEF-best star complex, until every
// positive is covered.  DataError on empty positives, NoiseError when an
// example appears in both classes.
RuleSet learn(const Schema& schema, const std::vector<Row>& positives,
              const std::vector<Row>& negatives, const LefConfig& lef);

// Strict matching: positive iff some rule covers the row.
Label classify(const RuleSet& rs, const Row& row, const Schema& schema);

}  // namespace textprof::aq
