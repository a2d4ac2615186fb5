#include "textprof/aq.hpp"

#include <algorithm>
#include <numeric>

#include "textprof/errors.hpp"
#include "textprof/rng.hpp"

namespace textprof::aq {

namespace {

CatValue cat_of(const AttrValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::nullopt;
}

void collect_row(const Schema& schema, const Row& row, Domains& domains) {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const AttrDef& attr = schema.attrs[i];
    if (attr.kind == AttrKind::numeric) continue;
    domains[attr.name].insert(cat_of(row[i]));
  }
}

}  // namespace

Domains collect_domains(const Schema& schema, const std::vector<Row>& positives,
                        const std::vector<Row>& negatives) {
  Domains domains;
  for (const Row& r : positives) collect_row(schema, r, domains);
  for (const Row& r : negatives) collect_row(schema, r, domains);
  return domains;
}

namespace {

// Complement selector over the observed domain: everything except values
// that would admit the negative's value.  For subject attributes that
// means dropping ancestors of the negative value too.
std::optional<Selector> complement_selector(const AttrDef& attr,
                                            const Domains& domains,
                                            const CatValue& negative_value,
                                            const GeneralizationHierarchy* h) {
  const auto it = domains.find(attr.name);
  if (it == domains.end()) return std::nullopt;
  Selector s;
  s.attribute = attr.name;
  s.kind = attr.kind;
  for (const CatValue& v : it->second) {
    if (v == negative_value) continue;
    if (attr.kind == AttrKind::subject && h && v && negative_value &&
        h->covers(*v, *negative_value)) {
      continue;
    }
    s.allowed.insert(v);
  }
  if (s.allowed.empty()) return std::nullopt;
  return s;
}

}  // namespace

std::vector<Selector> extend_against(const Schema& schema, const Domains& domains,
                                     const Row& seed, const Row& negative) {
  std::vector<Selector> out;
  bool any_difference = false;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (seed[i] == negative[i]) continue;
    any_difference = true;
    const AttrDef& attr = schema.attrs[i];
    switch (attr.kind) {
      case AttrKind::numeric: {
        const double* sv = std::get_if<double>(&seed[i]);
        const double* nv = std::get_if<double>(&negative[i]);
        if (!sv) break;  // cannot cover a NULL seed value with an interval
        Selector s;
        s.attribute = attr.name;
        s.kind = AttrKind::numeric;
        Interval interval;  // nv == NULL: any value excludes the negative
        if (nv) {
          const double mid = (*sv + *nv) / 2.0;
          if (*sv > *nv) {
            interval.lo = mid;
          } else {
            interval.hi = mid;
          }
        }
        s.intervals.push_back(interval);
        out.push_back(std::move(s));
        break;
      }
      case AttrKind::categorical: {
        if (auto s = complement_selector(attr, domains, cat_of(negative[i]),
                                         schema.hierarchy)) {
          out.push_back(std::move(*s));
        }
        break;
      }
      case AttrKind::subject: {
        const std::string* sv = std::get_if<std::string>(&seed[i]);
        const std::string* nv = std::get_if<std::string>(&negative[i]);
        const GeneralizationHierarchy* h = schema.hierarchy;
        if (!sv || !nv || !h) {
          // NULL on either side: fall back to the categorical complement
          if (auto s = complement_selector(attr, domains, cat_of(negative[i]), h)) {
            out.push_back(std::move(*s));
          }
          break;
        }
        // climb from the seed value to the highest ancestor that still
        // excludes the negative value
        std::optional<std::string> best;
        std::string current = *sv;
        while (true) {
          if (h->covers(current, *nv)) break;
          best = current;
          if (current == h->root()) break;
          current = h->parent(current);
        }
        if (best) {
          Selector s;
          s.attribute = attr.name;
          s.kind = AttrKind::subject;
          s.allowed.insert(*best);
          out.push_back(std::move(s));
        }
        break;
      }
    }
  }
  if (!any_difference)
    throw NoiseError("a negative example is identical to the seed");
  return out;
}

namespace {

// Materialize a CatValue for selector_matches.
AttrValue as_attr_value(const CatValue& v) {
  if (v) return *v;
  return AttrValue{};
}

// Drop selectors that every observed value of their attribute satisfies;
// they constrain nothing within the training world.
void normalize(Complex& c, const Domains& domains, const GeneralizationHierarchy* h) {
  for (auto it = c.selectors.begin(); it != c.selectors.end();) {
    const Selector& s = it->second;
    bool vacuous = false;
    if (s.kind != AttrKind::numeric) {
      const auto dom = domains.find(it->first);
      if (dom != domains.end()) {
        vacuous = std::all_of(dom->second.begin(), dom->second.end(),
                              [&](const CatValue& v) {
                                return selector_matches(s, as_attr_value(v), h);
                              });
      }
    }
    it = vacuous ? c.selectors.erase(it) : ++it;
  }
}

struct LefScore {
  std::size_t new_coverage = 0;
  std::size_t selector_count = 0;
  std::size_t value_count = 0;
};

LefScore score_complex(const Complex& c, const Schema& schema,
                       const std::vector<Row>& uncovered) {
  LefScore score;
  score.new_coverage = static_cast<std::size_t>(
      std::count_if(uncovered.begin(), uncovered.end(),
                    [&](const Row& r) { return covers_row(c, r, schema); }));
  score.selector_count = c.selectors.size();
  for (const auto& [attribute, s] : c.selectors) {
    score.value_count += s.allowed.size() + s.intervals.size();
  }
  return score;
}

// true when a beats b under the configured criteria
bool lef_better(const LefScore& a, const LefScore& b, const LefConfig& lef) {
  for (const LefCriterion criterion : lef.criteria) {
    switch (criterion) {
      case LefCriterion::max_new_positive_coverage:
        if (a.new_coverage != b.new_coverage) return a.new_coverage > b.new_coverage;
        break;
      case LefCriterion::min_selector_count:
        if (a.selector_count != b.selector_count)
          return a.selector_count < b.selector_count;
        break;
      case LefCriterion::min_value_count:
        if (a.value_count != b.value_count) return a.value_count < b.value_count;
        break;
    }
  }
  return false;  // tie: stable sort keeps construction order
}

void sort_and_trim(std::vector<Complex>& star, const Schema& schema,
                   const std::vector<Row>& uncovered, const LefConfig& lef) {
  std::vector<LefScore> scores;
  scores.reserve(star.size());
  for (const Complex& c : star) scores.push_back(score_complex(c, schema, uncovered));
  std::vector<std::size_t> order(star.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lef_better(scores[a], scores[b], lef);
  });
  std::vector<Complex> sorted;
  sorted.reserve(std::min(star.size(), lef.maxstar));
  for (std::size_t i : order) {
    if (sorted.size() == lef.maxstar) break;
    sorted.push_back(std::move(star[i]));
  }
  star = std::move(sorted);
}

}  // namespace

std::vector<Complex> generate_star(const Schema& schema, const Row& seed,
                                   const std::vector<Row>& negatives,
                                   const Domains& domains, const LefConfig& lef,
                                   const std::vector<Row>& uncovered) {
  const GeneralizationHierarchy* h = schema.hierarchy;
  std::vector<Complex> star{Complex{}};
  for (const Row& negative : negatives) {
    const bool any_covers =
        std::any_of(star.begin(), star.end(),
                    [&](const Complex& c) { return covers_row(c, negative, schema); });
    if (!any_covers) continue;
    const std::vector<Selector> extension =
        extend_against(schema, domains, seed, negative);

    std::vector<Complex> candidates;
    for (Complex& c : star) {
      if (!covers_row(c, negative, schema)) {
        candidates.push_back(std::move(c));
        continue;
      }
      for (const Selector& s : extension) {
        Complex single;
        single.selectors.emplace(s.attribute, s);
        if (std::optional<Complex> merged = intersect(c, single, h)) {
          // the intersection is an exact conjunction, so it still covers
          // the seed and excludes every processed negative
          candidates.push_back(std::move(*merged));
        }
      }
    }
    for (Complex& c : candidates) normalize(c, domains, h);

    // drop duplicates and absorbed (strictly less general) members
    std::vector<bool> alive(candidates.size(), true);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (!alive[j]) continue;
        const bool i_over_j = complex_subsumes(candidates[i], candidates[j], h);
        const bool j_over_i = complex_subsumes(candidates[j], candidates[i], h);
        if (i_over_j) {
          alive[j] = false;  // j equivalent or more specific
        } else if (j_over_i) {
          alive[i] = false;
          break;
        }
      }
    }
    std::vector<Complex> pruned;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (alive[i]) pruned.push_back(std::move(candidates[i]));
    }
    sort_and_trim(pruned, schema, uncovered, lef);
    star = std::move(pruned);
    if (star.empty()) break;  // seed inseparable from this negative
  }
  sort_and_trim(star, schema, uncovered, lef);
  return star;
}

RuleSet learn(const Schema& schema, const std::vector<Row>& positives,
              const std::vector<Row>& negatives, const LefConfig& lef) {
  if (positives.empty()) throw DataError("no positive training examples");
  for (std::size_t p = 0; p < positives.size(); ++p) {
    for (std::size_t n = 0; n < negatives.size(); ++n) {
      if (positives[p] == negatives[n]) {
        throw NoiseError("training example appears with both labels (positive #" +
                         std::to_string(p) + ", negative #" + std::to_string(n) +
                         ")");
      }
    }
  }
  const Domains domains = collect_domains(schema, positives, negatives);

  std::vector<std::size_t> order(positives.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(lef.seed_rng);
  rng.shuffle(order);

  std::vector<bool> covered(positives.size(), false);
  std::size_t n_covered = 0;
  RuleSet rs;
  while (n_covered < positives.size()) {
    std::size_t seed_index = positives.size();
    for (std::size_t i : order) {
      if (!covered[i]) {
        seed_index = i;
        break;
      }
    }
    std::vector<Row> uncovered;
    for (std::size_t i = 0; i < positives.size(); ++i) {
      if (!covered[i]) uncovered.push_back(positives[i]);
    }
    const std::vector<Complex> star = generate_star(
        schema, positives[seed_index], negatives, domains, lef, uncovered);
    if (star.empty()) {
      throw NoiseError("positive #" + std::to_string(seed_index) +
                       " cannot be separated from the negatives in this "
                       "attribute language");
    }
    const Complex& best = star.front();
    std::size_t new_coverage = 0, total_coverage = 0;
    for (std::size_t i = 0; i < positives.size(); ++i) {
      if (!covers_row(best, positives[i], schema)) continue;
      ++total_coverage;
      if (!covered[i]) {
        covered[i] = true;
        ++n_covered;
        ++new_coverage;
      }
    }
    rs.rules.push_back(best);
    rs.new_coverage.push_back(new_coverage);
    rs.total_coverage.push_back(total_coverage);
  }
  return rs;
}

Label classify(const RuleSet& rs, const Row& row, const Schema& schema) {
  for (const Complex& c : rs.rules) {
    if (covers_row(c, row, schema)) return Label::positive;
  }
  return Label::negative;
}

}  // namespace textprof::aq
