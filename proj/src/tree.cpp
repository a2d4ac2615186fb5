#include "textprof/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "textprof/errors.hpp"

namespace textprof::c45 {

ExtendedVector extend_attributes(const FeatureVector& fv,
                                 const GeneralizationHierarchy& h, int levels) {
  if (levels < 1) throw ValidationError("extend_attributes: levels must be >= 1");
  ExtendedVector ev;
  ev.base = fv;
  for (int k = 1; k <= kSubjectSlots; ++k) {
    const auto& subject = fv.subjects[static_cast<std::size_t>(k - 1)];
    if (!subject) continue;
    for (int u = 1; u <= levels; ++u) {
      ev.ancestors["x" + std::to_string(k) + "_up" + std::to_string(u)] =
          h.ancestor_at(*subject, u);
    }
  }
  return ev;
}

Schema extend_schema(const Schema& base, int levels) {
  Schema schema = base;
  for (int k = 1; k <= kSubjectSlots; ++k) {
    for (int u = 1; u <= levels; ++u) {
      schema.attrs.push_back(
          {"x" + std::to_string(k) + "_up" + std::to_string(u),
           AttrKind::categorical});
    }
  }
  return schema;
}

Row to_row(const ExtendedVector& ev, const Schema& extended) {
  Row row = textprof::to_row(ev.base, extended);
  for (std::size_t i = 0; i < extended.size(); ++i) {
    const auto it = ev.ancestors.find(extended.attrs[i].name);
    if (it != ev.ancestors.end()) row[i] = it->second;
  }
  return row;
}

namespace {

double entropy(std::size_t a, std::size_t b) {
  const double n = static_cast<double>(a + b);
  if (n == 0.0) return 0.0;
  double h = 0.0;
  for (const std::size_t c : {a, b}) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

CatValue cat_of(const AttrValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::nullopt;
}

// Numeric attributes treat NULL as weight 0 (to_row never emits numeric
// NULLs, but hand-built rows may).
double num_of(const AttrValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return 0.0;
}

}  // namespace

std::optional<SplitGain> gain_ratio(const Schema& schema,
                                    const std::vector<Row>& rows,
                                    const std::vector<Label>& labels,
                                    int attr_index) {
  const std::size_t n = rows.size();
  std::size_t total_pos = 0;
  for (const Label l : labels) total_pos += l == Label::positive;
  const double base_entropy = entropy(total_pos, n - total_pos);
  const AttrDef& attr = schema.at(attr_index);
  const std::size_t ai = static_cast<std::size_t>(attr_index);

  if (attr.kind == AttrKind::numeric) {
    std::vector<std::pair<double, Label>> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = {num_of(rows[i][ai]), labels[i]};
    std::sort(values.begin(), values.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (values.front().first == values.back().first) return std::nullopt;

    std::size_t left_pos = 0, left_n = 0;
    double best_gain = -1.0, best_threshold = 0.0;
    std::size_t best_left_n = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_pos += values[i].second == Label::positive;
      ++left_n;
      if (values[i].first == values[i + 1].first) continue;
      const double threshold = (values[i].first + values[i + 1].first) / 2.0;
      const std::size_t right_n = n - left_n;
      const std::size_t right_pos = total_pos - left_pos;
      const double gain =
          base_entropy -
          (static_cast<double>(left_n) / n) * entropy(left_pos, left_n - left_pos) -
          (static_cast<double>(right_n) / n) * entropy(right_pos, right_n - right_pos);
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best_threshold = threshold;
        best_left_n = left_n;
      }
    }
    SplitGain out;
    out.gain = best_gain;
    out.threshold = best_threshold;
    const double wl = static_cast<double>(best_left_n) / n;
    out.split_info = -(wl * std::log2(wl) + (1 - wl) * std::log2(1 - wl));
    out.ratio = out.split_info > 0 ? out.gain / out.split_info : 0.0;
    return out;
  }

  std::map<CatValue, std::pair<std::size_t, std::size_t>> groups;  // value -> (pos, n)
  for (std::size_t i = 0; i < n; ++i) {
    auto& [pos, count] = groups[cat_of(rows[i][ai])];
    pos += labels[i] == Label::positive;
    ++count;
  }
  if (groups.size() < 2) return std::nullopt;
  SplitGain out;
  out.gain = base_entropy;
  for (const auto& [value, counts] : groups) {
    const auto& [pos, count] = counts;
    const double w = static_cast<double>(count) / n;
    out.gain -= w * entropy(pos, count - pos);
    out.split_info -= w * std::log2(w);
  }
  out.ratio = out.split_info > 0 ? out.gain / out.split_info : 0.0;
  return out;
}

namespace {

struct Builder {
  const Schema& schema;
  const std::vector<Row>& rows;
  const std::vector<Label>& labels;
  const TreeParams& params;

  std::unique_ptr<TreeNode> build(const std::vector<std::size_t>& indices) {
    auto node = std::make_unique<TreeNode>();
    for (const std::size_t i : indices) {
      ++(labels[i] == Label::positive ? node->n_positive : node->n_negative);
    }
    node->majority =
        node->n_positive > node->n_negative ? Label::positive : Label::negative;
    if (node->n_positive == 0 || node->n_negative == 0 ||
        indices.size() < static_cast<std::size_t>(params.min_node_size)) {
      return node;
    }

    std::vector<Row> sub_rows;
    std::vector<Label> sub_labels;
    sub_rows.reserve(indices.size());
    sub_labels.reserve(indices.size());
    for (const std::size_t i : indices) {
      sub_rows.push_back(rows[i]);
      sub_labels.push_back(labels[i]);
    }
    struct Candidate {
      int index;
      SplitGain split;
    };
    std::vector<Candidate> candidates;
    double gain_sum = 0.0;
    for (int a = 0; a < static_cast<int>(schema.size()); ++a) {
      if (auto split = gain_ratio(schema, sub_rows, sub_labels, a)) {
        gain_sum += split->gain;
        candidates.push_back({a, *split});
      }
    }
    if (candidates.empty()) return node;
    const double mean_gain = gain_sum / static_cast<double>(candidates.size());
    const Candidate* best = nullptr;
    for (const Candidate& c : candidates) {
      if (c.split.gain + 1e-12 < mean_gain) continue;  // C4.5 mean-gain guard
      if (!best || c.split.ratio > best->split.ratio + 1e-12) best = &c;
    }
    if (!best) return node;

    const AttrDef& attr = schema.at(best->index);
    node->attribute = attr.name;
    node->attr_index = best->index;
    node->kind = attr.kind;
    const std::size_t ai = static_cast<std::size_t>(best->index);
    if (attr.kind == AttrKind::numeric) {
      node->threshold = *best->split.threshold;
      std::vector<std::size_t> left, right;
      for (const std::size_t i : indices) {
        (num_of(rows[i][ai]) <= node->threshold ? left : right).push_back(i);
      }
      node->left = build(left);
      node->right = build(right);
    } else {
      std::map<CatValue, std::vector<std::size_t>> partition;
      for (const std::size_t i : indices) partition[cat_of(rows[i][ai])].push_back(i);
      for (auto& [value, group] : partition) {
        node->branches.emplace_back(value, build(group));
      }
    }
    return node;
  }
};

}  // namespace

DecisionTree build_tree(const Schema& schema, const std::vector<Row>& rows,
                        const std::vector<Label>& labels, const TreeParams& params) {
  if (rows.empty()) throw DataError("build_tree: no training examples");
  if (rows.size() != labels.size())
    throw ValidationError("build_tree: rows/labels size mismatch");
  std::vector<std::size_t> indices(rows.size());
  std::iota(indices.begin(), indices.end(), 0);
  Builder builder{schema, rows, labels, params};
  return DecisionTree{builder.build(indices)};
}

Label tree_classify(const DecisionTree& tree, const Row& row) {
  const TreeNode* node = tree.root.get();
  while (node && !node->leaf()) {
    const std::size_t ai = static_cast<std::size_t>(node->attr_index);
    if (node->kind == AttrKind::numeric) {
      node = (num_of(row[ai]) <= node->threshold ? node->left : node->right).get();
      continue;
    }
    const CatValue v = cat_of(row[ai]);
    const TreeNode* next = nullptr;
    for (const auto& [value, child] : node->branches) {
      if (value == v) {
        next = child.get();
        break;
      }
    }
    if (!next) return node->majority;  // value unseen during training
    node = next;
  }
  return node ? node->majority : Label::negative;
}

double pessimistic_error(std::size_t errors, std::size_t n, double cf) {
  if (n == 0) return 1.0;
  if (errors >= n) return 1.0;
  const double nn = static_cast<double>(n);
  // log C(n, k) for k = 0..errors
  std::vector<double> log_choose(errors + 1);
  for (std::size_t k = 0; k <= errors; ++k) {
    log_choose[k] = std::lgamma(nn + 1) - std::lgamma(static_cast<double>(k) + 1) -
                    std::lgamma(nn - static_cast<double>(k) + 1);
  }
  const auto cdf = [&](double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k <= errors; ++k) {
      sum += std::exp(log_choose[k] + static_cast<double>(k) * std::log(p) +
                      (nn - static_cast<double>(k)) * std::log1p(-p));
    }
    return sum;
  };
  // cdf is decreasing in p; find the smallest p with cdf(p) <= cf
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = (lo + hi) / 2.0;
    (cdf(mid) <= cf ? hi : lo) = mid;
  }
  return hi;
}

namespace {

struct PathRule {
  Complex conditions;
  Label label;
};

void collect_paths(const TreeNode* node, Complex path, const Schema& schema,
                   std::vector<PathRule>& out) {
  if (node->leaf()) {
    out.push_back({std::move(path), node->majority});
    return;
  }
  if (node->kind == AttrKind::numeric) {
    for (const bool left : {true, false}) {
      Selector s;
      s.attribute = node->attribute;
      s.kind = AttrKind::numeric;
      Interval i;
      if (left) {
        i.hi = node->threshold;
        i.hi_closed = true;
      } else {
        i.lo = node->threshold;
      }
      s.intervals.push_back(i);
      Complex single;
      single.selectors.emplace(s.attribute, s);
      // intersect folds repeated splits on one attribute into one selector
      std::optional<Complex> next = intersect(path, single, schema.hierarchy);
      if (next) collect_paths(left ? node->left.get() : node->right.get(),
                              std::move(*next), schema, out);
    }
    return;
  }
  for (const auto& [value, child] : node->branches) {
    Selector s;
    s.attribute = node->attribute;
    s.kind = node->kind;
    s.allowed.insert(value);
    Complex single;
    single.selectors.emplace(s.attribute, s);
    std::optional<Complex> next = intersect(path, single, schema.hierarchy);
    if (next) collect_paths(child.get(), std::move(*next), schema, out);
  }
}

struct RuleStats {
  std::size_t covered = 0;
  std::size_t errors = 0;
};

RuleStats rule_stats(const Complex& conditions, Label label, const Schema& schema,
                     const std::vector<Row>& rows, const std::vector<Label>& labels) {
  RuleStats stats;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!covers_row(conditions, rows[i], schema)) continue;
    ++stats.covered;
    if (labels[i] != label) ++stats.errors;
  }
  return stats;
}

}  // namespace

PrunedRuleSet tree_to_rules(const DecisionTree& tree, const Schema& schema,
                            const std::vector<Row>& rows,
                            const std::vector<Label>& labels,
                            const TreeParams& params) {
  std::vector<PathRule> paths;
  collect_paths(tree.root.get(), Complex{}, schema, paths);

  PrunedRuleSet rs;
  for (PathRule& path : paths) {
    Complex conditions = std::move(path.conditions);
    // greedy deletion while the pessimistic bound does not increase
    while (!conditions.selectors.empty()) {
      const RuleStats base =
          rule_stats(conditions, path.label, schema, rows, labels);
      const double base_bound = pessimistic_error(base.errors, base.covered, params.cf);
      std::string best_attr;
      double best_bound = 0.0;
      for (const auto& [attribute, selector] : conditions.selectors) {
        Complex without = conditions;
        without.selectors.erase(attribute);
        const RuleStats stats = rule_stats(without, path.label, schema, rows, labels);
        const double bound = pessimistic_error(stats.errors, stats.covered, params.cf);
        if (best_attr.empty() || bound < best_bound - 1e-12) {
          best_attr = attribute;
          best_bound = bound;
        }
      }
      if (best_attr.empty() || best_bound > base_bound + 1e-12) break;
      conditions.selectors.erase(best_attr);
    }

    const RuleStats stats = rule_stats(conditions, path.label, schema, rows, labels);
    ClassRule rule;
    rule.conditions = std::move(conditions);
    rule.label = path.label;
    rule.train_covered = stats.covered;
    rule.train_accuracy =
        stats.covered == 0
            ? 0.0
            : static_cast<double>(stats.covered - stats.errors) / stats.covered;
    const bool duplicate =
        std::any_of(rs.rules.begin(), rs.rules.end(), [&](const ClassRule& r) {
          return r.label == rule.label && r.conditions == rule.conditions;
        });
    if (!duplicate) rs.rules.push_back(std::move(rule));
  }

  std::stable_sort(rs.rules.begin(), rs.rules.end(),
                   [](const ClassRule& a, const ClassRule& b) {
                     return a.train_accuracy > b.train_accuracy;
                   });

  std::size_t uncovered_pos = 0, uncovered_neg = 0, overall_pos = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    overall_pos += labels[i] == Label::positive;
    const bool covered =
        std::any_of(rs.rules.begin(), rs.rules.end(), [&](const ClassRule& r) {
          return covers_row(r.conditions, rows[i], schema);
        });
    if (!covered) ++(labels[i] == Label::positive ? uncovered_pos : uncovered_neg);
  }
  if (uncovered_pos + uncovered_neg > 0) {
    rs.default_label =
        uncovered_pos > uncovered_neg ? Label::positive : Label::negative;
  } else {
    rs.default_label = overall_pos > rows.size() - overall_pos ? Label::positive
                                                               : Label::negative;
  }
  return rs;
}

Label classify(const PrunedRuleSet& rules, const Row& row, const Schema& schema) {
  for (const ClassRule& r : rules.rules) {
    if (covers_row(r.conditions, row, schema)) return r.label;
  }
  return rules.default_label;
}

}  // namespace textprof::c45
