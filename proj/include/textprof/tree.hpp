#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "textprof/attrs.hpp"
#include "textprof/rules.hpp"

namespace textprof::c45 {

// FeatureVector plus the ancestor attributes xK_upU (u = 1..levels) for
// each non-null subject slot; walking past the root yields DUMMY.
struct ExtendedVector {
  FeatureVector base;
  std::map<std::string, std::string> ancestors;  // "x1_up1" -> node or DUMMY
};

ExtendedVector extend_attributes(const FeatureVector& fv,
                                 const GeneralizationHierarchy& h, int levels);

// Schema for extended vectors: the base schema plus categorical xK_upU
// attributes for every subject slot (k = 1..5, u = 1..levels), appended in
// slot-major order.  NULL-subject vectors leave their ancestors NULL.
Schema extend_schema(const Schema& base, int levels);
Row to_row(const ExtendedVector& ev, const Schema& extended);

struct TreeParams {
  int min_node_size = 2;  // grow only nodes with at least this many examples
  double cf = 0.25;       // pruning confidence for the binomial upper bound
  int ancestor_levels = 6;
};

struct TreeNode {
  // leaf fields (meaningful for leaves; internal nodes keep the majority
  // for classification of unseen branch values)
  Label majority = Label::negative;
  std::size_t n_positive = 0;
  std::size_t n_negative = 0;
  // split fields (empty attribute = leaf)
  std::string attribute;
  int attr_index = -1;
  AttrKind kind = AttrKind::categorical;
  double threshold = 0.0;                    // numeric: <= goes left
  std::unique_ptr<TreeNode> left, right;     // numeric children
  std::vector<std::pair<CatValue, std::unique_ptr<TreeNode>>> branches;  // categorical

  bool leaf() const { return attribute.empty(); }
};

struct DecisionTree {
  std::unique_ptr<TreeNode> root;
};

// Gain ratio of splitting `rows` on the attribute; nullopt when the
// attribute is constant there (excluded from candidates).  Numeric
// attributes report the best midpoint threshold by information gain.
struct SplitGain {
  double gain = 0.0;
  double split_info = 0.0;
  double ratio = 0.0;
  std::optional<double> threshold;  // numeric only
};
std::optional<SplitGain> gain_ratio(const Schema& schema,
                                    const std::vector<Row>& rows,
                                    const std::vector<Label>& labels,
                                    int attr_index);

// Recursive gain-ratio induction: stop on purity, on nodes smaller than
// min_node_size, or when no usable candidate remains; candidates must
// reach the mean gain of all candidates; ties by attribute declaration
// order; leaf ties resolve to negative.
DecisionTree build_tree(const Schema& schema, const std::vector<Row>& rows,
                        const std::vector<Label>& labels, const TreeParams& params);

// Route a row down the tree (unseen categorical branch values stop at the
// node's majority).  Exposed for tests; evaluation classifies via rules.
Label tree_classify(const DecisionTree& tree, const Row& row);

// Path rules with greedy condition deletion while the pessimistic error
// (binomial upper confidence bound at params.cf) does not increase;
// duplicates merged, rules ordered by training accuracy, default class =
// majority of the training examples no rule covers.
PrunedRuleSet tree_to_rules(const DecisionTree& tree, const Schema& schema,
                            const std::vector<Row>& rows,
                            const std::vector<Label>& labels,
                            const TreeParams& params);

// First matching rule's class, else the default.
Label classify(const PrunedRuleSet& rules, const Row& row, const Schema& schema);

// Smallest success probability p with P[Binomial(n, p) <= errors] <= cf:
// the pessimistic per-rule error estimate (1.0 when n = 0).
double pessimistic_error(std::size_t errors, std::size_t n, double cf);

}  // namespace textprof::c45
