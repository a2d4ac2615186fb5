#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "textprof/aq.hpp"
#include "textprof/corpus.hpp"
#include "textprof/features.hpp"
#include "textprof/rocchio.hpp"
#include "textprof/tree.hpp"

namespace textprof {

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::size_t total() const { return tp + fp + fn + tn; }
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  bool precision_flagged = false;  // nothing was predicted positive
  bool recall_flagged = false;     // no positives among the test examples
};

// accuracy = (tp+tn)/total, precision = tp/(tp+fp), recall = tp/(tp+fn);
// zero denominators report 0.0 with the matching flag set.
// ValidationError when the confusion matrix is empty.
Metrics metrics(const Confusion& c);

enum class LearnerKind { aq, tree, rocchio };

std::string learner_name(LearnerKind learner);
LearnerKind learner_from_name(std::string_view name);  // ParseError

struct TTestResult {
  bool significant = false;
  double t = 0.0;
  double critical = 0.0;
  std::size_t df = 0;
};

// Two-sample pooled-variance t-test, two-tailed, df = 2n−2.  Supported
// levels: 0.90, 0.95, 0.99 (ConfigError otherwise); samples must have the
// same size ≥ 2 (ValidationError).  Zero pooled variance: equal means →
// not significant, different means → significant.
TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b,
                   double level = 0.90);

// Mean condition count per rule left-hand side (0 for an empty set); the
// Profile overload counts its nonzero terms.
double profile_length(const RuleSet& rules);
double profile_length(const PrunedRuleSet& rules);
double profile_length(const Profile& profile);

struct RunResult {
  Confusion confusion;
  Metrics metrics;
  double profile_length = 0.0;
  std::optional<double> cutoff;  // rocchio: the selected similarity cutoff
};

struct RunReport {
  std::string problem;
  LearnerKind learner = LearnerKind::aq;
  FeatureSet feature_set = FeatureSet::all;
  std::string split;  // e.g. "70-30x10" or "kfold10"
  std::size_t n_keywords = 0;
  std::uint64_t seed = 0;
  std::vector<RunResult> runs;

  std::vector<double> accuracies() const;
  double mean_accuracy() const;
  double mean_precision() const;
  double mean_recall() const;
  double mean_profile_length() const;
  double accuracy_variance() const;  // sample variance over runs
};

nlohmann::ordered_json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

// Everything one experiment needs.  Split seeds come from `split.seed`;
// learner randomness is derived per run from `seed`.
struct ExperimentSpec {
  const Corpus* corpus = nullptr;
  std::string problem = "corpus";
  FeatureSet feature_set = FeatureSet::all;
  LearnerKind learner = LearnerKind::aq;
  SplitPlan split;
  std::size_t n_keywords = 50;
  std::uint64_t seed = 0;
  aq::LefConfig lef;
  c45::TreeParams tree;
  RocchioParams rocchio;
  const GeneralizationHierarchy* hierarchy = nullptr;
  const Lexicon* lexicon = nullptr;
  const CategoryCorrelations* correlations = nullptr;
  const Gazetteer* gazetteer = nullptr;
  std::set<std::string> stopwords = default_stopwords();
};

// Runs every train/test piece of the split plan: the feature context (df
// table + keyword vocabulary) is rebuilt per run from the training split
// plus unlabeled documents, never from test documents.  The rocchio
// learner requires the tfidf feature set; it scores the test split over
// the cutoff grid and keeps the cutoff maximizing precision + recall.
// Data/noise errors are re-raised with the run index attached.
RunReport run_experiment(const ExperimentSpec& spec);

// Fixed-width text grid, one row per (problem, learner), feature-set
// columns TFIDF/POL/SFC/ALL: an accuracy block (best cell per row marked
// '*') and a precision/recall block with `p/r` cells.  Zeroes render as
// "0.0", other values with two decimals, absent cells as '-'.
std::string render_table(const std::vector<RunReport>& reports);
std::string render_table_csv(const std::vector<RunReport>& reports);

}  // namespace textprof
