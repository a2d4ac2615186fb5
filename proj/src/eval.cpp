#include "textprof/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "textprof/errors.hpp"
#include "textprof/rng.hpp"

namespace textprof {

Metrics metrics(const Confusion& c) {
  if (c.total() == 0) throw ValidationError("metrics: empty confusion matrix");
  Metrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fp == 0) {
    m.precision_flagged = true;
  } else {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn == 0) {
    m.recall_flagged = true;
  } else {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  return m;
}

std::string learner_name(LearnerKind learner) {
  switch (learner) {
    case LearnerKind::aq: return "aq";
    case LearnerKind::tree: return "tree";
    case LearnerKind::rocchio: return "rocchio";
  }
  throw ValidationError("unknown learner kind");
}

LearnerKind learner_from_name(std::string_view name) {
  if (name == "aq") return LearnerKind::aq;
  if (name == "tree") return LearnerKind::tree;
  if (name == "rocchio") return LearnerKind::rocchio;
  throw ParseError("unknown learner '" + std::string(name) + "' (expected aq, tree or rocchio)");
}

namespace {

// Student-t two-tailed critical values for df 1..100; past 100 we fall back
// to the normal quantile.  Frozen from the usual tables.
constexpr double kCrit90[100] = {
    6.313752, 2.919986, 2.353363, 2.131847, 2.015048, 1.943180, 1.894579, 1.859548,
    1.833113, 1.812461, 1.795885, 1.782288, 1.770933, 1.761310, 1.753050, 1.745884,
    1.739607, 1.734064, 1.729133, 1.724718, 1.720743, 1.717144, 1.713872, 1.710882,
    1.708141, 1.705618, 1.703288, 1.701131, 1.699127, 1.697261, 1.695519, 1.693889,
    1.692360, 1.690924, 1.689572, 1.688298, 1.687094, 1.685954, 1.684875, 1.683851,
    1.682878, 1.681952, 1.681071, 1.680230, 1.679427, 1.678660, 1.677927, 1.677224,
    1.676551, 1.675905, 1.675285, 1.674689, 1.674116, 1.673565, 1.673034, 1.672522,
    1.672029, 1.671553, 1.671093, 1.670649, 1.670219, 1.669804, 1.669402, 1.669013,
    1.668636, 1.668271, 1.667916, 1.667572, 1.667239, 1.666914, 1.666600, 1.666294,
    1.665996, 1.665707, 1.665425, 1.665151, 1.664885, 1.664625, 1.664371, 1.664125,
    1.663884, 1.663649, 1.663420, 1.663197, 1.662978, 1.662765, 1.662557, 1.662354,
    1.662155, 1.661961, 1.661771, 1.661585, 1.661404, 1.661226, 1.661052, 1.660881,
    1.660715, 1.660551, 1.660391, 1.660234};

constexpr double kCrit95[100] = {
    12.706205, 4.302653, 3.182446, 2.776445, 2.570582, 2.446912, 2.364624, 2.306004,
    2.262157, 2.228139, 2.200985, 2.178813, 2.160369, 2.144787, 2.131450, 2.119905,
    2.109816, 2.100922, 2.093024, 2.085963, 2.079614, 2.073873, 2.068658, 2.063899,
    2.059539, 2.055529, 2.051831, 2.048407, 2.045230, 2.042272, 2.039513, 2.036933,
    2.034515, 2.032245, 2.030108, 2.028094, 2.026192, 2.024394, 2.022691, 2.021075,
    2.019541, 2.018082, 2.016692, 2.015368, 2.014103, 2.012896, 2.011741, 2.010635,
    2.009575, 2.008559, 2.007584, 2.006647, 2.005746, 2.004879, 2.004045, 2.003241,
    2.002465, 2.001717, 2.000995, 2.000298, 1.999624, 1.998972, 1.998341, 1.997730,
    1.997138, 1.996564, 1.996008, 1.995469, 1.994945, 1.994437, 1.993943, 1.993464,
    1.992997, 1.992543, 1.992102, 1.991673, 1.991254, 1.990847, 1.990450, 1.990063,
    1.989686, 1.989319, 1.988960, 1.988610, 1.988268, 1.987934, 1.987608, 1.987290,
    1.986979, 1.986675, 1.986377, 1.986086, 1.985802, 1.985523, 1.985251, 1.984984,
    1.984723, 1.984467, 1.984217, 1.983972};

constexpr double kCrit99[100] = {
    63.656741, 9.924843, 5.840909, 4.604095, 4.032143, 3.707428, 3.499483, 3.355387,
    3.249836, 3.169273, 3.105807, 3.054540, 3.012276, 2.976843, 2.946713, 2.920782,
    2.898231, 2.878440, 2.860935, 2.845340, 2.831360, 2.818756, 2.807336, 2.796940,
    2.787436, 2.778715, 2.770683, 2.763262, 2.756386, 2.749996, 2.744042, 2.738481,
    2.733277, 2.728394, 2.723806, 2.719485, 2.715409, 2.711558, 2.707913, 2.704459,
    2.701181, 2.698066, 2.695102, 2.692278, 2.689585, 2.687013, 2.684556, 2.682204,
    2.679952, 2.677793, 2.675722, 2.673734, 2.671823, 2.669985, 2.668216, 2.666512,
    2.664870, 2.663287, 2.661759, 2.660283, 2.658857, 2.657479, 2.656145, 2.654854,
    2.653604, 2.652394, 2.651220, 2.650081, 2.648977, 2.647905, 2.646863, 2.645852,
    2.644869, 2.643913, 2.642983, 2.642078, 2.641198, 2.640340, 2.639505, 2.638691,
    2.637897, 2.637123, 2.636369, 2.635632, 2.634914, 2.634212, 2.633527, 2.632858,
    2.632204, 2.631565, 2.630940, 2.630330, 2.629732, 2.629148, 2.628576, 2.628016,
    2.627468, 2.626931, 2.626405, 2.625891};

double critical_value(double level, std::size_t df) {
  const double* table = nullptr;
  double normal = 0.0;
  if (std::abs(level - 0.90) < 1e-9) {
    table = kCrit90;
    normal = 1.644854;
  } else if (std::abs(level - 0.95) < 1e-9) {
    table = kCrit95;
    normal = 1.959964;
  } else if (std::abs(level - 0.99) < 1e-9) {
    table = kCrit99;
    normal = 2.575829;
  } else {
    throw ConfigError("t_test: unsupported confidence level (use 0.90, 0.95 or 0.99)");
  }
  if (df == 0) throw ValidationError("t_test: zero degrees of freedom");
  if (df > 100) return normal;
  return table[df - 1];
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b, double level) {
  if (a.size() != b.size())
    throw ValidationError("t_test: samples must have the same size");
  if (a.size() < 2) throw ValidationError("t_test: need at least two observations per sample");
  const std::size_t n = a.size();
  TTestResult res;
  res.df = 2 * n - 2;
  res.critical = critical_value(level, res.df);

  const double ma = mean_of(a), mb = mean_of(b);
  double ssq = 0.0;
  for (double x : a) ssq += (x - ma) * (x - ma);
  for (double x : b) ssq += (x - mb) * (x - mb);
  const double pooled = ssq / static_cast<double>(res.df);

  if (pooled == 0.0) {
    // Degenerate samples: identical constants are indistinguishable,
    // different constants differ with certainty.
    if (ma == mb) {
      res.t = 0.0;
      res.significant = false;
    } else {
      res.t = ma > mb ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
      res.significant = true;
    }
    return res;
  }
  res.t = (ma - mb) / std::sqrt(pooled * 2.0 / static_cast<double>(n));
  res.significant = std::abs(res.t) > res.critical;
  return res;
}

double profile_length(const RuleSet& rules) {
  if (rules.rules.empty()) return 0.0;
  std::size_t selectors = 0;
  for (const auto& r : rules.rules) selectors += r.selectors.size();
  return static_cast<double>(selectors) / static_cast<double>(rules.rules.size());
}

double profile_length(const PrunedRuleSet& rules) {
  if (rules.rules.empty()) return 0.0;
  std::size_t conditions = 0;
  for (const auto& r : rules.rules) conditions += r.conditions.selectors.size();
  return static_cast<double>(conditions) / static_cast<double>(rules.rules.size());
}

double profile_length(const Profile& profile) {
  std::size_t nonzero = 0;
  for (const auto& [term, weight] : profile.weights) {
    if (weight != 0.0) ++nonzero;
  }
  return static_cast<double>(nonzero);
}

std::vector<double> RunReport::accuracies() const {
  std::vector<double> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(r.metrics.accuracy);
  return out;
}

static double mean_over_runs(const std::vector<RunResult>& runs, double (*get)(const RunResult&)) {
  if (runs.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : runs) s += get(r);
  return s / static_cast<double>(runs.size());
}

double RunReport::mean_accuracy() const {
  return mean_over_runs(runs, [](const RunResult& r) { return r.metrics.accuracy; });
}
double RunReport::mean_precision() const {
  return mean_over_runs(runs, [](const RunResult& r) { return r.metrics.precision; });
}
double RunReport::mean_recall() const {
  return mean_over_runs(runs, [](const RunResult& r) { return r.metrics.recall; });
}
double RunReport::mean_profile_length() const {
  return mean_over_runs(runs, [](const RunResult& r) { return r.profile_length; });
}

double RunReport::accuracy_variance() const {
  if (runs.size() < 2) return 0.0;
  const double m = mean_accuracy();
  double ssq = 0.0;
  for (const auto& r : runs) {
    const double d = r.metrics.accuracy - m;
    ssq += d * d;
  }
  return ssq / static_cast<double>(runs.size() - 1);
}

nlohmann::ordered_json report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["problem"] = report.problem;
  j["learner"] = learner_name(report.learner);
  j["feature_set"] = feature_set_name(report.feature_set);
  j["split"] = report.split;
  j["n_keywords"] = report.n_keywords;
  j["seed"] = report.seed;
  j["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : report.runs) {
    nlohmann::ordered_json jr;
    jr["tp"] = r.confusion.tp;
    jr["fp"] = r.confusion.fp;
    jr["fn"] = r.confusion.fn;
    jr["tn"] = r.confusion.tn;
    jr["accuracy"] = r.metrics.accuracy;
    jr["precision"] = r.metrics.precision;
    jr["recall"] = r.metrics.recall;
    jr["precision_flagged"] = r.metrics.precision_flagged;
    jr["recall_flagged"] = r.metrics.recall_flagged;
    jr["profile_length"] = r.profile_length;
    if (r.cutoff) jr["cutoff"] = *r.cutoff;
    j["runs"].push_back(std::move(jr));
  }
  nlohmann::ordered_json agg;
  agg["accuracy_mean"] = report.mean_accuracy();
  agg["precision_mean"] = report.mean_precision();
  agg["recall_mean"] = report.mean_recall();
  agg["profile_length_mean"] = report.mean_profile_length();
  agg["accuracy_variance"] = report.accuracy_variance();
  j["aggregate"] = std::move(agg);
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  try {
    RunReport report;
    report.problem = j.at("problem").get<std::string>();
    report.learner = learner_from_name(j.at("learner").get<std::string>());
    report.feature_set = feature_set_from_name(j.at("feature_set").get<std::string>());
    report.split = j.at("split").get<std::string>();
    report.n_keywords = j.at("n_keywords").get<std::size_t>();
    report.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jr : j.at("runs")) {
      RunResult r;
      r.confusion.tp = jr.at("tp").get<std::size_t>();
      r.confusion.fp = jr.at("fp").get<std::size_t>();
      r.confusion.fn = jr.at("fn").get<std::size_t>();
      r.confusion.tn = jr.at("tn").get<std::size_t>();
      r.metrics.accuracy = jr.at("accuracy").get<double>();
      r.metrics.precision = jr.at("precision").get<double>();
      r.metrics.recall = jr.at("recall").get<double>();
      r.metrics.precision_flagged = jr.at("precision_flagged").get<bool>();
      r.metrics.recall_flagged = jr.at("recall_flagged").get<bool>();
      r.profile_length = jr.at("profile_length").get<double>();
      if (jr.contains("cutoff")) r.cutoff = jr.at("cutoff").get<double>();
      report.runs.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run report: ") + e.what());
  }
}

namespace {

// All documents that feed corpus statistics for one run: the training
// split plus every unlabeled document.  Test documents never join.
Corpus stats_corpus(const Corpus& full, const Corpus& train) {
  Corpus stats = train;
  for (const auto& doc : full.documents) {
    if (doc.label == Label::unlabeled) stats.documents.push_back(doc);
  }
  return stats;
}

// tf·idf vector for scoring: terms the profile's df table has never seen
// carry no weight and are skipped rather than raising a lookup error.
TermVector scoring_vector(const Document& doc, const DfTable& df,
                          const std::set<std::string>& stopwords) {
  TermVector tf;
  for (const auto& tok : tokenize(doc.text, stopwords)) tf[tok] += 1.0;
  TermVector out;
  for (const auto& [term, count] : tf) {
    auto it = df.df.find(term);
    if (it == df.df.end()) continue;
    const double w = tfidf_weight(count, it->second, df.n);
    if (w != 0.0) out[term] = w;
  }
  return out;
}

Confusion confusion_from_predictions(const std::vector<Label>& predicted,
                                     const std::vector<Label>& actual) {
  Confusion c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool p = predicted[i] == Label::positive;
    const bool a = actual[i] == Label::positive;
    if (p && a) ++c.tp;
    else if (p && !a) ++c.fp;
    else if (!p && a) ++c.fn;
    else ++c.tn;
  }
  return c;
}

RunResult run_rocchio(const ExperimentSpec& spec, const Corpus& train, const Corpus& test,
                      const FeatureContext& ctx) {
  const DfTable& df = *ctx.df;
  std::vector<TermVector> rel;
  std::vector<TermVector> rel_tf, non_tf;
  for (const auto& doc : train.documents) {
    if (doc.label == Label::positive) {
      rel.push_back(tfidf_vector(doc, df, spec.stopwords));
      rel_tf.push_back(tf_vector(doc, spec.stopwords));
    } else if (doc.label == Label::negative) {
      non_tf.push_back(tf_vector(doc, spec.stopwords));
    }
  }
  if (rel.empty()) throw DataError("no positive training examples");

  Profile profile = init_profile(rel, df);
  profile = reweight(profile, rel_tf, non_tf, spec.rocchio);
  const Profile query = to_tfidf_scale(profile, df);

  std::vector<std::pair<double, Label>> scores;
  scores.reserve(test.documents.size());
  for (const auto& doc : test.documents) {
    scores.emplace_back(
        cosine_similarity(scoring_vector(doc, df, spec.stopwords), query.weights), doc.label);
  }

  const double cutoff = best_cutoff(pr_sweep(scores));

  std::vector<Label> predicted, actual;
  predicted.reserve(scores.size());
  for (const auto& [score, label] : scores) {
    predicted.push_back(score >= cutoff ? Label::positive : Label::negative);
    actual.push_back(label);
  }

  RunResult out;
  out.confusion = confusion_from_predictions(predicted, actual);
  out.metrics = metrics(out.confusion);
  out.profile_length = profile_length(profile);
  out.cutoff = cutoff;
  return out;
}

RunResult run_rules(const ExperimentSpec& spec, const Corpus& train, const Corpus& test,
                    const FeatureContext& ctx, std::uint64_t run_seed) {
  const std::vector<std::string> empty_vocab;
  const Schema schema =
      make_schema(spec.feature_set, ctx.vocabulary ? *ctx.vocabulary : empty_vocab,
                  spec.hierarchy);
  const bool with_subjects =
      spec.feature_set == FeatureSet::sfc || spec.feature_set == FeatureSet::all;

  auto featurize = [&](const Corpus& docs, const Schema& s, bool extended,
                       std::vector<Row>& rows, std::vector<Label>& labels) {
    for (const auto& doc : docs.documents) {
      FeatureVector fv = assemble(doc, spec.feature_set, ctx);
      if (extended) {
        auto ext = c45::extend_attributes(fv, *spec.hierarchy, spec.tree.ancestor_levels);
        rows.push_back(c45::to_row(ext, s));
      } else {
        rows.push_back(to_row(fv, s));
      }
      labels.push_back(doc.label);
    }
  };

  std::vector<Label> predicted, test_labels;
  double length = 0.0;

  if (spec.learner == LearnerKind::aq) {
    std::vector<Row> train_rows, test_rows;
    std::vector<Label> train_labels;
    featurize(train, schema, false, train_rows, train_labels);
    featurize(test, schema, false, test_rows, test_labels);

    std::vector<Row> pos, neg;
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      (train_labels[i] == Label::positive ? pos : neg).push_back(train_rows[i]);
    }
    aq::LefConfig lef = spec.lef;
    lef.seed_rng = run_seed;
    const RuleSet rules = aq::learn(schema, pos, neg, lef);
    for (const auto& row : test_rows) predicted.push_back(aq::classify(rules, row, schema));
    length = profile_length(rules);
  } else {
    const bool extended = with_subjects && spec.hierarchy != nullptr;
    const Schema tree_schema =
        extended ? c45::extend_schema(schema, spec.tree.ancestor_levels) : schema;
    std::vector<Row> train_rows, test_rows;
    std::vector<Label> train_labels;
    featurize(train, tree_schema, extended, train_rows, train_labels);
    featurize(test, tree_schema, extended, test_rows, test_labels);

    const c45::DecisionTree tree =
        c45::build_tree(tree_schema, train_rows, train_labels, spec.tree);
    const PrunedRuleSet rules =
        c45::tree_to_rules(tree, tree_schema, train_rows, train_labels, spec.tree);
    for (const auto& row : test_rows) predicted.push_back(c45::classify(rules, row, tree_schema));
    length = profile_length(rules);
  }

  RunResult out;
  out.confusion = confusion_from_predictions(predicted, test_labels);
  out.metrics = metrics(out.confusion);
  out.profile_length = length;
  return out;
}

}  // namespace

RunReport run_experiment(const ExperimentSpec& spec) {
  if (spec.corpus == nullptr) throw ConfigError("run_experiment: no corpus");
  if (spec.learner == LearnerKind::rocchio && spec.feature_set != FeatureSet::tfidf)
    throw ConfigError("the rocchio learner works on the tfidf feature set only");

  const Corpus labeled = spec.corpus->labeled();
  if (labeled.size() == 0) throw DataError("corpus has no labeled documents");

  const auto splits = expand_split_plan(labeled, spec.split);

  RunReport report;
  report.problem = spec.problem;
  report.learner = spec.learner;
  report.feature_set = spec.feature_set;
  report.n_keywords = spec.n_keywords;
  report.seed = spec.seed;
  {
    std::ostringstream os;
    if (spec.split.kind == SplitKind::seventy_thirty)
      os << "70-30x" << spec.split.runs;
    else
      os << "kfold" << spec.split.k;
    report.split = os.str();
  }

  for (std::size_t run = 0; run < splits.size(); ++run) {
    const Corpus& train = splits[run].train;
    const Corpus& test = splits[run].test;
    const Corpus stats = stats_corpus(*spec.corpus, train);

    FeatureContext ctx = make_context(train, stats, spec.n_keywords, spec.lexicon,
                                      spec.correlations, spec.gazetteer, spec.stopwords);
    try {
      if (spec.learner == LearnerKind::rocchio) {
        report.runs.push_back(run_rocchio(spec, train, test, ctx));
      } else {
        report.runs.push_back(
            run_rules(spec, train, test, ctx, derive_seed(spec.seed, 1000 + run)));
      }
    } catch (const NoiseError& e) {
      throw NoiseError("run " + std::to_string(run) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("run " + std::to_string(run) + ": " + e.what());
    }
  }
  return report;
}

namespace {

std::string fmt_metric(double v) {
  if (v == 0.0) return "0.0";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

constexpr FeatureSet kColumns[4] = {FeatureSet::tfidf, FeatureSet::pol, FeatureSet::sfc,
                                    FeatureSet::all};

struct TableRow {
  std::string problem;
  LearnerKind learner;
  const RunReport* cells[4] = {nullptr, nullptr, nullptr, nullptr};
};

std::vector<TableRow> collect_rows(const std::vector<RunReport>& reports) {
  std::vector<TableRow> rows;
  auto find_row = [&](const std::string& problem, LearnerKind learner) -> TableRow& {
    for (auto& r : rows) {
      if (r.problem == problem && r.learner == learner) return r;
    }
    rows.push_back(TableRow{problem, learner, {}});
    return rows.back();
  };
  for (const auto& rep : reports) {
    TableRow& row = find_row(rep.problem, rep.learner);
    for (int c = 0; c < 4; ++c) {
      if (kColumns[c] == rep.feature_set) row.cells[c] = &rep;
    }
  }
  return rows;
}

void pad_to(std::string& s, std::size_t width) {
  while (s.size() < width) s.push_back(' ');
}

std::string render_grid(const std::vector<std::vector<std::string>>& grid) {
  std::vector<std::size_t> widths;
  for (const auto& row : grid) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c + 1 < row.size()) pad_to(cell, widths[c] + 2);
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

std::string render_table(const std::vector<RunReport>& reports) {
  const auto rows = collect_rows(reports);
  std::string out;

  out += "Predictive accuracy\n";
  {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"Problem", "Learner", "TFIDF", "POL", "SFC", "ALL"});
    for (const auto& row : rows) {
      double best = -1.0;
      for (const auto* cell : row.cells) {
        if (cell != nullptr) best = std::max(best, cell->mean_accuracy());
      }
      std::vector<std::string> line{row.problem, learner_name(row.learner)};
      for (const auto* cell : row.cells) {
        if (cell == nullptr) {
          line.push_back("-");
          continue;
        }
        std::string s = fmt_metric(cell->mean_accuracy());
        if (cell->mean_accuracy() >= best - 1e-12) s += "*";
        line.push_back(std::move(s));
      }
      grid.push_back(std::move(line));
    }
    out += render_grid(grid);
  }

  out += "\nAverage precision/recall\n";
  {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"Problem", "Learner", "TFIDF", "POL", "SFC", "ALL"});
    for (const auto& row : rows) {
      std::vector<std::string> line{row.problem, learner_name(row.learner)};
      for (const auto* cell : row.cells) {
        if (cell == nullptr) {
          line.push_back("-");
          continue;
        }
        line.push_back(fmt_metric(cell->mean_precision()) + "/" + fmt_metric(cell->mean_recall()));
      }
      grid.push_back(std::move(line));
    }
    out += render_grid(grid);
  }
  return out;
}

std::string render_table_csv(const std::vector<RunReport>& reports) {
  std::string out =
      "problem,learner,feature_set,runs,accuracy,precision,recall,profile_length\n";
  for (const auto& rep : reports) {
    char buf[64];
    out += rep.problem + "," + learner_name(rep.learner) + "," +
           feature_set_name(rep.feature_set) + ",";
    out += std::to_string(rep.runs.size());
    std::snprintf(buf, sizeof(buf), ",%.4f,%.4f,%.4f,%.4f", rep.mean_accuracy(),
                  rep.mean_precision(), rep.mean_recall(), rep.mean_profile_length());
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace textprof
