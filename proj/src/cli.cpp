#include "textprof/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "textprof/corpus.hpp"
#include "textprof/errors.hpp"
#include "textprof/eval.hpp"
#include "textprof/features.hpp"
#include "textprof/hierarchy.hpp"
#include "textprof/rocchio.hpp"
#include "textprof/rules.hpp"
#include "textprof/synth.hpp"
#include "textprof/tree.hpp"

namespace textprof::cli {

namespace {

namespace fs = std::filesystem;

// Flag values; anything not given on the command line falls back to the
// matching config-file key, then to the built-in default.
struct Options {
  std::optional<std::string> config;
  std::optional<std::string> corpus, hierarchy, lexicon, correlations;
  std::optional<std::string> gazetteer_orgs, gazetteer_locations, honorifics;
  std::optional<std::string> stopwords;
  std::optional<std::string> features, learner, split, out, problem;
  std::optional<int> runs, k;
  std::optional<std::size_t> n_keywords;
  std::optional<std::uint64_t> seed;
  std::optional<bool> stratified;
  std::optional<std::size_t> maxstar;
  std::optional<int> min_node_size, ancestor_levels;
  std::optional<double> cf, alpha, beta, gamma;
  std::optional<double> level;
  std::optional<std::string> spec;  // gen-synthetic recipe
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON config file; flags override its keys");
  cmd->add_option("--corpus", o.corpus, "corpus file (one JSON document per line)");
  cmd->add_option("--hierarchy", o.hierarchy, "generalization hierarchy TSV");
  cmd->add_option("--lexicon", o.lexicon, "subject lexicon TSV");
  cmd->add_option("--correlations", o.correlations, "category correlation TSV");
  cmd->add_option("--gazetteer-orgs", o.gazetteer_orgs, "organization name list");
  cmd->add_option("--gazetteer-locations", o.gazetteer_locations, "location gazetteer TSV");
  cmd->add_option("--honorifics", o.honorifics, "honorific cue list");
  cmd->add_option("--stopwords", o.stopwords, "stopword list (one per line)");
  cmd->add_option("--features", o.features, "feature set: tfidf, sfc, pol or all");
  cmd->add_option("--learner", o.learner, "learner: aq, tree or rocchio");
  cmd->add_option("--split", o.split, "evaluation split: 70-30 or kfold");
  cmd->add_option("--runs", o.runs, "resample count for the 70-30 split");
  cmd->add_option("--k", o.k, "fold count for the kfold split");
  cmd->add_flag("--stratified", o.stratified, "preserve the class ratio in splits");
  cmd->add_option("--n-keywords", o.n_keywords, "keyword vocabulary size");
  cmd->add_option("--seed", o.seed, "master random seed");
  cmd->add_option("--out", o.out, "output file or directory");
  cmd->add_option("--problem", o.problem, "problem name used in reports");
  cmd->add_option("--maxstar", o.maxstar, "aq: beam width during star generation");
  cmd->add_option("--min-node-size", o.min_node_size, "tree: smallest splittable node");
  cmd->add_option("--cf", o.cf, "tree: pruning confidence");
  cmd->add_option("--ancestor-levels", o.ancestor_levels, "tree: hierarchy levels added");
  cmd->add_option("--alpha", o.alpha, "rocchio: old-profile weight");
  cmd->add_option("--beta", o.beta, "rocchio: relevant-batch weight");
  cmd->add_option("--gamma", o.gamma, "rocchio: nonrelevant-batch weight");
}

nlohmann::json load_config(const Options& o) {
  if (!o.config) return nlohmann::json::object();
  std::ifstream in(*o.config);
  if (!in) throw ConfigError("cannot open config file '" + *o.config + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + *o.config + "': " + e.what());
  }
}

template <typename T>
T pick(const std::optional<T>& flag, const nlohmann::json& cfg, const char* key, T fallback) {
  if (flag) return *flag;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
  return fallback;
}

template <typename T>
std::optional<T> pick_opt(const std::optional<T>& flag, const nlohmann::json& cfg,
                          const char* key) {
  if (flag) return flag;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
  return std::nullopt;
}

// Everything a command can need, resolved from flags + config.
struct Setup {
  Corpus corpus;
  std::optional<GeneralizationHierarchy> hierarchy;
  std::optional<Lexicon> lexicon;
  std::optional<CategoryCorrelations> correlations;
  Gazetteer gazetteer;
  std::set<std::string> stopwords = default_stopwords();

  FeatureSet features = FeatureSet::all;
  LearnerKind learner = LearnerKind::aq;
  SplitPlan split;
  std::size_t n_keywords = 50;
  std::uint64_t seed = 0;
  std::string out;
  std::string problem = "corpus";
  aq::LefConfig lef;
  c45::TreeParams tree;
  RocchioParams rocchio;
  double level = 0.90;
};

void require_file(const std::optional<std::string>& path, const char* what) {
  if (!path) throw ConfigError(std::string("missing required --") + what);
  if (!fs::exists(*path))
    throw ConfigError(std::string(what) + " file '" + *path + "' does not exist");
}

Setup resolve(const Options& o, const nlohmann::json& cfg, bool need_corpus) {
  Setup s;

  const auto corpus_path = pick_opt(o.corpus, cfg, "corpus");
  const auto hierarchy_path = pick_opt(o.hierarchy, cfg, "hierarchy");
  const auto lexicon_path = pick_opt(o.lexicon, cfg, "lexicon");
  const auto correlations_path = pick_opt(o.correlations, cfg, "correlations");
  const auto orgs_path = pick_opt(o.gazetteer_orgs, cfg, "gazetteer_orgs");
  const auto locations_path = pick_opt(o.gazetteer_locations, cfg, "gazetteer_locations");
  const auto honorifics_path = pick_opt(o.honorifics, cfg, "honorifics");
  const auto stopwords_path = pick_opt(o.stopwords, cfg, "stopwords");

  s.features = feature_set_from_name(pick<std::string>(o.features, cfg, "features", "all"));
  s.learner = learner_from_name(pick<std::string>(o.learner, cfg, "learner", "aq"));

  const std::string split = pick<std::string>(o.split, cfg, "split", "70-30");
  if (split == "70-30") {
    s.split.kind = SplitKind::seventy_thirty;
  } else if (split == "kfold") {
    s.split.kind = SplitKind::kfold;
  } else {
    throw ConfigError("unknown split '" + split + "' (expected 70-30 or kfold)");
  }
  s.split.runs = pick<int>(o.runs, cfg, "runs", 10);
  s.split.k = pick<int>(o.k, cfg, "k", 10);
  s.split.stratified = pick<bool>(o.stratified, cfg, "stratified", false);
  s.n_keywords = pick<std::size_t>(o.n_keywords, cfg, "n_keywords", 50);
  s.seed = pick<std::uint64_t>(o.seed, cfg, "seed", 0);
  s.split.seed = s.seed;
  s.out = pick<std::string>(o.out, cfg, "out", "");
  s.problem = pick<std::string>(o.problem, cfg, "problem", "corpus");
  s.lef.maxstar = pick<std::size_t>(o.maxstar, cfg, "maxstar", s.lef.maxstar);
  s.tree.min_node_size = pick<int>(o.min_node_size, cfg, "min_node_size", s.tree.min_node_size);
  s.tree.cf = pick<double>(o.cf, cfg, "cf", s.tree.cf);
  s.tree.ancestor_levels =
      pick<int>(o.ancestor_levels, cfg, "ancestor_levels", s.tree.ancestor_levels);
  s.rocchio.alpha = pick<double>(o.alpha, cfg, "alpha", s.rocchio.alpha);
  s.rocchio.beta = pick<double>(o.beta, cfg, "beta", s.rocchio.beta);
  s.rocchio.gamma = pick<double>(o.gamma, cfg, "gamma", s.rocchio.gamma);
  s.level = pick<double>(o.level, cfg, "level", 0.90);

  if (stopwords_path) {
    require_file(stopwords_path, "stopwords");
    s.stopwords = load_stopwords_file(*stopwords_path);
  }
  if (need_corpus) {
    require_file(corpus_path, "corpus");
    s.corpus = parse_corpus_file(*corpus_path);
  }
  if (hierarchy_path) {
    require_file(hierarchy_path, "hierarchy");
    s.hierarchy = GeneralizationHierarchy::load_file(*hierarchy_path);
  }
  if (lexicon_path) {
    if (!s.hierarchy) throw ConfigError("--lexicon requires --hierarchy");
    require_file(lexicon_path, "lexicon");
    s.lexicon = Lexicon::load_file(*lexicon_path, *s.hierarchy);
  }
  if (correlations_path) {
    require_file(correlations_path, "correlations");
    s.correlations = CategoryCorrelations::load_file(*correlations_path);
  }
  if (orgs_path) {
    require_file(orgs_path, "gazetteer-orgs");
    s.gazetteer.load_organizations_file(*orgs_path);
  }
  if (locations_path) {
    require_file(locations_path, "gazetteer-locations");
    s.gazetteer.load_locations_file(*locations_path);
  }
  if (honorifics_path) {
    require_file(honorifics_path, "honorifics");
    s.gazetteer.load_honorifics_file(*honorifics_path);
  }

  const bool wants_subjects = s.features == FeatureSet::sfc || s.features == FeatureSet::all;
  if (wants_subjects && (!s.hierarchy || !s.lexicon))
    throw ConfigError("feature set '" + feature_set_name(s.features) +
                      "' needs --hierarchy and --lexicon");
  return s;
}

FeatureContext context_for(const Setup& s, const Corpus& train, const Corpus& stats) {
  return make_context(train, stats, s.n_keywords, s.lexicon ? &*s.lexicon : nullptr,
                      s.correlations ? &*s.correlations : nullptr, &s.gazetteer, s.stopwords);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

std::string require_out(const Setup& s) {
  if (s.out.empty()) throw ConfigError("missing required --out");
  return s.out;
}

std::string out_dir(const Setup& s) {
  const std::string dir = require_out(s);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
  return dir;
}

// ---- featurize ---------------------------------------------------------

nlohmann::ordered_json vector_to_json(const Document& doc, const FeatureVector& fv,
                                      FeatureSet set) {
  nlohmann::ordered_json j;
  j["id"] = doc.id;
  const bool subjects = set == FeatureSet::sfc || set == FeatureSet::all;
  const bool pol = set == FeatureSet::pol || set == FeatureSet::all;
  const bool keywords = set == FeatureSet::tfidf || set == FeatureSet::all;
  if (subjects) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : fv.subjects) {
      if (v)
        arr.push_back(*v);
      else
        arr.push_back(nullptr);
    }
    j["subjects"] = std::move(arr);
  }
  if (pol) {
    auto obj = nlohmann::ordered_json::object();
    const auto& names = pol_slot_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (fv.pol[i]) obj[names[i]] = *fv.pol[i];
    }
    j["pol"] = std::move(obj);
  }
  if (keywords) {
    auto obj = nlohmann::ordered_json::object();
    for (const auto& [term, w] : fv.keywords) obj[term] = w;
    j["keywords"] = std::move(obj);
  }
  return j;
}

int cmd_featurize(const Setup& s, std::ostream&) {
  const std::string out_path = require_out(s);
  FeatureContext ctx = context_for(s, s.corpus, s.corpus);
  std::string dump;
  for (const auto& doc : s.corpus.documents) {
    const FeatureVector fv = assemble(doc, s.features, ctx);
    dump += vector_to_json(doc, fv, s.features).dump();
    dump += '\n';
  }
  write_file(out_path, dump);
  return 0;
}

// ---- learn -------------------------------------------------------------

std::string profile_summary(const Profile& p) {
  std::vector<std::pair<std::string, double>> terms(p.weights.begin(), p.weights.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  std::string out = "profile over " + std::to_string(terms.size()) + " terms\n";
  const std::size_t top = std::min<std::size_t>(terms.size(), 20);
  char buf[64];
  for (std::size_t i = 0; i < top; ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g", terms[i].second);
    out += terms[i].first + " " + buf + "\n";
  }
  return out;
}

int cmd_learn(const Setup& s, std::ostream&) {
  const std::string dir = out_dir(s);
  const Corpus labeled = s.corpus.labeled();
  if (labeled.size() == 0) throw DataError("corpus has no labeled documents");
  FeatureContext ctx = context_for(s, labeled, s.corpus);

  if (s.learner == LearnerKind::rocchio) {
    if (s.features != FeatureSet::tfidf)
      throw ConfigError("the rocchio learner works on the tfidf feature set only");
    const DfTable& df = *ctx.df;
    std::vector<TermVector> rel, rel_tf, non_tf;
    for (const auto& doc : labeled.documents) {
      if (doc.label == Label::positive) {
        rel.push_back(tfidf_vector(doc, df, s.stopwords));
        rel_tf.push_back(tf_vector(doc, s.stopwords));
      } else {
        non_tf.push_back(tf_vector(doc, s.stopwords));
      }
    }
    if (rel.empty()) throw DataError("no positive training examples");
    Profile profile = init_profile(rel, df);
    profile = reweight(profile, rel_tf, non_tf, s.rocchio);
    write_file(dir + "/profile.tsv", profile_to_tsv(profile));
    write_file(dir + "/profile.txt", profile_summary(profile));
    return 0;
  }

  const Schema base = make_schema(s.features, ctx.vocabulary ? *ctx.vocabulary
                                                             : std::vector<std::string>{},
                                  s.hierarchy ? &*s.hierarchy : nullptr);
  const bool with_subjects = s.features == FeatureSet::sfc || s.features == FeatureSet::all;

  if (s.learner == LearnerKind::aq) {
    std::vector<Row> pos, neg;
    for (const auto& doc : labeled.documents) {
      Row row = to_row(assemble(doc, s.features, ctx), base);
      (doc.label == Label::positive ? pos : neg).push_back(std::move(row));
    }
    aq::LefConfig lef = s.lef;
    lef.seed_rng = s.seed;
    const RuleSet rules = aq::learn(base, pos, neg, lef);
    write_file(dir + "/profile.json", ruleset_to_json(rules).dump(2) + "\n");
    write_file(dir + "/rules.txt", render_ruleset(rules) + "\n");
    return 0;
  }

  const bool extended = with_subjects && s.hierarchy.has_value();
  const Schema schema = extended ? c45::extend_schema(base, s.tree.ancestor_levels) : base;
  std::vector<Row> rows;
  std::vector<Label> labels;
  for (const auto& doc : labeled.documents) {
    FeatureVector fv = assemble(doc, s.features, ctx);
    if (extended) {
      rows.push_back(
          c45::to_row(c45::extend_attributes(fv, *s.hierarchy, s.tree.ancestor_levels), schema));
    } else {
      rows.push_back(to_row(fv, schema));
    }
    labels.push_back(doc.label);
  }
  const c45::DecisionTree tree = c45::build_tree(schema, rows, labels, s.tree);
  const PrunedRuleSet rules = c45::tree_to_rules(tree, schema, rows, labels, s.tree);
  write_file(dir + "/profile.json", pruned_ruleset_to_json(rules).dump(2) + "\n");
  write_file(dir + "/rules.txt", render_pruned_ruleset(rules) + "\n");
  return 0;
}

// ---- evaluate / compare -------------------------------------------------

int cmd_evaluate(const Setup& s, std::ostream& out) {
  const std::string dir = out_dir(s);
  ExperimentSpec spec;
  spec.corpus = &s.corpus;
  spec.problem = s.problem;
  spec.feature_set = s.features;
  spec.learner = s.learner;
  spec.split = s.split;
  spec.n_keywords = s.n_keywords;
  spec.seed = s.seed;
  spec.lef = s.lef;
  spec.tree = s.tree;
  spec.rocchio = s.rocchio;
  spec.hierarchy = s.hierarchy ? &*s.hierarchy : nullptr;
  spec.lexicon = s.lexicon ? &*s.lexicon : nullptr;
  spec.correlations = s.correlations ? &*s.correlations : nullptr;
  spec.gazetteer = &s.gazetteer;
  spec.stopwords = s.stopwords;

  const RunReport report = run_experiment(spec);
  write_file(dir + "/report.json", report_to_json(report).dump(2) + "\n");
  const std::string table = render_table({report});
  write_file(dir + "/table.txt", table);
  write_file(dir + "/table.csv", render_table_csv({report}));
  out << table;
  return 0;
}

RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report '" + path + "'");
  try {
    return report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report '" + path + "': " + e.what());
  }
}

int cmd_compare(const std::string& path_a, const std::string& path_b, double level,
                std::ostream& out) {
  const RunReport a = load_report(path_a);
  const RunReport b = load_report(path_b);
  const TTestResult r = t_test(a.accuracies(), b.accuracies(), level);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "t = %.4f, critical = %.4f, df = %zu, level = %.2f\n",
                r.t, r.critical, r.df, level);
  out << buf << (r.significant ? "significant" : "not_significant") << "\n";
  return 0;
}

// ---- gen-synthetic -------------------------------------------------------

int cmd_gen_synthetic(const Options& o, const Setup& s) {
  if (!o.spec) throw ConfigError("missing required --spec");
  if (!fs::exists(*o.spec)) throw ConfigError("spec file '" + *o.spec + "' does not exist");
  if (!s.hierarchy || !s.lexicon)
    throw ConfigError("gen-synthetic needs --hierarchy and --lexicon");
  std::ifstream in(*o.spec);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("spec file '" + *o.spec + "': " + e.what());
  }
  const GenSpec spec = gen_spec_from_json(j);
  const Corpus corpus = generate(spec, *s.hierarchy, *s.lexicon);
  write_corpus_file(corpus, require_out(s));
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"user-profile learning toolkit for text filtering"};
  app.name("textprof");
  app.require_subcommand(1);

  Options o;
  CLI::App* featurize = app.add_subcommand("featurize", "dump feature vectors per document");
  CLI::App* learn = app.add_subcommand("learn", "train one profile on the labeled corpus");
  CLI::App* evaluate = app.add_subcommand("evaluate", "run a split-and-score experiment");
  CLI::App* compare = app.add_subcommand("compare", "t-test two evaluation reports");
  CLI::App* gen = app.add_subcommand("gen-synthetic", "generate a synthetic corpus");
  for (CLI::App* cmd : {featurize, learn, evaluate, gen}) add_common(cmd, o);

  std::string report_a, report_b;
  compare->add_option("report_a", report_a, "first report.json")->required();
  compare->add_option("report_b", report_b, "second report.json")->required();
  compare->add_option("--level", o.level, "confidence level (0.90, 0.95 or 0.99)");

  gen->add_option("--spec", o.spec, "generator recipe JSON");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (compare->parsed()) {
      return cmd_compare(report_a, report_b, o.level.value_or(0.90), out);
    }
    const nlohmann::json cfg = load_config(o);
    if (gen->parsed()) {
      const Setup s = resolve(o, cfg, /*need_corpus=*/false);
      return cmd_gen_synthetic(o, s);
    }
    const Setup s = resolve(o, cfg, /*need_corpus=*/true);
    if (featurize->parsed()) return cmd_featurize(s, out);
    if (learn->parsed()) return cmd_learn(s, out);
    return cmd_evaluate(s, out);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace textprof::cli
