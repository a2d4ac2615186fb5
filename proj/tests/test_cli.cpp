#include "doctest.h"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.h"
#include "textprof/cli.hpp"
#include "textprof/corpus.hpp"
#include "textprof/eval.hpp"
#include "textprof/rules.hpp"
#include "textprof/synth.hpp"

using namespace textprof;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string hierarchy_path() { return testutil::data_path("hierarchy.tsv"); }
std::string lexicon_path() { return testutil::data_path("lexicon.tsv"); }

// recipe for a linearly learnable subject corpus
std::string write_gen_spec(const testutil::TempDir& dir) {
  GenSpec spec;
  spec.n_docs = 20;
  spec.positive_fraction = 0.5;
  Selector s;
  s.attribute = "subject1";
  s.kind = AttrKind::subject;
  s.allowed = {CatValue{"medical_science"}};
  spec.target_concept.selectors[s.attribute] = s;
  spec.vocab_size = 25;
  spec.tokens_per_doc = 80;
  spec.seed = 7;
  const std::string path = dir.file("genspec.json");
  testutil::write_file(path, gen_spec_to_json(spec).dump(2) + "\n");
  return path;
}

// small hand-labeled corpus: positives use medical words, negatives sports
std::string write_word_corpus(const testutil::TempDir& dir, int n, const char* name) {
  Corpus c;
  for (int i = 0; i < n; ++i) {
    Document d;
    d.id = "d" + std::to_string(i);
    const bool pos = i % 2 == 0;
    d.text = pos ? "virus outbreak quarantine infection ward"
                 : "football stadium match referee league";
    d.text += " extra" + std::to_string(i);
    d.label = pos ? Label::positive : Label::negative;
    c.documents.push_back(std::move(d));
  }
  const std::string path = dir.file(name);
  write_corpus_file(c, path);
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("--help exits zero and lists the subcommands") {
  const CliResult r = run_cli({"--help"});
  CHECK(r.code == 0);
  for (const char* cmd : {"featurize", "learn", "evaluate", "compare", "gen-synthetic"})
    CHECK(r.out.find(cmd) != std::string::npos);
}

TEST_CASE("bad invocations exit with code 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"learn", "--no-such-flag"}).code == 2);
}

TEST_CASE("gen-synthetic writes a deterministic corpus") {
  testutil::TempDir dir;
  const std::string spec = write_gen_spec(dir);

  const CliResult first = run_cli({"gen-synthetic", "--spec", spec,
                                   "--hierarchy", hierarchy_path(),
                                   "--lexicon", lexicon_path(),
                                   "--out", dir.file("a.jsonl")});
  REQUIRE(first.code == 0);
  const Corpus c = parse_corpus_file(dir.file("a.jsonl"));
  CHECK(c.size() == 20);
  CHECK(c.n_positive() == 10);

  const CliResult second = run_cli({"gen-synthetic", "--spec", spec,
                                    "--hierarchy", hierarchy_path(),
                                    "--lexicon", lexicon_path(),
                                    "--out", dir.file("b.jsonl")});
  REQUIRE(second.code == 0);
  CHECK(testutil::read_file(dir.file("a.jsonl")) ==
        testutil::read_file(dir.file("b.jsonl")));
}

TEST_CASE("featurize emits only the requested blocks") {
  testutil::TempDir dir;
  const std::string corpus = write_word_corpus(dir, 6, "corpus.jsonl");

  const CliResult r = run_cli({"featurize", "--corpus", corpus,
                               "--hierarchy", hierarchy_path(),
                               "--lexicon", lexicon_path(),
                               "--features", "sfc",
                               "--out", dir.file("features.jsonl")});
  REQUIRE(r.code == 0);

  std::istringstream lines(testutil::read_file(dir.file("features.jsonl")));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("id"));
    CHECK(j.contains("subjects"));
    CHECK_FALSE(j.contains("pol"));
    CHECK_FALSE(j.contains("keywords"));
    ++count;
  }
  CHECK(count == 6);
}

TEST_CASE("a missing corpus file is reported with its path") {
  testutil::TempDir dir;
  const std::string bogus = dir.file("nope.jsonl");
  const CliResult r = run_cli({"featurize", "--corpus", bogus,
                               "--features", "tfidf",
                               "--out", dir.file("x.jsonl")});
  CHECK(r.code == 2);
  CHECK(r.err.find(bogus) != std::string::npos);
}

TEST_CASE("learn with the covering learner writes rules and a machine profile") {
  testutil::TempDir dir;
  const std::string spec = write_gen_spec(dir);
  REQUIRE(run_cli({"gen-synthetic", "--spec", spec, "--hierarchy", hierarchy_path(),
                   "--lexicon", lexicon_path(), "--out", dir.file("c.jsonl")})
              .code == 0);

  const CliResult r = run_cli({"learn", "--corpus", dir.file("c.jsonl"),
                               "--hierarchy", hierarchy_path(),
                               "--lexicon", lexicon_path(),
                               "--features", "sfc", "--learner", "aq",
                               "--out", dir.file("model")});
  REQUIRE(r.code == 0);

  const std::string rules = testutil::read_file(dir.file("model/rules.txt"));
  CHECK(rules.find("THEN article is of interest") != std::string::npos);

  const auto j = nlohmann::json::parse(testutil::read_file(dir.file("model/profile.json")));
  const RuleSet rs = ruleset_from_json(j);
  CHECK_FALSE(rs.rules.empty());
}

TEST_CASE("learn with the word-based learner writes a TSV profile") {
  testutil::TempDir dir;
  const std::string corpus = write_word_corpus(dir, 8, "corpus.jsonl");

  const CliResult r = run_cli({"learn", "--corpus", corpus,
                               "--features", "tfidf", "--learner", "rocchio",
                               "--out", dir.file("model")});
  REQUIRE(r.code == 0);

  const std::string tsv = testutil::read_file(dir.file("model/profile.tsv"));
  CHECK(tsv.find("alpha=8") != std::string::npos);
  CHECK(tsv.find("beta=16") != std::string::npos);
  CHECK(tsv.find("gamma=4") != std::string::npos);
  CHECK(fs::exists(dir.file("model/profile.txt")));
}

TEST_CASE("learning without positive examples exits with code 3") {
  testutil::TempDir dir;
  Corpus c;
  for (int i = 0; i < 4; ++i) {
    Document d;
    d.id = "n" + std::to_string(i);
    d.text = "football stadium token" + std::to_string(i);
    d.label = Label::negative;
    c.documents.push_back(std::move(d));
  }
  const std::string corpus = dir.file("neg.jsonl");
  write_corpus_file(c, corpus);

  const CliResult r = run_cli({"learn", "--corpus", corpus, "--features", "tfidf",
                               "--learner", "aq", "--out", dir.file("model")});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("evaluate writes a repeatable report and renders the table") {
  testutil::TempDir dir;
  const std::string corpus = write_word_corpus(dir, 20, "corpus.jsonl");

  const std::vector<std::string> base = {
      "evaluate", "--corpus", corpus, "--features", "tfidf", "--learner", "tree",
      "--split", "kfold", "--k", "10", "--seed", "4"};

  auto with_out = [&](const std::string& out) {
    std::vector<std::string> args = base;
    args.push_back("--out");
    args.push_back(out);
    return args;
  };

  const CliResult r = run_cli(with_out(dir.file("run1")));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Predictive accuracy") != std::string::npos);

  const auto j = nlohmann::json::parse(testutil::read_file(dir.file("run1/report.json")));
  const RunReport report = report_from_json(j);
  CHECK(report.runs.size() == 10);
  CHECK(report.split == "kfold10");
  CHECK(fs::exists(dir.file("run1/table.txt")));
  CHECK(fs::exists(dir.file("run1/table.csv")));

  REQUIRE(run_cli(with_out(dir.file("run2"))).code == 0);
  CHECK(testutil::read_file(dir.file("run1/report.json")) ==
        testutil::read_file(dir.file("run2/report.json")));
}

TEST_CASE("compare accepts matching reports and rejects mismatched ones") {
  testutil::TempDir dir;
  const std::string corpus = write_word_corpus(dir, 20, "corpus.jsonl");

  REQUIRE(run_cli({"evaluate", "--corpus", corpus, "--features", "tfidf",
                   "--learner", "tree", "--split", "kfold", "--k", "10",
                   "--seed", "4", "--out", dir.file("ten")})
              .code == 0);
  REQUIRE(run_cli({"evaluate", "--corpus", corpus, "--features", "tfidf",
                   "--learner", "tree", "--split", "kfold", "--k", "5",
                   "--seed", "4", "--out", dir.file("five")})
              .code == 0);

  const CliResult same = run_cli({"compare", dir.file("ten/report.json"),
                                  dir.file("ten/report.json")});
  CHECK(same.code == 0);
  CHECK(same.out.find("not_significant") != std::string::npos);

  const CliResult mismatched = run_cli({"compare", dir.file("ten/report.json"),
                                        dir.file("five/report.json")});
  CHECK(mismatched.code == 2);
  CHECK_FALSE(mismatched.err.empty());
}

TEST_CASE("config files supply defaults and flags override them") {
  testutil::TempDir dir;
  const std::string corpus = write_word_corpus(dir, 6, "corpus.jsonl");

  nlohmann::json cfg;
  cfg["corpus"] = corpus;
  cfg["hierarchy"] = hierarchy_path();
  cfg["lexicon"] = lexicon_path();
  cfg["features"] = "sfc";
  const std::string cfg_path = dir.file("config.json");
  testutil::write_file(cfg_path, cfg.dump(2) + "\n");

  // config alone: subject features
  REQUIRE(run_cli({"featurize", "--config", cfg_path, "--out", dir.file("a.jsonl")})
              .code == 0);
  std::istringstream a(testutil::read_file(dir.file("a.jsonl")));
  std::string line;
  REQUIRE(std::getline(a, line));
  CHECK(nlohmann::json::parse(line).contains("subjects"));

  // the flag beats the config key
  REQUIRE(run_cli({"featurize", "--config", cfg_path, "--features", "tfidf",
                   "--out", dir.file("b.jsonl")})
              .code == 0);
  std::istringstream b(testutil::read_file(dir.file("b.jsonl")));
  REQUIRE(std::getline(b, line));
  const auto j = nlohmann::json::parse(line);
  CHECK(j.contains("keywords"));
  CHECK_FALSE(j.contains("subjects"));
}

}  // TEST_SUITE
