#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.h"
#include "textprof/corpus.hpp"
#include "textprof/errors.hpp"
#include "textprof/features.hpp"
#include "textprof/rng.hpp"
#include "textprof/rocchio.hpp"

using namespace textprof;

namespace {

Document doc(const std::string& text) {
  Document d;
  d.id = "d";
  d.text = text;
  return d;
}

DfTable table(std::initializer_list<std::pair<const char*, std::size_t>> entries) {
  DfTable df;
  for (const auto& [term, count] : entries) df.df[term] = count;
  return df;
}

}  // namespace

TEST_SUITE("rocchio") {

TEST_CASE("tf and tfidf vectors count and weight tokens") {
  const std::set<std::string> stop = {"the"};
  const TermVector tf = tf_vector(doc("the virus virus outbreak"), stop);
  CHECK(tf.size() == 2);
  CHECK(tf.at("virus") == 2.0);
  CHECK(tf.at("outbreak") == 1.0);

  // n = 4, df(virus) = 1 -> idf 3; df(outbreak) = 4 -> idf 1
  DfTable df = table({{"virus", 1}, {"outbreak", 4}});
  df.n = 4;
  const TermVector w = tfidf_vector(doc("the virus virus outbreak"), df, stop);
  CHECK(w.at("virus") == doctest::Approx(6.0));
  CHECK(w.at("outbreak") == doctest::Approx(1.0));
}

TEST_CASE("init_profile divides the mean tfidf vector by idf") {
  DfTable df = table({{"virus", 1}, {"scuba", 2}});
  df.n = 4;  // idf(virus) = 3, idf(scuba) = 2

  // two relevant vectors in tfidf scale: virus 6 and 0 -> mean 3 -> tf 1
  const std::vector<TermVector> relevant = {{{"virus", 6.0}},
                                            {{"virus", 0.0}}};
  const Profile p = init_profile(relevant, df);
  CHECK(p.scale == ProfileScale::tf);
  CHECK(p.r == 2);
  CHECK(p.weights.at("virus") == doctest::Approx(1.0));

  // a single document recovers its own tf values
  const std::vector<TermVector> one = {{{"virus", 6.0}, {"scuba", 4.0}}};
  const Profile q = init_profile(one, df);
  CHECK(q.weights.at("virus") == doctest::Approx(2.0));
  CHECK(q.weights.at("scuba") == doctest::Approx(2.0));
}

TEST_CASE("init_profile validates its inputs") {
  DfTable df = table({{"virus", 1}});
  df.n = 2;
  CHECK(testutil::error_message<ValidationError>(
            [&] { init_profile({}, df); })
            .has_value());
  CHECK(testutil::error_message<LookupError>(
            [&] { init_profile({{{"unknown", 1.0}}}, df); })
            .has_value());
}

TEST_CASE("init_profile then to_tfidf_scale round-trips the mean vector") {
  Rng rng(41);
  DfTable df;
  df.n = 64;
  const std::vector<std::string> terms = {"a", "b", "c", "d", "e"};
  for (const auto& t : terms) df.df[t] = 1 + rng.below(64);

  std::vector<TermVector> relevant(4);
  TermVector mean;
  for (auto& v : relevant) {
    for (const auto& t : terms) {
      const double w = static_cast<double>(rng.below(9)) + 1.0;
      v[t] = w;
      mean[t] += w / 4.0;
    }
  }
  const Profile back = to_tfidf_scale(init_profile(relevant, df), df);
  CHECK(back.scale == ProfileScale::tfidf);
  for (const auto& t : terms) {
    CHECK(back.weights.at(t) ==
          doctest::Approx(mean.at(t)).epsilon(1e-12));
  }
}

TEST_CASE("reweight with alpha one and zero feedback weights is the identity") {
  Profile p;
  p.weights = {{"virus", 2.5}, {"scuba", -1.0}};
  p.r = 3;
  p.s = 2;
  RocchioParams params;
  params.alpha = 1.0;
  params.beta = 0.0;
  params.gamma = 0.0;
  const Profile q = reweight(p, {{{"virus", 9.0}}}, {{{"scuba", 9.0}}}, params);
  CHECK(q.weights == p.weights);
}

TEST_CASE("reweight combines old weight and feedback batches") {
  // 8·0.5 + (16/2)·(3 + 1) / ... per-term: relevant sum 4 over r=2,
  // nonrelevant sum 2 over s=1 -> 4 + 32 - 8 = 28
  Profile p;
  p.weights = {{"virus", 0.5}};
  const std::vector<TermVector> rel = {{{"virus", 3.0}}, {{"virus", 1.0}}};
  const std::vector<TermVector> non = {{{"virus", 2.0}}};
  const Profile q = reweight(p, rel, non);
  CHECK(q.params.alpha == 8.0);
  CHECK(q.params.beta == 16.0);
  CHECK(q.params.gamma == 4.0);
  CHECK(q.weights.at("virus") == doctest::Approx(28.0));
  CHECK(q.r == 2);
  CHECK(q.s == 1);
}

TEST_CASE("reweight drops empty batches, keeps negatives, prunes zeros") {
  Profile p;
  p.weights = {{"virus", 1.0}};

  // no nonrelevant batch: the gamma term disappears entirely
  const Profile no_neg = reweight(p, {{{"virus", 1.0}}}, {});
  CHECK(no_neg.weights.at("virus") == doctest::Approx(8.0 + 16.0));

  // no relevant batch: the beta term disappears
  const Profile no_pos = reweight(p, {}, {{{"virus", 1.0}}});
  CHECK(no_pos.weights.at("virus") == doctest::Approx(8.0 - 4.0));

  // negative results are retained
  Profile zero;
  zero.weights = {{"virus", 0.0}};
  const Profile neg = reweight(zero, {}, {{{"virus", 2.0}}});
  CHECK(neg.weights.at("virus") == doctest::Approx(-8.0));

  // exact zeros vanish from the sparse map
  Profile half;
  half.weights = {{"virus", 1.0}};
  RocchioParams params;
  params.alpha = 4.0;
  params.beta = 0.0;
  params.gamma = 4.0;
  const Profile pruned = reweight(half, {}, {{{"virus", 1.0}}}, params);
  CHECK(pruned.weights.count("virus") == 0);
}

TEST_CASE("cosine similarity handles the standard cases") {
  const TermVector a = {{"x", 1.0}, {"y", 2.0}};
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));
  CHECK(cosine_similarity(a, {{"z", 3.0}}) == doctest::Approx(0.0));
  CHECK(cosine_similarity({{"x", 1.0}, {"y", 1.0}},
                          {{"x", 1.0}, {"z", 1.0}}) == doctest::Approx(0.5));
  CHECK(cosine_similarity({}, a) == 0.0);
  CHECK(cosine_similarity({}, {}) == 0.0);

  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    TermVector u, v;
    for (int t = 0; t < 4; ++t) {
      u["t" + std::to_string(t)] = static_cast<double>(rng.below(19)) - 9.0;
      v["t" + std::to_string(t)] = static_cast<double>(rng.below(19)) - 9.0;
    }
    const double c = cosine_similarity(u, v);
    CHECK(std::abs(c) <= 1.0 + 1e-12);
    // scale invariance
    TermVector u3 = u;
    for (auto& [k, w] : u3) w *= 3.0;
    CHECK(cosine_similarity(u3, v) == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("the cutoff grid covers [0, 1] in 101 steps") {
  const std::vector<double> grid = default_cutoff_grid();
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(1.0));
  CHECK(grid[50] == doctest::Approx(0.5));
}

TEST_CASE("pr_sweep computes precision and recall per cutoff") {
  const std::vector<std::pair<double, Label>> scores = {
      {0.9, Label::positive}, {0.7, Label::positive},
      {0.4, Label::negative}, {0.2, Label::negative}};

  const auto curve = pr_sweep(scores, {0.0, 0.5, 0.95});
  REQUIRE(curve.size() == 3);

  // cutoff 0: everything predicted relevant
  CHECK(curve[0].recall == doctest::Approx(1.0));
  CHECK(curve[0].precision == doctest::Approx(0.5));
  CHECK_FALSE(curve[0].precision_flagged);

  // cutoff 0.5 separates the classes perfectly
  CHECK(curve[1].precision == doctest::Approx(1.0));
  CHECK(curve[1].recall == doctest::Approx(1.0));

  // cutoff above every score: nothing predicted
  CHECK(curve[2].precision == 0.0);
  CHECK(curve[2].precision_flagged);
  CHECK(curve[2].recall == doctest::Approx(0.0));
}

TEST_CASE("pr_sweep flags batches without relevant documents") {
  const std::vector<std::pair<double, Label>> scores = {{0.9, Label::negative}};
  const auto curve = pr_sweep(scores, {0.5});
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].recall == 0.0);
  CHECK(curve[0].recall_flagged);
}

TEST_CASE("recall never increases along the grid") {
  Rng rng(23);
  std::vector<std::pair<double, Label>> scores;
  for (int i = 0; i < 40; ++i) {
    scores.push_back({static_cast<double>(rng.below(101)) / 100.0,
                      rng.below(2) == 0 ? Label::positive : Label::negative});
  }
  const auto curve = pr_sweep(scores);
  for (std::size_t i = 1; i < curve.size(); ++i)
    CHECK(curve[i].recall <= curve[i - 1].recall + 1e-12);
}

TEST_CASE("best_cutoff maximizes precision plus recall with smallest-tie rule") {
  std::vector<PrPoint> curve(3);
  curve[0] = {0.0, 0.5, 1.0, false, false};
  curve[1] = {0.5, 1.0, 1.0, false, false};
  curve[2] = {0.9, 1.0, 0.5, false, false};
  CHECK(best_cutoff(curve) == doctest::Approx(0.5));

  // exact tie: the smaller cutoff wins
  std::vector<PrPoint> tie(2);
  tie[0] = {0.2, 0.8, 0.7, false, false};
  tie[1] = {0.6, 0.7, 0.8, false, false};
  CHECK(best_cutoff(tie) == doctest::Approx(0.2));

  CHECK(testutil::error_message<ValidationError>(
            [] { best_cutoff({}); })
            .has_value());
}

TEST_CASE("best_cutoff agrees with a brute-force scan of the curve") {
  const std::vector<std::pair<double, Label>> scores = {
      {0.95, Label::positive}, {0.8, Label::positive}, {0.55, Label::negative},
      {0.5, Label::positive},  {0.3, Label::negative}, {0.1, Label::negative}};
  const auto curve = pr_sweep(scores);
  double best_sum = -1.0, best = 0.0;
  for (const PrPoint& pt : curve) {
    const double sum = pt.precision + pt.recall;
    if (sum > best_sum + 1e-12) {
      best_sum = sum;
      best = pt.cutoff;
    }
  }
  CHECK(best_cutoff(curve) == doctest::Approx(best));
}

TEST_CASE("profiles survive a TSV round-trip") {
  Profile p;
  p.weights = {{"virus", 2.25}, {"outbreak", -0.5}, {"quarantine", 1e-9}};
  p.scale = ProfileScale::tf;
  p.r = 7;
  p.s = 3;
  p.params.alpha = 8.0;
  p.params.beta = 16.0;
  p.params.gamma = 4.0;

  const std::string tsv = profile_to_tsv(p);
  CHECK(tsv.find("scale=tf") != std::string::npos);
  CHECK(tsv.find("alpha=8") != std::string::npos);
  CHECK(tsv.find("beta=16") != std::string::npos);
  CHECK(tsv.find("gamma=4") != std::string::npos);

  // terms are sorted
  CHECK(tsv.find("outbreak") < tsv.find("quarantine"));
  CHECK(tsv.find("quarantine") < tsv.find("virus"));

  std::istringstream in(tsv);
  const Profile q = profile_from_tsv(in);
  CHECK(q.scale == p.scale);
  CHECK(q.r == p.r);
  CHECK(q.s == p.s);
  CHECK(q.params.alpha == p.params.alpha);
  CHECK(q.params.beta == p.params.beta);
  CHECK(q.params.gamma == p.params.gamma);
  REQUIRE(q.weights.size() == p.weights.size());
  for (const auto& [term, w] : p.weights) CHECK(q.weights.at(term) == w);
}

}  // TEST_SUITE
