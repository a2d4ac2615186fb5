#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.h"
#include "textprof/corpus.hpp"
#include "textprof/errors.hpp"

using namespace textprof;

namespace {

Corpus make_docs(int n_pos, int n_neg, int n_unlabeled = 0) {
  Corpus c;
  int id = 0;
  const auto add = [&](Label label, int count) {
    for (int i = 0; i < count; ++i) {
      Document d;
      d.id = "d" + std::to_string(id);
      d.text = "text number " + std::to_string(id);
      d.label = label;
      c.documents.push_back(std::move(d));
      ++id;
    }
  };
  add(Label::positive, n_pos);
  add(Label::negative, n_neg);
  add(Label::unlabeled, n_unlabeled);
  return c;
}

std::set<std::string> ids(const Corpus& c) {
  std::set<std::string> out;
  for (const auto& d : c.documents) out.insert(d.id);
  return out;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("parse_corpus counts labels and preserves order") {
  std::istringstream in(
      "{\"id\":\"a\",\"text\":\"one\",\"label\":\"pos\"}\n"
      "{\"id\":\"b\",\"text\":\"two\",\"label\":\"pos\"}\n"
      "{\"id\":\"c\",\"text\":\"three\",\"label\":\"neg\"}\n");
  const Corpus c = parse_corpus(in);
  CHECK(c.size() == 3);
  CHECK(c.n_positive() == 2);
  CHECK(c.n_negative() == 1);
  CHECK(c.n_unlabeled() == 0);
  CHECK(c.documents[0].id == "a");
  CHECK(c.documents[1].text == "two");
  CHECK(c.documents[2].label == Label::negative);
}

TEST_CASE("parse_corpus accepts an empty stream") {
  std::istringstream in("");
  CHECK(parse_corpus(in).size() == 0);
}

TEST_CASE("a record without text fails naming line 1") {
  std::istringstream in("{\"id\":\"a\",\"label\":\"pos\"}\n");
  const auto msg = testutil::error_message<ParseError>([&] { parse_corpus(in); });
  REQUIRE(msg.has_value());
  CHECK(msg->find("line 1") != std::string::npos);
  CHECK(msg->find("text") != std::string::npos);
}

TEST_CASE("duplicate ids are rejected naming both lines") {
  std::istringstream in(
      "{\"id\":\"a\",\"text\":\"one\",\"label\":\"pos\"}\n"
      "{\"id\":\"a\",\"text\":\"two\",\"label\":\"neg\"}\n");
  const auto msg = testutil::error_message<ValidationError>([&] { parse_corpus(in); });
  REQUIRE(msg.has_value());
  CHECK(msg->find("\"a\"") != std::string::npos);
  CHECK(msg->find("line 1") != std::string::npos);
  CHECK(msg->find("line 2") != std::string::npos);
}

TEST_CASE("unknown labels are rejected") {
  std::istringstream in("{\"id\":\"a\",\"text\":\"t\",\"label\":\"maybe\"}\n");
  CHECK_THROWS_AS(parse_corpus(in), ParseError);
}

TEST_CASE("serialize then parse is the identity, byte-stable") {
  Corpus c = make_docs(2, 1, 1);
  PolEntity person;
  person.kind = PolKind::person;
  person.name = "Smith";
  person.attrs["honorific"] = "Dr.";
  PolEntity place;
  place.kind = PolKind::location;
  place.name = "Boston";
  place.attrs["country"] = "US";
  c.documents[0].pol_annotations = std::vector<PolEntity>{person, place};

  const std::string bytes = serialize_corpus(c);
  std::istringstream in(bytes);
  const Corpus back = parse_corpus(in);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(back.documents[i] == c.documents[i]);
  CHECK(serialize_corpus(back) == bytes);
}

TEST_CASE("labeled() drops unlabeled documents but keeps order") {
  const Corpus c = make_docs(2, 2, 3);
  const Corpus l = c.labeled();
  CHECK(l.size() == 4);
  CHECK(l.n_unlabeled() == 0);
  CHECK(l.documents[0].id == "d0");
  CHECK(l.documents[3].id == "d3");
}

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  CHECK(tokenize("Scuba diving, scuba!") ==
        std::vector<std::string>{"scuba", "diving", "scuba"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("The of and", std::set<std::string>{"the", "of", "and"}).empty());
}

TEST_CASE("tokenize keeps digits and drops default stopwords") {
  const auto tokens = tokenize("The 7 divers saw 7 fish");
  CHECK(std::count(tokens.begin(), tokens.end(), "7") == 2);
  CHECK(std::count(tokens.begin(), tokens.end(), "the") == 0);
}

TEST_CASE("70/30 sizes follow the half-up rule") {
  const auto s10 = split_70_30(make_docs(6, 4), 1);
  CHECK(s10.train.size() == 7);
  CHECK(s10.test.size() == 3);

  // 0.7 * 38 = 26.6 rounds up to 27
  const auto s38 = split_70_30(make_docs(20, 18), 7);
  CHECK(s38.train.size() == 27);
  CHECK(s38.test.size() == 11);
}

TEST_CASE("70/30 is a deterministic partition") {
  const Corpus c = make_docs(9, 8);
  const TrainTestSplit a = split_70_30(c, 42);
  const TrainTestSplit b = split_70_30(c, 42);
  CHECK(serialize_corpus(a.train) == serialize_corpus(b.train));
  CHECK(serialize_corpus(a.test) == serialize_corpus(b.test));

  const auto train_ids = ids(a.train);
  const auto test_ids = ids(a.test);
  for (const auto& id : train_ids) CHECK(test_ids.count(id) == 0);
  CHECK(train_ids.size() + test_ids.size() == c.size());
}

TEST_CASE("70/30 requires at least two documents") {
  CHECK_THROWS_AS(split_70_30(make_docs(1, 0), 0), ValidationError);
}

TEST_CASE("stratified 70/30 rounds per class") {
  const TrainTestSplit s = split_70_30(make_docs(6, 4), 3, /*stratified=*/true);
  CHECK(s.train.n_positive() == 4);  // round(4.2)
  CHECK(s.train.n_negative() == 3);  // round(2.8)
  CHECK(s.test.n_positive() == 2);
  CHECK(s.test.n_negative() == 1);
}

TEST_CASE("kfold sizes differ by at most one") {
  const auto loo = kfold(make_docs(5, 5), 10, 0);
  REQUIRE(loo.size() == 10);
  for (const auto& fold : loo) CHECK(fold.test.size() == 1);

  const auto folds = kfold(make_docs(12, 11), 10, 9);
  REQUIRE(folds.size() == 10);
  std::multiset<std::size_t> sizes;
  for (const auto& fold : folds) sizes.insert(fold.test.size());
  CHECK(sizes == std::multiset<std::size_t>{2, 2, 2, 2, 2, 2, 2, 3, 3, 3});
}

TEST_CASE("kfold test sides partition the corpus") {
  const Corpus c = make_docs(13, 10);
  const auto folds = kfold(c, 10, 5);
  std::vector<std::string> tested;
  for (const auto& fold : folds) {
    CHECK(fold.train.size() + fold.test.size() == c.size());
    const auto train_ids = ids(fold.train);
    for (const auto& d : fold.test.documents) {
      CHECK(train_ids.count(d.id) == 0);
      tested.push_back(d.id);
    }
  }
  CHECK(tested.size() == c.size());
  CHECK(std::set<std::string>(tested.begin(), tested.end()).size() == c.size());
}

TEST_CASE("kfold validates the fold count") {
  CHECK_THROWS_AS(kfold(make_docs(3, 2), 6, 0), ValidationError);
  CHECK_THROWS_AS(kfold(make_docs(3, 2), 1, 0), ValidationError);
}

TEST_CASE("stratified kfold spreads both classes over the folds") {
  const auto folds = kfold(make_docs(10, 10), 5, 2, /*stratified=*/true);
  for (const auto& fold : folds) {
    CHECK(fold.test.n_positive() == 2);
    CHECK(fold.test.n_negative() == 2);
  }
}

TEST_CASE("expand_split_plan produces the configured piece count") {
  const Corpus c = make_docs(8, 6);

  SplitPlan plan;  // defaults: 70/30, 10 runs
  plan.seed = 11;
  const auto runs = expand_split_plan(c, plan);
  CHECK(runs.size() == 10);
  for (const auto& piece : runs) {
    CHECK(piece.train.size() == 10);
    CHECK(piece.test.size() == 4);
  }

  SplitPlan kf;
  kf.kind = SplitKind::kfold;
  kf.k = 7;
  CHECK(expand_split_plan(c, kf).size() == 7);
}

}  // TEST_SUITE
