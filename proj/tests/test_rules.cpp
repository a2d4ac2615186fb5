#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "test_util.h"
#include "textprof/attrs.hpp"
#include "textprof/errors.hpp"
#include "textprof/hierarchy.hpp"
#include "textprof/rules.hpp"

using namespace textprof;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Selector cat(const std::string& attr, std::initializer_list<const char*> values) {
  Selector s;
  s.attribute = attr;
  s.kind = AttrKind::categorical;
  for (const char* v : values) s.allowed.insert(std::string(v));
  return s;
}

Selector subj(const std::string& attr, std::initializer_list<const char*> values) {
  Selector s = cat(attr, values);
  s.kind = AttrKind::subject;
  return s;
}

Selector num(const std::string& attr, Interval i) {
  Selector s;
  s.attribute = attr;
  s.kind = AttrKind::numeric;
  s.intervals.push_back(i);
  return s;
}

Complex conj(std::initializer_list<Selector> selectors) {
  Complex c;
  for (const Selector& s : selectors) c.selectors[s.attribute] = s;
  return c;
}

const GeneralizationHierarchy& reference() {
  static const GeneralizationHierarchy h =
      GeneralizationHierarchy::load_file(testutil::data_path("hierarchy.tsv"));
  return h;
}

}  // namespace

TEST_SUITE("rules") {

TEST_CASE("interval membership honors open and closed bounds") {
  const Interval open{1.0, 2.0, false, false};
  CHECK_FALSE(open.contains(1.0));
  CHECK(open.contains(1.5));
  CHECK_FALSE(open.contains(2.0));

  const Interval closed{1.0, 2.0, true, true};
  CHECK(closed.contains(1.0));
  CHECK(closed.contains(2.0));

  const Interval unbounded{};
  CHECK(unbounded.contains(-1e300));
  CHECK(unbounded.contains(1e300));

  CHECK(Interval{2.0, 1.0, true, true}.empty());
  CHECK(Interval{1.0, 1.0, true, false}.empty());
  CHECK_FALSE(Interval{1.0, 1.0, true, true}.empty());
  CHECK(Interval{1.0, 1.0, true, true}.contains(1.0));
}

TEST_CASE("selectors match values by kind") {
  const Selector color = cat("color", {"red", "blue"});
  CHECK(selector_matches(color, AttrValue{std::string("red")}, nullptr));
  CHECK_FALSE(selector_matches(color, AttrValue{std::string("green")}, nullptr));
  // NULL only matches an explicit NULL entry
  CHECK_FALSE(selector_matches(color, AttrValue{}, nullptr));
  Selector with_null = color;
  with_null.allowed.insert(CatValue{});
  CHECK(selector_matches(with_null, AttrValue{}, nullptr));

  const Selector weight = num("kw_x", Interval{2.5, kInf, false, false});
  CHECK(selector_matches(weight, AttrValue{3.0}, nullptr));
  CHECK_FALSE(selector_matches(weight, AttrValue{2.5}, nullptr));
  CHECK_FALSE(selector_matches(weight, AttrValue{}, nullptr));
}

TEST_CASE("subject selectors match through the hierarchy") {
  const auto& h = reference();
  const Selector s = subj("subject1", {"medical_science"});
  CHECK(selector_matches(s, AttrValue{std::string("contagious")}, &h));
  CHECK(selector_matches(s, AttrValue{std::string("medical_science")}, &h));
  CHECK_FALSE(selector_matches(s, AttrValue{std::string("scuba")}, &h));
}

TEST_CASE("the universal complex covers every row") {
  Schema schema;
  schema.attrs = {{"a", AttrKind::categorical}, {"b", AttrKind::numeric}};
  const Complex universal;
  CHECK(universal.universal());
  CHECK(covers_row(universal, Row{AttrValue{std::string("x")}, AttrValue{1.0}}, schema));
  CHECK(covers_row(universal, Row{AttrValue{}, AttrValue{}}, schema));
}

TEST_CASE("covers_row treats attributes missing from the schema as NULL") {
  Schema schema;
  schema.attrs = {{"a", AttrKind::categorical}};
  const Complex c = conj({cat("ghost", {"x"})});
  CHECK_FALSE(covers_row(c, Row{AttrValue{std::string("x")}}, schema));

  Complex null_ok;
  Selector s = cat("ghost", {});
  s.allowed.insert(CatValue{});
  null_ok.selectors["ghost"] = s;
  CHECK(covers_row(null_ok, Row{AttrValue{std::string("x")}}, schema));
}

TEST_CASE("intersect narrows selectors and detects contradictions") {
  const Complex ab = conj({cat("a", {"x", "y"})});
  const Complex bc = conj({cat("a", {"y", "z"})});
  const auto both = intersect(ab, bc, nullptr);
  REQUIRE(both.has_value());
  CHECK(both->selectors.at("a").allowed == std::set<CatValue>{CatValue{"y"}});

  const auto empty = intersect(conj({cat("a", {"x"})}), conj({cat("a", {"z"})}),
                               nullptr);
  CHECK_FALSE(empty.has_value());

  // disjoint attributes just conjoin
  const auto merged = intersect(conj({cat("a", {"x"})}), conj({cat("b", {"y"})}),
                                nullptr);
  REQUIRE(merged.has_value());
  CHECK(merged->selectors.size() == 2);
}

TEST_CASE("numeric intersection intersects interval unions") {
  const Complex low = conj({num("w", Interval{-kInf, 5.0, false, false})});
  const Complex high = conj({num("w", Interval{2.5, kInf, false, false})});
  const auto mid = intersect(low, high, nullptr);
  REQUIRE(mid.has_value());
  const auto& intervals = mid->selectors.at("w").intervals;
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].lo == 2.5);
  CHECK(intervals[0].hi == 5.0);

  const auto none = intersect(conj({num("w", Interval{-kInf, 1.0, false, false})}),
                              conj({num("w", Interval{2.0, kInf, false, false})}),
                              nullptr);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("subsumption orders complexes by generality") {
  const auto& h = reference();
  const Complex general = conj({subj("subject1", {"medical_science"})});
  const Complex specific = conj({subj("subject1", {"contagious"})});
  CHECK(complex_subsumes(general, specific, &h));
  CHECK_FALSE(complex_subsumes(specific, general, &h));
  CHECK(complex_subsumes(Complex{}, general, &h));  // universal subsumes all
  CHECK_FALSE(complex_subsumes(general, Complex{}, &h));

  const Complex wide = conj({num("w", Interval{0.0, kInf, false, false})});
  const Complex narrow = conj({num("w", Interval{1.0, 2.0, true, true})});
  CHECK(complex_subsumes(wide, narrow, nullptr));
  CHECK_FALSE(complex_subsumes(narrow, wide, nullptr));
}

TEST_CASE("subject values render with spaces, category attributes verbatim") {
  const Complex profile = conj({subj("subject1", {"nature", "physical_science"}),
                                subj("subject2", {"medical_science"})});
  CHECK(render_complex(profile) ==
        "subject1 = nature or physical science & subject2 = medical science");
  CHECK(render_positive_dnf({profile}) ==
        "IF subject1 = nature or physical science & subject2 = medical science "
        "THEN article is of interest");
}

TEST_CASE("single-condition rules join with or in a DNF") {
  const Complex us = conj({cat("POLtag5_location", {"US"})});
  const Complex dr = conj({cat("POLtag1_honorific", {"Dr."})});
  CHECK(render_positive_dnf({us, dr}) ==
        "IF POLtag5_location = US or POLtag1_honorific = Dr. "
        "THEN article is of interest");
}

TEST_CASE("numeric and NULL selectors render readably") {
  CHECK(render_selector(num("kw_virus", Interval{2.5, kInf, false, false})) ==
        "kw_virus > 2.5");
  Selector with_null = cat("color", {"red"});
  with_null.allowed.insert(CatValue{});
  CHECK(render_selector(with_null).find("__null__") != std::string::npos);
  CHECK(render_complex(Complex{}) == "anything");
}

TEST_CASE("rule sets round-trip through JSON") {
  RuleSet rs;
  rs.rules.push_back(conj({subj("subject1", {"medical_science"}),
                           num("kw_virus", Interval{2.5, kInf, false, false})}));
  rs.rules.push_back(conj({cat("POLtag1_honorific", {"Dr."})}));
  rs.new_coverage = {5, 2};
  rs.total_coverage = {6, 3};

  const auto j = ruleset_to_json(rs);
  const RuleSet back = ruleset_from_json(j);
  REQUIRE(back.rules.size() == 2);
  CHECK(back.rules[0] == rs.rules[0]);
  CHECK(back.rules[1] == rs.rules[1]);
  CHECK(back.new_coverage == rs.new_coverage);
  CHECK(back.total_coverage == rs.total_coverage);
  CHECK(ruleset_to_json(back) == j);
}

TEST_CASE("pruned rule sets round-trip through JSON") {
  PrunedRuleSet rs;
  ClassRule pos;
  pos.conditions = conj({cat("a", {"x"})});
  pos.label = Label::positive;
  pos.train_accuracy = 0.9;
  pos.train_covered = 10;
  ClassRule neg;
  neg.conditions = conj({num("w", Interval{-kInf, 0.5, false, true})});
  neg.label = Label::negative;
  neg.train_accuracy = 0.75;
  neg.train_covered = 4;
  rs.rules = {pos, neg};
  rs.default_label = Label::positive;

  const auto j = pruned_ruleset_to_json(rs);
  const PrunedRuleSet back = pruned_ruleset_from_json(j);
  REQUIRE(back.rules.size() == 2);
  CHECK(back.rules[0].conditions == pos.conditions);
  CHECK(back.rules[0].label == Label::positive);
  CHECK(back.rules[0].train_accuracy == doctest::Approx(0.9));
  CHECK(back.rules[1].conditions == neg.conditions);
  CHECK(back.default_label == Label::positive);
  CHECK(pruned_ruleset_to_json(back) == j);
}

TEST_CASE("infinite interval bounds survive the JSON form") {
  const Complex c = conj({num("w", Interval{2.5, kInf, false, false})});
  const Complex back = complex_from_json(complex_to_json(c));
  CHECK(back == c);
  CHECK(std::isinf(back.selectors.at("w").intervals[0].hi));
}

TEST_CASE("malformed rule JSON is rejected") {
  CHECK_THROWS_AS(ruleset_from_json(nlohmann::json::parse("{\"kind\":\"wrong\"}")),
                  ParseError);
  CHECK_THROWS_AS(complex_from_json(nlohmann::json::parse("[1,2]")), ParseError);
}

}  // TEST_SUITE
