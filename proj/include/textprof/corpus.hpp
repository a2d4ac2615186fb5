#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace textprof {

enum class Label { positive, negative, unlabeled };

std::string label_name(Label label);
Label label_from_name(std::string_view name);  // ParseError on unknown token

enum class PolKind { person, organization, location };

std::string pol_kind_name(PolKind kind);
PolKind pol_kind_from_name(std::string_view name);  // ParseError on unknown token

// A person / organization / location mention, either produced by the
// built-in tagger or carried through from hand annotations in the input.
// `attrs` holds the qualifying sub-fields (honorific, title, country, ...)
// keyed by sub-slot name.
struct PolEntity {
  PolKind kind = PolKind::person;
  std::string name;
  std::map<std::string, std::string> attrs;

  bool operator==(const PolEntity&) const = default;
};

struct Document {
  std::string id;
  std::string text;
  Label label = Label::unlabeled;
  // Hand annotations; when absent the tagger runs over `text` instead.
  std::optional<std::vector<PolEntity>> pol_annotations;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
  std::size_t n_positive() const;
  std::size_t n_negative() const;
  std::size_t n_unlabeled() const;
  // The labeled subset, in original order.  Evaluation splits operate on
  // this; unlabeled documents only contribute corpus statistics.
  Corpus labeled() const;
};

// One document per line as a JSON object with fields "id", "text",
// "label" ("pos" | "neg" | "none") and optional "pol" (list of entity
// objects).  Blank lines are ignored.  ParseError on malformed lines,
// ValidationError on duplicate ids; both name the offending line.
Corpus parse_corpus(std::istream& in);
Corpus parse_corpus_file(const std::string& path);
// Inverse of parse_corpus: stable field order, one '\n' per document, so
// serialize(parse(x)) is byte-identical for outputs we produced.
std::string serialize_corpus(const Corpus& corpus);
void write_corpus_file(const Corpus& corpus, const std::string& path);

// Lowercased word tokens: maximal runs of alphanumeric characters (bytes
// outside ASCII are treated as word characters so UTF-8 text survives),
// with stopwords removed.  Order of remaining tokens is preserved.
std::vector<std::string> tokenize(std::string_view text,
                                  const std::set<std::string>& stopwords);
std::vector<std::string> tokenize(std::string_view text);  // default stopwords

// Small built-in English function-word list; load_stopwords replaces it
// from a one-word-per-line file.
const std::set<std::string>& default_stopwords();
std::set<std::string> load_stopwords(std::istream& in);
std::set<std::string> load_stopwords_file(const std::string& path);

enum class SplitKind { seventy_thirty, kfold };

// How an experiment carves the labeled corpus into train/test pieces.
struct SplitPlan {
  SplitKind kind = SplitKind::seventy_thirty;
  int runs = 10;  // independent resamples for seventy_thirty
  int k = 10;     // fold count for kfold
  std::uint64_t seed = 0;
  bool stratified = false;  // preserve class ratio in each piece
};

struct TrainTestSplit {
  Corpus train;
  Corpus test;
};

// Random 70/30 split: train size is 0.7 * n rounded half up.  Documents
// keep their original corpus order inside each side.  With `stratified`
// the rounding applies per class.
TrainTestSplit split_70_30(const Corpus& corpus, std::uint64_t seed,
                           bool stratified = false);

// k disjoint folds covering the corpus: sizes differ by at most one, the
// first (n mod k) folds are the larger ones.  Result i uses fold i as the
// test side.  ValidationError if k < 2 or k > n.
std::vector<TrainTestSplit> kfold(const Corpus& corpus, int k,
                                  std::uint64_t seed, bool stratified = false);

// The train/test pieces a SplitPlan expands to: `runs` resamples for
// seventy_thirty (seeds derived from plan.seed), k folds for kfold.
std::vector<TrainTestSplit> expand_split_plan(const Corpus& corpus,
                                              const SplitPlan& plan);

}  // namespace textprof
