#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "textprof/corpus.hpp"
#include "textprof/hierarchy.hpp"

namespace textprof {

// Spelling of an empty slot in files, reports and rendered rules.
inline constexpr std::string_view kNullValue = "__null__";

// Fixed feature layout: 5 subject slots, then the three entity blocks.
// Each tagged entity occupies three consecutive sub-slots, so the blocks
// hold 18 people (54 slots), 15 organizations (45) and 12 locations (36).
inline constexpr int kSubjectSlots = 5;
inline constexpr int kPersonCapacity = 18;
inline constexpr int kOrgCapacity = 15;
inline constexpr int kLocationCapacity = 12;
inline constexpr int kPersonSlots = kPersonCapacity * 3;    // 54
inline constexpr int kOrgSlots = kOrgCapacity * 3;          // 45
inline constexpr int kLocationSlots = kLocationCapacity * 3;  // 36
inline constexpr int kPolSlots = kPersonSlots + kOrgSlots + kLocationSlots;  // 135

// Display names of the 135 entity slots, block order: people, then
// organizations, then locations.  Person k -> POLtagk_name / _honorific /
// _title; organization k -> POLtagk_org / _business / _type; location
// k -> POLtagk_location / _country / _region (k counts within the block,
// starting at 1).
const std::vector<std::string>& pol_slot_names();
// Index into pol_slot_names(), or -1 when the name is not a slot.
int pol_slot_index(const std::string& name);

// Subject-cue dictionary: term -> candidate categories with prior weights.
// A term with a single candidate is "unambiguous".
struct Lexicon {
  // candidates sorted by category id; priors per term sum to 1.
  std::map<std::string, std::vector<std::pair<std::string, double>>> entries;

  // TSV `term<TAB>category<TAB>prior`, '#' comments allowed.  Categories
  // must exist in the hierarchy; priors per term must sum to 1 (1e-6).
  static Lexicon load(std::istream& in, const GeneralizationHierarchy& h);
  static Lexicon load_file(const std::string& path, const GeneralizationHierarchy& h);
};

// Symmetric category-category correlation strengths; absent pairs are 0.
struct CategoryCorrelations {
  std::map<std::pair<std::string, std::string>, double> table;  // key sorted

  double get(const std::string& a, const std::string& b) const;
  void set(const std::string& a, const std::string& b, double value);

  // TSV `cat_a<TAB>cat_b<TAB>value`, '#' comments allowed.
  static CategoryCorrelations load(std::istream& in);
  static CategoryCorrelations load_file(const std::string& path);
};

// Name lists backing the heuristic entity tagger.
struct Gazetteer {
  std::set<std::string> honorifics;               // "Dr.", "Sen.", ...
  std::set<std::string> organizations;            // known org names
  std::map<std::string, std::string> locations;   // name -> country ("" unknown)
  // A capitalized run ending in one of these is taken as an organization
  // even when not in the list above.
  std::set<std::string> corporate_suffixes = default_corporate_suffixes();

  static std::set<std::string> default_corporate_suffixes();
  void load_honorifics_file(const std::string& path);
  void load_organizations_file(const std::string& path);
  void load_locations_file(const std::string& path);  // `name<TAB>country`
};

// Per-document projection onto subject categories; L1-normalized unless
// there was no evidence at all (then all-zero / empty map).
struct SubjectVector {
  std::map<std::string, double> salience;
};

struct DfTable {
  std::map<std::string, std::size_t> df;  // term -> documents containing it
  std::size_t n = 0;                      // collection size

  std::size_t count(const std::string& term) const {
    const auto it = df.find(term);
    return it == df.end() ? 0 : it->second;
  }
};

enum class FeatureSet { tfidf, sfc, pol, all };

std::string feature_set_name(FeatureSet set);
FeatureSet feature_set_from_name(std::string_view name);  // ParseError

// The hybrid representation: subject slots x1..x5 (most salient first,
// NULL-padded), 135 entity slots, and tf·idf weights over the selected
// keyword vocabulary.  Blocks not requested by the feature set stay
// NULL/empty.
struct FeatureVector {
  std::array<std::optional<std::string>, kSubjectSlots> subjects;
  std::array<std::optional<std::string>, kPolSlots> pol;
  std::map<std::string, double> keywords;

  bool operator==(const FeatureVector&) const = default;
};

// Everything assemble() may need; pieces irrelevant to the requested
// feature set can stay unset.
struct FeatureContext {
  std::optional<DfTable> df;
  std::optional<std::vector<std::string>> vocabulary;
  const Lexicon* lexicon = nullptr;
  const CategoryCorrelations* correlations = nullptr;  // optional: null = all 0
  const Gazetteer* gazetteer = nullptr;
  std::set<std::string> stopwords = default_stopwords();
};

// Document frequencies over the corpus (distinct documents per term).
DfTable df_table(const Corpus& corpus, const std::set<std::string>& stopwords);
DfTable df_table(const Corpus& corpus);

// tf · (log2(n) − log2(df) + 1).  tf = 0 gives 0 regardless of df;
// otherwise df must be ≥ 1 (std::domain_error) and ≤ n.
double tfidf_weight(double tf, std::size_t df, std::size_t n);

// Top n_keywords terms by maximum tf·idf over the training documents,
// descending, ties broken lexicographically.  Terms missing from the df
// table are skipped.  Fewer candidates than requested → shorter list.
std::vector<std::string> select_keywords(const Corpus& train, const DfTable& df,
                                         std::size_t n_keywords,
                                         const std::set<std::string>& stopwords);

// Two-pass subject assignment: unambiguous lexicon tokens vote first; each
// ambiguous token then goes to the candidate category maximizing
// prior(c) · (1 + Σ_u tally(u) · corr(c, u)) against the pass-1 tallies
// (lexicographic tie-break).  The combined tallies are L1-normalized.
SubjectVector subject_vector(const std::vector<std::string>& tokens,
                             const Lexicon& lexicon,
                             const CategoryCorrelations& correlations);
SubjectVector subject_vector(const Document& doc, const Lexicon& lexicon,
                             const CategoryCorrelations& correlations,
                             const std::set<std::string>& stopwords);

// The k most salient categories, descending, lexicographic tie-break,
// NULL-padded to the slot count; zero-salience categories never appear.
std::array<std::optional<std::string>, kSubjectSlots> top_subjects(
    const SubjectVector& sv);

// Entity extraction: hand annotations pass through verbatim; otherwise a
// baseline heuristic over capitalized token runs — a run preceded by an
// honorific cue is a person (attrs{honorific}), a run in the organization
// gazetteer or ending in a corporate suffix is an organization, a run in
// the location gazetteer is a location (attrs{country}); anything else is
// dropped.
std::vector<PolEntity> pol_tag(const Document& doc, const Gazetteer& gazetteer);

// Entities fill their kind's block in document order, three sub-slots
// each (person: name, honorific, title; organization: name, business,
// type; location: name, country, region).  Overflow beyond the block
// capacity is dropped; unused slots stay NULL.
std::array<std::optional<std::string>, kPolSlots> pol_slots(
    const std::vector<PolEntity>& entities);

// Build the blocks requested by `set` (all = union).  ConfigError when a
// required context piece is missing: tfidf needs df + vocabulary, sfc
// needs the lexicon, pol needs the gazetteer.
FeatureVector assemble(const Document& doc, FeatureSet set,
                       const FeatureContext& context);

// Convenience: df table over `stats` (training documents plus any
// unlabeled ones), vocabulary from `train` only.
FeatureContext make_context(const Corpus& train, const Corpus& stats,
                            std::size_t n_keywords, const Lexicon* lexicon,
                            const CategoryCorrelations* correlations,
                            const Gazetteer* gazetteer,
                            const std::set<std::string>& stopwords);

}  // namespace textprof
