#include "textprof/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "textprof/errors.hpp"

namespace textprof {

namespace {

// Shared TSV reader: skips blanks and '#' comments, enforces column count.
std::vector<std::vector<std::string>> read_tsv(std::istream& in, std::size_t min_cols,
                                               std::size_t max_cols,
                                               const char* what) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() < min_cols || cols.size() > max_cols) {
      throw ParseError(std::string(what) + ": line " + std::to_string(line_no) +
                       ": expected " + std::to_string(min_cols) +
                       (max_cols != min_cols ? "-" + std::to_string(max_cols) : "") +
                       " tab-separated fields");
    }
    rows.push_back(std::move(cols));
  }
  return rows;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": not a number: \"" + s + "\"");
  }
}

}  // namespace

const std::vector<std::string>& pol_slot_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    v.reserve(kPolSlots);
    auto block = [&v](int capacity, const char* a, const char* b, const char* c) {
      for (int k = 1; k <= capacity; ++k) {
        const std::string base = "POLtag" + std::to_string(k) + "_";
        v.push_back(base + a);
        v.push_back(base + b);
        v.push_back(base + c);
      }
    };
    block(kPersonCapacity, "name", "honorific", "title");
    block(kOrgCapacity, "org", "business", "type");
    block(kLocationCapacity, "location", "country", "region");
    return v;
  }();
  return names;
}

int pol_slot_index(const std::string& name) {
  static const std::map<std::string, int> index = [] {
    std::map<std::string, int> m;
    const auto& names = pol_slot_names();
    for (int i = 0; i < static_cast<int>(names.size()); ++i) m[names[i]] = i;
    return m;
  }();
  const auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

Lexicon Lexicon::load(std::istream& in, const GeneralizationHierarchy& h) {
  Lexicon lex;
  for (const auto& cols : read_tsv(in, 3, 3, "lexicon")) {
    const std::string& term = cols[0];
    const std::string& category = cols[1];
    if (!h.contains(category))
      throw ValidationError("lexicon: category \"" + category +
                            "\" (term \"" + term + "\") is not in the hierarchy");
    const double prior = parse_real(cols[2], "lexicon");
    if (prior < 0.0 || prior > 1.0)
      throw ValidationError("lexicon: prior for \"" + term + "\" out of [0,1]");
    lex.entries[term].emplace_back(category, prior);
  }
  for (auto& [term, candidates] : lex.entries) {
    std::sort(candidates.begin(), candidates.end());
    double sum = 0.0;
    for (const auto& [category, prior] : candidates) sum += prior;
    if (std::abs(sum - 1.0) > 1e-6)
      throw ValidationError("lexicon: priors for \"" + term + "\" sum to " +
                            std::to_string(sum) + ", expected 1");
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].first == candidates[i - 1].first)
        throw ValidationError("lexicon: duplicate category \"" +
                              candidates[i].first + "\" for term \"" + term + "\"");
    }
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path, const GeneralizationHierarchy& h) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon file: " + path);
  return load(in, h);
}

double CategoryCorrelations::get(const std::string& a, const std::string& b) const {
  const auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  const auto it = table.find(key);
  return it == table.end() ? 0.0 : it->second;
}

void CategoryCorrelations::set(const std::string& a, const std::string& b,
                               double value) {
  if (value < 0.0) throw ValidationError("correlation must be >= 0");
  table[a <= b ? std::make_pair(a, b) : std::make_pair(b, a)] = value;
}

CategoryCorrelations CategoryCorrelations::load(std::istream& in) {
  CategoryCorrelations c;
  for (const auto& cols : read_tsv(in, 3, 3, "correlations")) {
    c.set(cols[0], cols[1], parse_real(cols[2], "correlations"));
  }
  return c;
}

CategoryCorrelations CategoryCorrelations::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open correlations file: " + path);
  return load(in);
}

std::set<std::string> Gazetteer::default_corporate_suffixes() {
  return {"Corp", "Inc", "Co", "Ltd", "Company", "Group", "Association",
          "Bank", "University", "Institute", "Agency", "Committee",
          "Commission", "Department", "Administration", "Organization"};
}

namespace {

std::set<std::string> read_name_list(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file: " + path);
  std::set<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    names.insert(line);
  }
  return names;
}

}  // namespace

void Gazetteer::load_honorifics_file(const std::string& path) {
  honorifics = read_name_list(path, "honorifics");
}

void Gazetteer::load_organizations_file(const std::string& path) {
  organizations = read_name_list(path, "organization gazetteer");
}

void Gazetteer::load_locations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open location gazetteer file: " + path);
  locations.clear();
  for (const auto& cols : read_tsv(in, 1, 2, "location gazetteer")) {
    locations[cols[0]] = cols.size() > 1 ? cols[1] : "";
  }
}

std::string feature_set_name(FeatureSet set) {
  switch (set) {
    case FeatureSet::tfidf:
      return "tfidf";
    case FeatureSet::sfc:
      return "sfc";
    case FeatureSet::pol:
      return "pol";
    case FeatureSet::all:
      return "all";
  }
  return "all";
}

FeatureSet feature_set_from_name(std::string_view name) {
  if (name == "tfidf") return FeatureSet::tfidf;
  if (name == "sfc") return FeatureSet::sfc;
  if (name == "pol") return FeatureSet::pol;
  if (name == "all") return FeatureSet::all;
  throw ParseError("unknown feature set \"" + std::string(name) +
                   "\" (expected tfidf, sfc, pol or all)");
}

DfTable df_table(const Corpus& corpus, const std::set<std::string>& stopwords) {
  DfTable table;
  table.n = corpus.size();
  for (const Document& doc : corpus.documents) {
    const std::vector<std::string> tokens = tokenize(doc.text, stopwords);
    const std::set<std::string> distinct(tokens.begin(), tokens.end());
    for (const std::string& term : distinct) ++table.df[term];
  }
  return table;
}

DfTable df_table(const Corpus& corpus) { return df_table(corpus, default_stopwords()); }

double tfidf_weight(double tf, std::size_t df, std::size_t n) {
  if (tf == 0.0) return 0.0;
  if (df == 0) throw std::domain_error("tfidf_weight: tf > 0 with df = 0");
  if (df > n) throw std::domain_error("tfidf_weight: df exceeds collection size");
  return tf * (std::log2(static_cast<double>(n)) -
               std::log2(static_cast<double>(df)) + 1.0);
}

std::vector<std::string> select_keywords(const Corpus& train, const DfTable& df,
                                         std::size_t n_keywords,
                                         const std::set<std::string>& stopwords) {
  // Maximum tf per term over the training documents; the idf factor is
  // constant per term, so max tf·idf = idf · max tf.
  std::map<std::string, std::size_t> max_tf;
  for (const Document& doc : train.documents) {
    std::map<std::string, std::size_t> tf;
    for (const std::string& token : tokenize(doc.text, stopwords)) ++tf[token];
    for (const auto& [term, count] : tf) {
      auto& best = max_tf[term];
      best = std::max(best, count);
    }
  }
  std::vector<std::pair<double, std::string>> ranked;  // (-weight, term)
  ranked.reserve(max_tf.size());
  for (const auto& [term, tf] : max_tf) {
    const std::size_t d = df.count(term);
    if (d == 0) continue;  // term unknown to the supplied df table
    ranked.emplace_back(-tfidf_weight(static_cast<double>(tf), d, df.n), term);
  }
  std::sort(ranked.begin(), ranked.end());
  if (ranked.size() > n_keywords) ranked.resize(n_keywords);
  std::vector<std::string> vocabulary;
  vocabulary.reserve(ranked.size());
  for (const auto& [neg_weight, term] : ranked) vocabulary.push_back(term);
  return vocabulary;
}

SubjectVector subject_vector(const std::vector<std::string>& tokens,
                             const Lexicon& lexicon,
                             const CategoryCorrelations& correlations) {
  std::map<std::string, std::size_t> occurrences;
  for (const std::string& token : tokens) ++occurrences[token];

  // Pass 1: unambiguous cues vote directly.
  std::map<std::string, double> pass1;
  for (const auto& [term, count] : occurrences) {
    const auto it = lexicon.entries.find(term);
    if (it == lexicon.entries.end() || it->second.size() != 1) continue;
    pass1[it->second.front().first] += static_cast<double>(count);
  }

  // Pass 2: ambiguous terms resolved against the pass-1 tallies only, so
  // the outcome does not depend on token order.
  std::map<std::string, double> tally = pass1;
  for (const auto& [term, count] : occurrences) {
    const auto it = lexicon.entries.find(term);
    if (it == lexicon.entries.end() || it->second.size() < 2) continue;
    std::string best;
    double best_score = -1.0;
    for (const auto& [category, prior] : it->second) {
      double context = 0.0;
      for (const auto& [u, votes] : pass1) {
        context += votes * correlations.get(category, u);
      }
      const double score = prior * (1.0 + context);
      // candidates are sorted by category id, so ">" keeps the
      // lexicographically first category on ties
      if (score > best_score) {
        best_score = score;
        best = category;
      }
    }
    tally[best] += static_cast<double>(count);
  }

  SubjectVector sv;
  double total = 0.0;
  for (const auto& [category, votes] : tally) total += votes;
  if (total > 0.0) {
    for (const auto& [category, votes] : tally) {
      if (votes > 0.0) sv.salience[category] = votes / total;
    }
  }
  return sv;
}

SubjectVector subject_vector(const Document& doc, const Lexicon& lexicon,
                             const CategoryCorrelations& correlations,
                             const std::set<std::string>& stopwords) {
  return subject_vector(tokenize(doc.text, stopwords), lexicon, correlations);
}

std::array<std::optional<std::string>, kSubjectSlots> top_subjects(
    const SubjectVector& sv) {
  std::vector<std::pair<double, std::string>> ranked;  // (-salience, category)
  ranked.reserve(sv.salience.size());
  for (const auto& [category, salience] : sv.salience) {
    if (salience > 0.0) ranked.emplace_back(-salience, category);
  }
  std::sort(ranked.begin(), ranked.end());
  std::array<std::optional<std::string>, kSubjectSlots> slots;
  for (std::size_t i = 0; i < slots.size() && i < ranked.size(); ++i) {
    slots[i] = ranked[i].second;
  }
  return slots;
}

namespace {

// A whitespace-delimited word of the raw text, with views needed by the
// tagger: core = leading/trailing punctuation stripped; cue = trailing
// '.' retained (honorifics like "Dr." carry it).
struct TaggerWord {
  std::string core;
  std::string cue;
  bool ends_clause = false;  // raw word ended with . , ; : ! or ?
};

std::vector<TaggerWord> tagger_words(const std::string& text) {
  std::vector<TaggerWord> words;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string raw = text.substr(i, j - i);
    i = j;

    TaggerWord w;
    std::size_t begin = 0, end = raw.size();
    auto is_word_char = [](unsigned char c) {
      return std::isalnum(c) || c == '&' || c == '\'' || c >= 0x80;
    };
    while (begin < end && !is_word_char(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && !is_word_char(static_cast<unsigned char>(raw[end - 1]))) --end;
    if (begin >= end) continue;
    w.core = raw.substr(begin, end - begin);
    // keep one trailing period for cue matching ("Dr.")
    w.cue = (end < raw.size() && raw[end] == '.') ? w.core + "." : w.core;
    const char last = raw.back();
    w.ends_clause = last == '.' || last == ',' || last == ';' || last == ':' ||
                    last == '!' || last == '?';
    words.push_back(std::move(w));
  }
  return words;
}

bool capitalized(const std::string& core) {
  return !core.empty() && core[0] >= 'A' && core[0] <= 'Z';
}

}  // namespace

std::vector<PolEntity> pol_tag(const Document& doc, const Gazetteer& gazetteer) {
  if (doc.pol_annotations) return *doc.pol_annotations;

  std::vector<PolEntity> entities;
  const std::vector<TaggerWord> words = tagger_words(doc.text);
  std::size_t i = 0;
  while (i < words.size()) {
    if (gazetteer.honorifics.count(words[i].cue) ||
        gazetteer.honorifics.count(words[i].core)) {
      ++i;
      // a run following an honorific is a person
      std::string name;
      std::string honorific = words[i - 1].cue;
      bool stop = false;
      while (i < words.size() && capitalized(words[i].core) && !stop &&
             !gazetteer.honorifics.count(words[i].cue)) {
        if (!name.empty()) name += ' ';
        name += words[i].core;
        stop = words[i].ends_clause;
        ++i;
      }
      if (!name.empty()) {
        PolEntity e;
        e.kind = PolKind::person;
        e.name = name;
        e.attrs["honorific"] = honorific;
        entities.push_back(std::move(e));
      }
      continue;
    }
    if (!capitalized(words[i].core)) {
      ++i;
      continue;
    }
    std::string name;
    std::string last_core;
    bool stop = false;
    while (i < words.size() && capitalized(words[i].core) && !stop &&
           !gazetteer.honorifics.count(words[i].cue)) {
      if (!name.empty()) name += ' ';
      name += words[i].core;
      last_core = words[i].core;
      stop = words[i].ends_clause;
      ++i;
    }
    if (gazetteer.organizations.count(name) ||
        gazetteer.corporate_suffixes.count(last_core)) {
      PolEntity e;
      e.kind = PolKind::organization;
      e.name = name;
      entities.push_back(std::move(e));
    } else if (const auto it = gazetteer.locations.find(name);
               it != gazetteer.locations.end()) {
      PolEntity e;
      e.kind = PolKind::location;
      e.name = name;
      if (!it->second.empty()) e.attrs["country"] = it->second;
      entities.push_back(std::move(e));
    }
    // unmatched runs are dropped
  }
  return entities;
}

std::array<std::optional<std::string>, kPolSlots> pol_slots(
    const std::vector<PolEntity>& entities) {
  std::array<std::optional<std::string>, kPolSlots> slots;
  int n_person = 0, n_org = 0, n_loc = 0;
  for (const PolEntity& e : entities) {
    int base = -1;
    const char* attr_a = nullptr;
    const char* attr_b = nullptr;
    switch (e.kind) {
      case PolKind::person:
        if (n_person == kPersonCapacity) continue;
        base = 3 * n_person++;
        attr_a = "honorific";
        attr_b = "title";
        break;
      case PolKind::organization:
        if (n_org == kOrgCapacity) continue;
        base = kPersonSlots + 3 * n_org++;
        attr_a = "business";
        attr_b = "type";
        break;
      case PolKind::location:
        if (n_loc == kLocationCapacity) continue;
        base = kPersonSlots + kOrgSlots + 3 * n_loc++;
        attr_a = "country";
        attr_b = "region";
        break;
    }
    slots[base] = e.name;
    if (const auto it = e.attrs.find(attr_a); it != e.attrs.end())
      slots[base + 1] = it->second;
    if (const auto it = e.attrs.find(attr_b); it != e.attrs.end())
      slots[base + 2] = it->second;
  }
  return slots;
}

FeatureVector assemble(const Document& doc, FeatureSet set,
                       const FeatureContext& context) {
  FeatureVector fv;
  const bool want_subjects = set == FeatureSet::sfc || set == FeatureSet::all;
  const bool want_pol = set == FeatureSet::pol || set == FeatureSet::all;
  const bool want_keywords = set == FeatureSet::tfidf || set == FeatureSet::all;

  if (want_subjects) {
    if (!context.lexicon)
      throw ConfigError("assemble: feature set needs a lexicon");
    static const CategoryCorrelations no_correlations;
    const CategoryCorrelations& corr =
        context.correlations ? *context.correlations : no_correlations;
    fv.subjects = top_subjects(
        subject_vector(doc, *context.lexicon, corr, context.stopwords));
  }
  if (want_pol) {
    if (!context.gazetteer)
      throw ConfigError("assemble: feature set needs a gazetteer");
    fv.pol = pol_slots(pol_tag(doc, *context.gazetteer));
  }
  if (want_keywords) {
    if (!context.df || !context.vocabulary)
      throw ConfigError("assemble: feature set needs a df table and vocabulary");
    std::map<std::string, std::size_t> tf;
    for (const std::string& token : tokenize(doc.text, context.stopwords))
      ++tf[token];
    for (const std::string& term : *context.vocabulary) {
      const auto it = tf.find(term);
      const double count = it == tf.end() ? 0.0 : static_cast<double>(it->second);
      fv.keywords[term] =
          tfidf_weight(count, context.df->count(term), context.df->n);
    }
  }
  return fv;
}

FeatureContext make_context(const Corpus& train, const Corpus& stats,
                            std::size_t n_keywords, const Lexicon* lexicon,
                            const CategoryCorrelations* correlations,
                            const Gazetteer* gazetteer,
                            const std::set<std::string>& stopwords) {
  FeatureContext context;
  context.stopwords = stopwords;
  context.df = df_table(stats, stopwords);
  context.vocabulary = select_keywords(train, *context.df, n_keywords, stopwords);
  context.lexicon = lexicon;
  context.correlations = correlations;
  context.gazetteer = gazetteer;
  return context;
}

}  // namespace textprof
