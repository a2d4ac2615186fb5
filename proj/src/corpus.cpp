#include "textprof/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "textprof/errors.hpp"
#include "textprof/rng.hpp"

namespace textprof {

using ordered_json = nlohmann::ordered_json;

std::string label_name(Label label) {
  switch (label) {
    case Label::positive:
      return "pos";
    case Label::negative:
      return "neg";
    case Label::unlabeled:
      return "none";
  }
  return "none";
}

Label label_from_name(std::string_view name) {
  if (name == "pos") return Label::positive;
  if (name == "neg") return Label::negative;
  if (name == "none") return Label::unlabeled;
  throw ParseError("unknown label \"" + std::string(name) +
                   "\" (expected pos, neg or none)");
}

std::string pol_kind_name(PolKind kind) {
  switch (kind) {
    case PolKind::person:
      return "person";
    case PolKind::organization:
      return "organization";
    case PolKind::location:
      return "location";
  }
  return "person";
}

PolKind pol_kind_from_name(std::string_view name) {
  if (name == "person") return PolKind::person;
  if (name == "organization") return PolKind::organization;
  if (name == "location") return PolKind::location;
  throw ParseError("unknown entity kind \"" + std::string(name) +
                   "\" (expected person, organization or location)");
}

std::size_t Corpus::n_positive() const {
  return static_cast<std::size_t>(
      std::count_if(documents.begin(), documents.end(),
                    [](const Document& d) { return d.label == Label::positive; }));
}

std::size_t Corpus::n_negative() const {
  return static_cast<std::size_t>(
      std::count_if(documents.begin(), documents.end(),
                    [](const Document& d) { return d.label == Label::negative; }));
}

std::size_t Corpus::n_unlabeled() const {
  return size() - n_positive() - n_negative();
}

Corpus Corpus::labeled() const {
  Corpus out;
  for (const Document& d : documents) {
    if (d.label != Label::unlabeled) out.documents.push_back(d);
  }
  return out;
}

namespace {

PolEntity parse_entity(const ordered_json& j, std::size_t line_no) {
  const std::string where = "line " + std::to_string(line_no);
  if (!j.is_object()) throw ParseError(where + ": pol entry is not an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError(where + ": pol entry missing string field \"kind\"");
  if (!j.contains("name") || !j["name"].is_string())
    throw ParseError(where + ": pol entry missing string field \"name\"");
  PolEntity e;
  try {
    e.kind = pol_kind_from_name(j["kind"].get<std::string>());
  } catch (const ParseError& err) {
    throw ParseError(where + ": " + err.what());
  }
  e.name = j["name"].get<std::string>();
  if (j.contains("attrs")) {
    if (!j["attrs"].is_object())
      throw ParseError(where + ": pol entry field \"attrs\" is not an object");
    for (const auto& [key, value] : j["attrs"].items()) {
      if (!value.is_string())
        throw ParseError(where + ": pol attr \"" + key + "\" is not a string");
      e.attrs[key] = value.get<std::string>();
    }
  }
  return e;
}

Document parse_document_line(const std::string& line, std::size_t line_no) {
  const std::string where = "line " + std::to_string(line_no);
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(where + ": invalid JSON: " + err.what());
  }
  if (!j.is_object()) throw ParseError(where + ": document is not an object");
  for (const char* field : {"id", "text", "label"}) {
    if (!j.contains(field) || !j[field].is_string())
      throw ParseError(where + ": missing string field \"" + field + "\"");
  }
  Document d;
  d.id = j["id"].get<std::string>();
  d.text = j["text"].get<std::string>();
  try {
    d.label = label_from_name(j["label"].get<std::string>());
  } catch (const ParseError& err) {
    throw ParseError(where + ": " + err.what());
  }
  if (j.contains("pol")) {
    if (!j["pol"].is_array())
      throw ParseError(where + ": field \"pol\" is not an array");
    std::vector<PolEntity> entities;
    for (const auto& entry : j["pol"]) entities.push_back(parse_entity(entry, line_no));
    d.pol_annotations = std::move(entities);
  }
  return d;
}

}  // namespace

Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::map<std::string, std::size_t> seen;  // id -> first line
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Document d = parse_document_line(line, line_no);
    auto [it, inserted] = seen.emplace(d.id, line_no);
    if (!inserted) {
      throw ValidationError("duplicate document id \"" + d.id + "\" (line " +
                            std::to_string(line_no) + ", first seen line " +
                            std::to_string(it->second) + ")");
    }
    corpus.documents.push_back(std::move(d));
  }
  return corpus;
}

Corpus parse_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus file: " + path);
  return parse_corpus(in);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const Document& d : corpus.documents) {
    ordered_json j;
    j["id"] = d.id;
    j["text"] = d.text;
    j["label"] = label_name(d.label);
    if (d.pol_annotations) {
      ordered_json pol = ordered_json::array();
      for (const PolEntity& e : *d.pol_annotations) {
        ordered_json je;
        je["kind"] = pol_kind_name(e.kind);
        je["name"] = e.name;
        if (!e.attrs.empty()) {
          ordered_json attrs;
          for (const auto& [key, value] : e.attrs) attrs[key] = value;
          je["attrs"] = attrs;
        }
        pol.push_back(je);
      }
      j["pol"] = pol;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_corpus_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write corpus file: " + path);
  out << serialize_corpus(corpus);
}

std::vector<std::string> tokenize(std::string_view text,
                                  const std::set<std::string>& stopwords) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (!stopwords.count(current)) tokens.push_back(current);
      current.clear();
    }
  };
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  return tokenize(text, default_stopwords());
}

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",     "about", "after", "all",   "also",  "an",    "and",  "any",
      "are",   "as",    "at",    "be",    "been",  "but",   "by",   "can",
      "could", "did",   "do",    "does",  "for",   "from",  "had",  "has",
      "have",  "he",    "her",   "his",   "i",     "if",    "in",   "into",
      "is",    "it",    "its",   "may",   "more",  "most",  "no",   "not",
      "of",    "on",    "or",    "our",   "out",   "s",     "said", "she",
      "so",    "some",  "such",  "t",     "than",  "that",  "the",  "their",
      "them",  "then",  "there", "these", "they",  "this",  "to",   "up",
      "was",   "we",    "were",  "what",  "when",  "which", "who",  "will",
      "with",  "would", "you"};
  return words;
}

std::set<std::string> load_stopwords(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t");
    words.insert(line.substr(begin, end - begin + 1));
  }
  return words;
}

std::set<std::string> load_stopwords_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stopword file: " + path);
  return load_stopwords(in);
}

namespace {

// Indices of `corpus` shuffled by `seed`; splits then pick prefixes and
// re-sort so each side keeps the original document order.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  return idx;
}

Corpus take(const Corpus& corpus, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  Corpus out;
  out.documents.reserve(indices.size());
  for (std::size_t i : indices) out.documents.push_back(corpus.documents[i]);
  return out;
}

// Train size under the "round half up" rule: floor(0.7 n + 0.5).
std::size_t train_size_70(std::size_t n) {
  return static_cast<std::size_t>(0.7 * static_cast<double>(n) + 0.5);
}

TrainTestSplit split_indices_70_30(const Corpus& corpus,
                                   const std::vector<std::size_t>& order,
                                   std::size_t n_train) {
  std::vector<std::size_t> train(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test(order.begin() + n_train, order.end());
  return {take(corpus, std::move(train)), take(corpus, std::move(test))};
}

}  // namespace

TrainTestSplit split_70_30(const Corpus& corpus, std::uint64_t seed,
                           bool stratified) {
  const std::size_t n = corpus.size();
  if (n < 2) throw ValidationError("70/30 split needs at least 2 documents");
  if (!stratified) {
    return split_indices_70_30(corpus, shuffled_indices(n, seed),
                               train_size_70(n));
  }
  // Stratified: apply the same rounding rule inside each class, drawing
  // the shuffle for both classes from one generator so the whole split
  // still depends on a single seed.
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    (corpus.documents[i].label == Label::positive ? pos : neg).push_back(i);
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);
  std::vector<std::size_t> train, test;
  for (auto* group : {&pos, &neg}) {
    const std::size_t n_train = train_size_70(group->size());
    train.insert(train.end(), group->begin(), group->begin() + n_train);
    test.insert(test.end(), group->begin() + n_train, group->end());
  }
  return {take(corpus, std::move(train)), take(corpus, std::move(test))};
}

std::vector<TrainTestSplit> kfold(const Corpus& corpus, int k,
                                  std::uint64_t seed, bool stratified) {
  const std::size_t n = corpus.size();
  if (k < 2) throw ValidationError("kfold needs k >= 2");
  if (static_cast<std::size_t>(k) > n)
    throw ValidationError("kfold needs k <= corpus size (k=" +
                          std::to_string(k) + ", n=" + std::to_string(n) + ")");

  // Fold assignment per document index.
  std::vector<int> fold_of(n, -1);
  auto assign = [&](const std::vector<std::size_t>& order, int first_fold) {
    // Contiguous slices of the shuffled order; with n = q*k + r the first
    // r folds get q+1 documents.  `first_fold` rotates which folds take
    // the remainder so stratified assignment doesn't always enlarge fold 0.
    const std::size_t q = order.size() / static_cast<std::size_t>(k);
    const std::size_t r = order.size() % static_cast<std::size_t>(k);
    std::size_t at = 0;
    for (int f = 0; f < k; ++f) {
      const int fold = (first_fold + f) % k;
      std::size_t len = q + (static_cast<std::size_t>(f) < r ? 1 : 0);
      for (std::size_t j = 0; j < len; ++j) fold_of[order[at++]] = fold;
    }
    return static_cast<int>(r);
  };

  if (!stratified) {
    assign(shuffled_indices(n, seed), 0);
  } else {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < n; ++i) {
      (corpus.documents[i].label == Label::positive ? pos : neg).push_back(i);
    }
    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    int next_fold = assign(pos, 0);
    assign(neg, next_fold);
  }

  std::vector<TrainTestSplit> splits;
  splits.reserve(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) {
      (fold_of[i] == f ? test : train).push_back(i);
    }
    splits.push_back({take(corpus, std::move(train)), take(corpus, std::move(test))});
  }
  return splits;
}

std::vector<TrainTestSplit> expand_split_plan(const Corpus& corpus,
                                              const SplitPlan& plan) {
  if (plan.kind == SplitKind::kfold) {
    return kfold(corpus, plan.k, plan.seed, plan.stratified);
  }
  if (plan.runs < 1) throw ValidationError("split plan needs runs >= 1");
  std::vector<TrainTestSplit> splits;
  splits.reserve(static_cast<std::size_t>(plan.runs));
  for (int r = 0; r < plan.runs; ++r) {
    splits.push_back(split_70_30(corpus, derive_seed(plan.seed, static_cast<std::uint64_t>(r)),
                                 plan.stratified));
  }
  return splits;
}

}  // namespace textprof
