#include "textprof/rocchio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "textprof/errors.hpp"

namespace textprof {

TermVector tf_vector(const Document& doc, const std::set<std::string>& stopwords) {
  TermVector tf;
  for (const std::string& token : tokenize(doc.text, stopwords)) tf[token] += 1.0;
  return tf;
}

namespace {

double idf_factor(const std::string& term, const DfTable& df) {
  const std::size_t d = df.count(term);
  if (d == 0)
    throw LookupError("term \"" + term + "\" missing from the df table");
  return std::log2(static_cast<double>(df.n)) - std::log2(static_cast<double>(d)) +
         1.0;
}

}  // namespace

TermVector tfidf_vector(const Document& doc, const DfTable& df,
                        const std::set<std::string>& stopwords) {
  TermVector v = tf_vector(doc, stopwords);
  for (auto& [term, weight] : v) weight *= idf_factor(term, df);
  return v;
}

Profile init_profile(const std::vector<TermVector>& relevant_tfidf,
                     const DfTable& df) {
  if (relevant_tfidf.empty())
    throw ValidationError("init_profile: no relevant documents");
  Profile p;
  p.scale = ProfileScale::tf;
  p.r = relevant_tfidf.size();
  const double r = static_cast<double>(relevant_tfidf.size());
  for (const TermVector& doc : relevant_tfidf) {
    for (const auto& [term, weight] : doc) p.weights[term] += weight;
  }
  for (auto it = p.weights.begin(); it != p.weights.end();) {
    it->second /= r * idf_factor(it->first, df);
    it = it->second == 0.0 ? p.weights.erase(it) : ++it;
  }
  return p;
}

Profile reweight(const Profile& p_old, const std::vector<TermVector>& relevant,
                 const std::vector<TermVector>& nonrelevant,
                 const RocchioParams& params) {
  Profile p;
  p.scale = p_old.scale;
  p.r = relevant.size();
  p.s = nonrelevant.size();
  p.params = params;

  TermVector sum_rel, sum_non;
  for (const TermVector& doc : relevant) {
    for (const auto& [term, weight] : doc) sum_rel[term] += weight;
  }
  for (const TermVector& doc : nonrelevant) {
    for (const auto& [term, weight] : doc) sum_non[term] += weight;
  }

  std::set<std::string> vocabulary;
  for (const auto& [term, weight] : p_old.weights) vocabulary.insert(term);
  for (const auto& [term, weight] : sum_rel) vocabulary.insert(term);
  for (const auto& [term, weight] : sum_non) vocabulary.insert(term);

  for (const std::string& term : vocabulary) {
    double w = 0.0;
    if (const auto it = p_old.weights.find(term); it != p_old.weights.end())
      w += params.alpha * it->second;
    if (!relevant.empty()) {
      if (const auto it = sum_rel.find(term); it != sum_rel.end())
        w += params.beta / static_cast<double>(relevant.size()) * it->second;
    }
    if (!nonrelevant.empty()) {
      if (const auto it = sum_non.find(term); it != sum_non.end())
        w -= params.gamma / static_cast<double>(nonrelevant.size()) * it->second;
    }
    if (w != 0.0) p.weights[term] = w;
  }
  return p;
}

Profile to_tfidf_scale(const Profile& profile, const DfTable& df) {
  if (profile.scale == ProfileScale::tfidf) return profile;
  Profile p = profile;
  p.scale = ProfileScale::tfidf;
  for (auto& [term, weight] : p.weights) weight *= idf_factor(term, df);
  return p;
}

double cosine_similarity(const TermVector& a, const TermVector& b) {
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (const auto& [term, weight] : a) norm_a += weight * weight;
  for (const auto& [term, weight] : b) norm_b += weight * weight;
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  const TermVector& small = a.size() <= b.size() ? a : b;
  const TermVector& large = a.size() <= b.size() ? b : a;
  for (const auto& [term, weight] : small) {
    if (const auto it = large.find(term); it != large.end())
      dot += weight * it->second;
  }
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

std::vector<double> default_cutoff_grid() {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[static_cast<std::size_t>(i)] = i / 100.0;
  return grid;
}

std::vector<PrPoint> pr_sweep(const std::vector<std::pair<double, Label>>& scores,
                              const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("pr_sweep: empty cutoff grid");
  std::size_t total_relevant = 0;
  for (const auto& [score, label] : scores)
    total_relevant += label == Label::positive;
  std::vector<PrPoint> curve;
  curve.reserve(grid.size());
  for (const double cutoff : grid) {
    std::size_t predicted = 0, hit = 0;
    for (const auto& [score, label] : scores) {
      if (score < cutoff) continue;
      ++predicted;
      hit += label == Label::positive;
    }
    PrPoint point;
    point.cutoff = cutoff;
    point.precision_flagged = predicted == 0;
    point.recall_flagged = total_relevant == 0;
    point.precision =
        predicted == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(predicted);
    point.recall = total_relevant == 0
                       ? 0.0
                       : static_cast<double>(hit) / static_cast<double>(total_relevant);
    curve.push_back(point);
  }
  return curve;
}

std::vector<PrPoint> pr_sweep(const std::vector<std::pair<double, Label>>& scores) {
  return pr_sweep(scores, default_cutoff_grid());
}

double best_cutoff(const std::vector<PrPoint>& curve) {
  if (curve.empty()) throw ValidationError("best_cutoff: empty curve");
  const PrPoint* best = &curve.front();
  for (const PrPoint& point : curve) {
    if (point.precision + point.recall > best->precision + best->recall + 1e-12) {
      best = &point;
    } else if (std::abs(point.precision + point.recall -
                        (best->precision + best->recall)) <= 1e-12 &&
               point.cutoff < best->cutoff) {
      best = &point;
    }
  }
  return best->cutoff;
}

std::string profile_to_tsv(const Profile& profile) {
  char header[160];
  std::snprintf(header, sizeof header,
                "# scale=%s alpha=%g beta=%g gamma=%g r=%zu s=%zu\n",
                profile.scale == ProfileScale::tf ? "tf" : "tfidf",
                profile.params.alpha, profile.params.beta, profile.params.gamma,
                profile.r, profile.s);
  std::string out = header;
  char line[512];
  for (const auto& [term, weight] : profile.weights) {
    std::snprintf(line, sizeof line, "%s\t%.17g\n", term.c_str(), weight);
    out += line;
  }
  return out;
}

Profile profile_from_tsv(std::istream& in) {
  Profile p;
  std::string line;
  bool saw_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      // header: `# scale=tf alpha=8 beta=16 gamma=4 r=10 s=20`
      std::istringstream fields(line.substr(1));
      std::string field;
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        try {
          if (key == "scale") {
            if (value != "tf" && value != "tfidf")
              throw ParseError("profile: unknown scale \"" + value + "\"");
            p.scale = value == "tf" ? ProfileScale::tf : ProfileScale::tfidf;
          } else if (key == "alpha") {
            p.params.alpha = std::stod(value);
          } else if (key == "beta") {
            p.params.beta = std::stod(value);
          } else if (key == "gamma") {
            p.params.gamma = std::stod(value);
          } else if (key == "r") {
            p.r = std::stoul(value);
          } else if (key == "s") {
            p.s = std::stoul(value);
          }
        } catch (const std::invalid_argument&) {
          throw ParseError("profile header: bad value in \"" + field + "\"");
        }
      }
      saw_header = true;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("profile: line " + std::to_string(line_no) +
                       ": expected term<TAB>weight");
    try {
      p.weights[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    } catch (const std::invalid_argument&) {
      throw ParseError("profile: line " + std::to_string(line_no) +
                       ": bad weight");
    }
  }
  if (!saw_header) throw ParseError("profile: missing header line");
  return p;
}

}  // namespace textprof
