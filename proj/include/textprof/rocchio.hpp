#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "textprof/corpus.hpp"
#include "textprof/features.hpp"

namespace textprof {

// Reweighting coefficients; the defaults are the tuned values the
// baseline is reported with.
struct RocchioParams {
  double alpha = 8.0;
  double beta = 16.0;
  double gamma = 4.0;
};

// Sparse term-weight vector; absent terms weigh 0.
using TermVector = std::map<std::string, double>;

enum class ProfileScale { tf, tfidf };

// A word-level interest profile.  Learning happens in tf scale; matching
// converts back to tf·idf.  r/s record the feedback batch sizes used.
struct Profile {
  TermVector weights;
  ProfileScale scale = ProfileScale::tf;
  std::size_t r = 0;  // relevant documents seen
  std::size_t s = 0;  // non-relevant documents seen
  RocchioParams params;
};

// Raw term counts of a document (tokenized with the given stopwords).
TermVector tf_vector(const Document& doc, const std::set<std::string>& stopwords);
// tf·idf-weighted vector: counts scaled by log2(n) − log2(df) + 1.
TermVector tfidf_vector(const Document& doc, const DfTable& df,
                        const std::set<std::string>& stopwords);

// Mean of the relevant tf·idf vectors with each component divided by its
// idf factor — i.e. the mean tf vector — tagged scale = tf.
// ValidationError on an empty relevant set; LookupError if a term is
// missing from the df table.
Profile init_profile(const std::vector<TermVector>& relevant_tfidf,
                     const DfTable& df);

// Modified Rocchio step over the union vocabulary:
//   p_new = α·p_old + (β/r)·Σ relevant − (γ/s)·Σ nonrelevant
// (a term with an empty batch is dropped).  Negative weights are
// retained; exact zeros are pruned from the sparse map.
Profile reweight(const Profile& p_old, const std::vector<TermVector>& relevant,
                 const std::vector<TermVector>& nonrelevant,
                 const RocchioParams& params = RocchioParams{});

// Multiply a tf-scale profile back into tf·idf scale for matching.
Profile to_tfidf_scale(const Profile& profile, const DfTable& df);

// Σ a·b / (|a|·|b|); 0 when either vector is all-zero.
double cosine_similarity(const TermVector& a, const TermVector& b);

struct PrPoint {
  double cutoff = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  bool precision_flagged = false;  // no documents predicted relevant
  bool recall_flagged = false;     // no relevant documents in the batch
};

// 101 evenly spaced cutoffs over [0, 1].
std::vector<double> default_cutoff_grid();

// Precision/recall at each cutoff: predict relevant iff score >= cutoff.
// Scores pair each document's similarity with its true label.
std::vector<PrPoint> pr_sweep(const std::vector<std::pair<double, Label>>& scores,
                              const std::vector<double>& grid);
std::vector<PrPoint> pr_sweep(const std::vector<std::pair<double, Label>>& scores);

// Cutoff maximizing precision + recall; ties take the smallest cutoff.
// ValidationError on an empty curve.
double best_cutoff(const std::vector<PrPoint>& curve);

// TSV dump: header line with scale, α/β/γ and r/s, then term<TAB>weight
// rows (terms sorted).  profile_from_tsv parses it back.
std::string profile_to_tsv(const Profile& profile);
Profile profile_from_tsv(std::istream& in);

}  // namespace textprof
