#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "textprof/corpus.hpp"
#include "textprof/features.hpp"
#include "textprof/hierarchy.hpp"
#include "textprof/rules.hpp"

namespace textprof {

// Recipe for a labeled synthetic corpus.  The target concept is a
// conjunction over subject slots (subject1..subject5, hierarchy nodes),
// entity slots (POLtagK_* names) and keyword weights (kw_<term>,
// intervals); positives are built to satisfy every selector and negatives
// to violate every selector, then `noise_rate` of the labels get flipped.
struct GenSpec {
  std::size_t n_docs = 100;
  double positive_fraction = 0.5;
  Complex target_concept;
  std::size_t vocab_size = 50;     // distractor token pool
  std::size_t tokens_per_doc = 80;
  double noise_rate = 0.0;         // must stay below 0.5
  std::uint64_t seed = 0;
};

nlohmann::ordered_json gen_spec_to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& j);  // ParseError

// Deterministic corpus construction.
//
//  - Subject selectors are realized through unambiguous lexicon terms:
//    positives rotate over the leaves under the allowed values, negatives
//    rotate over uncovered leaves ordered nearest-miss first (deepest
//    common ancestor with the positive leaf), so generalizing exactly to
//    the allowed value is both possible and necessary.  Token counts per
//    slot follow a fixed descending ladder, which fixes the salience
//    ranking.
//  - Entity selectors are realized with explicit pol annotations;
//    negatives carry deviating values rather than satisfying ones.
//  - Keyword selectors are solved for an integer term frequency against
//    the document frequency the plan itself fixes (the carrying class
//    holds the term, the other class omits it); ground truth is stated
//    for feature vectors assembled with a df table over the full corpus
//    and a vocabulary containing the concept's terms.
//  - Every document also carries one high-frequency token unique to it,
//    which crowds per-document noise into the top of any tf·idf keyword
//    ranking: profiles learned from keyword features alone cannot carry
//    over to unseen documents, while the subject/entity structure can.
//  - The remaining token budget is filled from a uniform distractor pool.
//
// ValidationError when the concept cannot be realized (or cannot be
// violated while negatives are required), when tokens_per_doc is too
// small for the plan, or when a parameter is out of range.
Corpus generate(const GenSpec& spec, const GeneralizationHierarchy& h,
                const Lexicon& lexicon);

}  // namespace textprof
