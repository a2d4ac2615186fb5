#include "textprof/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "textprof/errors.hpp"
#include "textprof/rng.hpp"

namespace textprof {

nlohmann::ordered_json gen_spec_to_json(const GenSpec& spec) {
  nlohmann::ordered_json j;
  j["n_docs"] = spec.n_docs;
  j["positive_fraction"] = spec.positive_fraction;
  j["target_concept"] = complex_to_json(spec.target_concept);
  j["vocab_size"] = spec.vocab_size;
  j["tokens_per_doc"] = spec.tokens_per_doc;
  j["noise_rate"] = spec.noise_rate;
  j["seed"] = spec.seed;
  return j;
}

GenSpec gen_spec_from_json(const nlohmann::json& j) {
  try {
    GenSpec spec;
    spec.n_docs = j.at("n_docs").get<std::size_t>();
    spec.target_concept = complex_from_json(j.at("target_concept"));
    if (j.contains("positive_fraction"))
      spec.positive_fraction = j.at("positive_fraction").get<double>();
    if (j.contains("vocab_size")) spec.vocab_size = j.at("vocab_size").get<std::size_t>();
    if (j.contains("tokens_per_doc"))
      spec.tokens_per_doc = j.at("tokens_per_doc").get<std::size_t>();
    if (j.contains("noise_rate")) spec.noise_rate = j.at("noise_rate").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  }
}

namespace {

// ---- target decomposition -------------------------------------------

struct PolConstraint {
  PolKind kind = PolKind::person;
  int slot = 0;     // 1-based within the kind's block
  int sub = 0;      // 0 = name, 1 = honorific/business/country, 2 = title/type/region
  const Selector* sel = nullptr;
};

struct KeywordPlanEntry {
  std::size_t tf_pos = 0;
  std::size_t tf_neg = 0;
};

struct ConceptPlan {
  std::map<int, const Selector*> subject;  // slot (1-based) -> selector
  std::vector<PolConstraint> pol;
  std::map<std::string, KeywordPlanEntry> keywords;  // term -> tf per class
};

const char* attr_key_name(PolKind kind, int sub) {
  switch (kind) {
    case PolKind::person: return sub == 1 ? "honorific" : "title";
    case PolKind::organization: return sub == 1 ? "business" : "type";
    case PolKind::location: return sub == 1 ? "country" : "region";
  }
  throw ValidationError("unknown entity kind");
}

PolConstraint decode_pol(const std::string& attribute, const Selector& sel) {
  const int idx = pol_slot_index(attribute);
  if (idx < 0)
    throw ValidationError("target concept references unknown attribute '" + attribute + "'");
  PolConstraint pc;
  pc.sel = &sel;
  if (idx < kPersonSlots) {
    pc.kind = PolKind::person;
    pc.slot = idx / 3 + 1;
    pc.sub = idx % 3;
  } else if (idx < kPersonSlots + kOrgSlots) {
    pc.kind = PolKind::organization;
    pc.slot = (idx - kPersonSlots) / 3 + 1;
    pc.sub = (idx - kPersonSlots) % 3;
  } else {
    pc.kind = PolKind::location;
    pc.slot = (idx - kPersonSlots - kOrgSlots) / 3 + 1;
    pc.sub = (idx - kPersonSlots - kOrgSlots) % 3;
  }
  return pc;
}

std::optional<std::string> first_non_null(const Selector& s) {
  for (const auto& v : s.allowed) {
    if (v) return *v;
  }
  return std::nullopt;
}

// First "value0", "value1", ... not allowed by the selector.
std::string deviating_value(const Selector& s, const std::string& stem) {
  for (int i = 0;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (s.allowed.count(CatValue{candidate}) == 0) return candidate;
  }
}

ConceptPlan decompose(const Complex& target) {
  ConceptPlan plan;
  for (const auto& [attribute, sel] : target.selectors) {
    if (attribute.rfind("subject", 0) == 0 && attribute.size() == 8 &&
        attribute[7] >= '1' && attribute[7] <= '5') {
      if (sel.kind != AttrKind::subject)
        throw ValidationError("target concept: " + attribute + " takes a subject selector");
      plan.subject[attribute[7] - '0'] = &sel;
    } else if (attribute.rfind("kw_", 0) == 0 && attribute.size() > 3) {
      if (sel.kind != AttrKind::numeric || sel.intervals.empty())
        throw ValidationError("target concept: " + attribute +
                              " takes a numeric selector with at least one interval");
      plan.keywords[attribute.substr(3)] = KeywordPlanEntry{};
    } else {
      PolConstraint pc = decode_pol(attribute, sel);
      if (pc.sel->kind == AttrKind::numeric)
        throw ValidationError("target concept: " + attribute + " is not numeric");
      plan.pol.push_back(pc);
    }
  }
  return plan;
}

// ---- subject realization ---------------------------------------------

// Token counts per salience rank; strictly descending so the slot order
// of the emitted categories is never ambiguous.
constexpr std::size_t kSlotTokens[kSubjectSlots] = {20, 16, 12, 8, 4};

struct SubjectPlan {
  // per constrained slot: rotation lists of leaves
  std::map<int, std::vector<std::string>> satisfy;
  std::map<int, std::vector<std::string>> refute;
  std::vector<std::string> filler;  // leaves no subject selector covers
  int max_slot = 0;                 // deepest constrained slot
};

// leaf -> its lexicographically first unambiguous lexicon term
std::map<std::string, std::string> unambiguous_terms(const Lexicon& lexicon) {
  std::map<std::string, std::string> out;
  for (const auto& [term, candidates] : lexicon.entries) {
    if (candidates.size() != 1) continue;
    auto [it, inserted] = out.emplace(candidates[0].first, term);
    if (!inserted && term < it->second) it->second = term;
  }
  return out;
}

bool any_value_covers(const Selector& sel, const std::string& leaf,
                      const GeneralizationHierarchy& h) {
  for (const auto& v : sel.allowed) {
    if (v && h.covers(*v, leaf)) return true;
  }
  return false;
}

SubjectPlan plan_subjects(const ConceptPlan& target, const GeneralizationHierarchy& h,
                          const Lexicon& lexicon, bool need_negatives) {
  SubjectPlan plan;
  if (target.subject.empty()) return plan;

  const auto leaf_term = unambiguous_terms(lexicon);
  std::vector<std::string> usable_leaves;
  for (const auto& leaf : h.leaves()) {
    if (leaf_term.count(leaf) != 0) usable_leaves.push_back(leaf);
  }
  if (usable_leaves.empty())
    throw ValidationError("target concept: the lexicon names no category unambiguously");

  for (const auto& [slot, sel] : target.subject) {
    plan.max_slot = std::max(plan.max_slot, slot);
    for (const auto& v : sel->allowed) {
      if (v && !h.contains(*v))
        throw ValidationError("target concept: unknown category '" + *v + "'");
    }

    std::vector<std::string> satisfy;
    for (const auto& leaf : usable_leaves) {
      if (any_value_covers(*sel, leaf, h)) satisfy.push_back(leaf);
    }
    if (satisfy.empty())
      throw ValidationError(
          "target concept: no lexicon-covered category satisfies subject" +
          std::to_string(slot));
    plan.satisfy[slot] = satisfy;

    if (need_negatives) {
      // Nearest misses first: leaves sharing the deepest ancestor with the
      // first satisfying leaf, so generalizing past the allowed value is
      // punished by a negative right below it.
      const std::string& anchor = satisfy.front();
      std::vector<std::pair<int, std::string>> ranked;
      for (const auto& leaf : usable_leaves) {
        if (any_value_covers(*sel, leaf, h)) continue;
        const std::string common = h.minimal_common_generalization({anchor, leaf});
        ranked.emplace_back(-h.level(common), leaf);
      }
      if (ranked.empty())
        throw ValidationError(
            "target concept: every usable category satisfies subject" + std::to_string(slot) +
            "; negatives cannot be constructed");
      std::sort(ranked.begin(), ranked.end());
      std::vector<std::string> refute;
      refute.reserve(ranked.size());
      for (auto& [rank, leaf] : ranked) refute.push_back(std::move(leaf));
      plan.refute[slot] = std::move(refute);
    }
  }

  for (const auto& leaf : usable_leaves) {
    bool covered = false;
    for (const auto& [slot, sel] : target.subject) {
      if (any_value_covers(*sel, leaf, h)) {
        covered = true;
        break;
      }
    }
    if (!covered) plan.filler.push_back(leaf);
  }
  if (plan.filler.size() < static_cast<std::size_t>(plan.max_slot))
    throw ValidationError("target concept: not enough uncovered categories to pad subject slots");
  return plan;
}

// The leaves one document mentions, slot by slot: constrained slots rotate
// through their list (probing past duplicates), the rest take fillers.
std::vector<std::string> doc_subjects(const SubjectPlan& plan,
                                      const std::map<int, std::vector<std::string>>& lists,
                                      std::size_t rotation) {
  std::vector<std::string> chosen(static_cast<std::size_t>(plan.max_slot));
  std::set<std::string> used;
  for (const auto& [slot, list] : lists) {
    std::size_t i = rotation % list.size();
    std::size_t probes = 0;
    while (used.count(list[i]) != 0) {
      i = (i + 1) % list.size();
      if (++probes > list.size())
        throw ValidationError("target concept: subject slots cannot take distinct categories");
    }
    chosen[static_cast<std::size_t>(slot - 1)] = list[i];
    used.insert(list[i]);
  }
  std::size_t next_filler = rotation;
  for (auto& leaf : chosen) {
    if (!leaf.empty()) continue;
    std::size_t i = next_filler % plan.filler.size();
    std::size_t probes = 0;
    while (used.count(plan.filler[i]) != 0) {
      i = (i + 1) % plan.filler.size();
      if (++probes > plan.filler.size())
        throw ValidationError("target concept: not enough distinct filler categories");
    }
    leaf = plan.filler[i];
    used.insert(leaf);
    ++next_filler;
  }
  return chosen;
}

// ---- keyword realization ---------------------------------------------

bool weight_allowed(const Selector& sel, double w) {
  for (const auto& iv : sel.intervals) {
    if (iv.contains(w)) return true;
  }
  return false;
}

void plan_keywords(ConceptPlan& plan, const Complex& target, const Lexicon& lexicon,
                   std::size_t n_docs, std::size_t n_pos, std::size_t tokens_per_doc) {
  for (auto& [term, entry] : plan.keywords) {
    const Selector& sel = target.selectors.at("kw_" + term);
    if (lexicon.entries.count(term) != 0)
      throw ValidationError("target concept: keyword '" + term +
                            "' is a lexicon term; subject salience would drift");
    if (tokenize(term, {}) != std::vector<std::string>{term})
      throw ValidationError("target concept: keyword '" + term + "' does not survive tokenization");

    const bool zero_ok = weight_allowed(sel, 0.0);
    const std::size_t n_neg = n_docs - n_pos;
    // The carrying class fixes the document frequency, which fixes the
    // idf factor, which makes the integer tf solvable.
    const std::size_t df = zero_ok ? n_neg : n_pos;
    if (df == 0) continue;  // the carrying class is empty; nothing to emit

    auto solve = [&](bool want_inside) -> std::size_t {
      for (std::size_t tf = 1; tf <= tokens_per_doc; ++tf) {
        const double w = tfidf_weight(static_cast<double>(tf), df, n_docs);
        if (weight_allowed(sel, w) == want_inside) return tf;
      }
      throw ValidationError("target concept: no term frequency puts kw_" + term +
                            (want_inside ? " inside" : " outside") + " its intervals");
    };
    if (zero_ok) {
      entry.tf_pos = 0;
      if (n_neg > 0) entry.tf_neg = solve(false);
    } else {
      entry.tf_pos = solve(true);
      entry.tf_neg = 0;
    }
  }
}

// ---- entity realization ----------------------------------------------

std::vector<PolEntity> doc_entities(const std::vector<PolConstraint>& constraints,
                                    bool satisfying) {
  std::vector<PolEntity> out;
  for (PolKind kind : {PolKind::person, PolKind::organization, PolKind::location}) {
    int max_slot = 0;
    int null_name_cap = 0;  // smallest slot whose name must stay NULL
    for (const auto& pc : constraints) {
      if (pc.kind != kind) continue;
      const bool wants_value = satisfying ? first_non_null(*pc.sel).has_value() : true;
      if (satisfying && pc.sub == 0 && !first_non_null(*pc.sel).has_value()) {
        // name constrained to NULL: the slot must stay empty
        if (null_name_cap == 0 || pc.slot < null_name_cap) null_name_cap = pc.slot;
        continue;
      }
      if (wants_value) max_slot = std::max(max_slot, pc.slot);
    }
    if (satisfying && null_name_cap != 0 && max_slot >= null_name_cap)
      throw ValidationError("target concept: entity slot " + std::to_string(null_name_cap) +
                            " must be empty but a later slot needs a value");
    if (max_slot == 0) continue;

    std::vector<PolEntity> entities(static_cast<std::size_t>(max_slot));
    for (int s = 1; s <= max_slot; ++s) {
      PolEntity& e = entities[static_cast<std::size_t>(s - 1)];
      e.kind = kind;
      e.name = pol_kind_name(kind) + std::to_string(s);
    }
    for (const auto& pc : constraints) {
      if (pc.kind != kind || pc.slot > max_slot) continue;
      PolEntity& e = entities[static_cast<std::size_t>(pc.slot - 1)];
      if (satisfying) {
        const auto value = first_non_null(*pc.sel);
        if (pc.sub == 0) {
          if (value) e.name = *value;
        } else if (value) {
          e.attrs[attr_key_name(kind, pc.sub)] = *value;
        }
        // attribute constrained to NULL alone: leave the key unset
      } else {
        const std::string off = deviating_value(*pc.sel, "none");
        if (pc.sub == 0) {
          e.name = off;
        } else {
          e.attrs[attr_key_name(kind, pc.sub)] = off;
        }
      }
    }
    for (auto& e : entities) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Corpus generate(const GenSpec& spec, const GeneralizationHierarchy& h, const Lexicon& lexicon) {
  if (spec.noise_rate < 0.0 || spec.noise_rate >= 0.5)
    throw ValidationError("noise_rate must lie in [0, 0.5)");
  if (spec.positive_fraction < 0.0 || spec.positive_fraction > 1.0)
    throw ValidationError("positive_fraction must lie in [0, 1]");
  if (spec.tokens_per_doc == 0) throw ValidationError("tokens_per_doc must be positive");

  const std::size_t n_pos =
      static_cast<std::size_t>(std::floor(spec.positive_fraction *
                                              static_cast<double>(spec.n_docs) + 0.5));
  const std::size_t n_neg = spec.n_docs - n_pos;
  if (spec.target_concept.selectors.empty() && n_neg > 0)
    throw ValidationError(
        "target concept: the universal concept admits no negative documents");

  ConceptPlan plan = decompose(spec.target_concept);
  const SubjectPlan subjects = plan_subjects(plan, h, lexicon, n_neg > 0);
  plan_keywords(plan, spec.target_concept, lexicon, spec.n_docs, n_pos, spec.tokens_per_doc);

  const auto leaf_term = unambiguous_terms(lexicon);

  // one burst token per document, frequent enough to outrank every
  // planned term in any tf·idf ordering
  std::size_t max_planned_tf = 0;
  for (std::size_t c : kSlotTokens) max_planned_tf = std::max(max_planned_tf, c);
  for (const auto& [term, entry] : plan.keywords)
    max_planned_tf = std::max({max_planned_tf, entry.tf_pos, entry.tf_neg});
  const std::size_t burst_count = max_planned_tf + 10;

  Rng rng(spec.seed);
  Corpus corpus;
  corpus.documents.reserve(spec.n_docs);

  std::size_t id_width = 1;
  for (std::size_t v = spec.n_docs; v >= 10; v /= 10) ++id_width;

  for (std::size_t i = 0; i < spec.n_docs; ++i) {
    const bool positive = i < n_pos;
    const std::size_t rotation = positive ? i : i - n_pos;

    std::vector<std::string> tokens;

    if (!plan.subject.empty()) {
      const auto leaves = doc_subjects(
          subjects, positive ? subjects.satisfy : subjects.refute, rotation);
      for (std::size_t slot = 0; slot < leaves.size(); ++slot) {
        const std::string& term = leaf_term.at(leaves[slot]);
        tokens.insert(tokens.end(), kSlotTokens[slot], term);
      }
    }
    for (const auto& [term, entry] : plan.keywords) {
      tokens.insert(tokens.end(), positive ? entry.tf_pos : entry.tf_neg, term);
    }
    tokens.insert(tokens.end(), burst_count, "uniq" + std::to_string(i));

    if (tokens.size() > spec.tokens_per_doc)
      throw ValidationError("tokens_per_doc too small: the target needs at least " +
                            std::to_string(tokens.size()) + " tokens per document");
    if (tokens.size() < spec.tokens_per_doc) {
      if (spec.vocab_size == 0)
        throw ValidationError("vocab_size must be positive to fill the token budget");
      while (tokens.size() < spec.tokens_per_doc)
        tokens.push_back("filler" + std::to_string(rng.below(spec.vocab_size)));
    }
    rng.shuffle(tokens);

    Document doc;
    {
      std::string id = std::to_string(i);
      doc.id = "d" + std::string(id_width - id.size(), '0') + id;
    }
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t) doc.text += ' ';
      doc.text += tokens[t];
    }
    doc.label = positive ? Label::positive : Label::negative;
    if (!plan.pol.empty()) doc.pol_annotations = doc_entities(plan.pol, positive);
    corpus.documents.push_back(std::move(doc));
  }

  const std::size_t n_flips = static_cast<std::size_t>(
      std::floor(spec.noise_rate * static_cast<double>(spec.n_docs) + 0.5));
  if (n_flips > 0) {
    std::vector<std::size_t> order(spec.n_docs);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t f = 0; f < n_flips; ++f) {
      Label& l = corpus.documents[order[f]].label;
      l = (l == Label::positive) ? Label::negative : Label::positive;
    }
  }
  return corpus;
}

}  // namespace textprof
