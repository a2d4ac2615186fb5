#include "textprof/rules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "textprof/errors.hpp"

namespace textprof {

namespace {

std::string attr_kind_name(AttrKind kind) {
  switch (kind) {
    case AttrKind::subject:
      return "subject";
    case AttrKind::categorical:
      return "categorical";
    case AttrKind::numeric:
      return "numeric";
  }
  return "categorical";
}

AttrKind attr_kind_from_name(const std::string& name) {
  if (name == "subject") return AttrKind::subject;
  if (name == "categorical") return AttrKind::categorical;
  if (name == "numeric") return AttrKind::numeric;
  throw ParseError("unknown attribute kind \"" + name + "\"");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

bool selector_matches(const Selector& s, const AttrValue& value,
                      const GeneralizationHierarchy* h) {
  switch (s.kind) {
    case AttrKind::numeric: {
      const double* w = std::get_if<double>(&value);
      if (!w) return false;  // NULL never satisfies an interval
      for (const Interval& i : s.intervals) {
        if (i.contains(*w)) return true;
      }
      return false;
    }
    case AttrKind::categorical: {
      if (is_null(value)) return s.allowed.count(std::nullopt) != 0;
      const std::string* v = std::get_if<std::string>(&value);
      if (!v) return false;
      return s.allowed.count(*v) != 0;
    }
    case AttrKind::subject: {
      if (is_null(value)) return s.allowed.count(std::nullopt) != 0;
      const std::string* v = std::get_if<std::string>(&value);
      if (!v) return false;
      for (const CatValue& a : s.allowed) {
        if (!a) continue;
        if (h ? h->covers(*a, *v) : *a == *v) return true;
      }
      return false;
    }
  }
  return false;
}

bool covers_row(const Complex& c, const Row& row, const Schema& schema) {
  for (const auto& [attribute, selector] : c.selectors) {
    const int index = schema.index_of(attribute);
    static const AttrValue null_value;
    const AttrValue& value =
        index < 0 ? null_value : row[static_cast<std::size_t>(index)];
    if (!selector_matches(selector, value, schema.hierarchy)) return false;
  }
  return true;
}

namespace {

bool interval_contains_interval(const Interval& outer, const Interval& inner) {
  const bool lo_ok =
      outer.lo < inner.lo ||
      (outer.lo == inner.lo && (outer.lo_closed || !inner.lo_closed));
  const bool hi_ok =
      outer.hi > inner.hi ||
      (outer.hi == inner.hi && (outer.hi_closed || !inner.hi_closed));
  return lo_ok && hi_ok;
}

}  // namespace

bool selector_subsumes(const Selector& general, const Selector& specific,
                       const GeneralizationHierarchy* h) {
  if (general.kind != specific.kind) return false;
  switch (general.kind) {
    case AttrKind::numeric: {
      for (const Interval& inner : specific.intervals) {
        const bool contained =
            std::any_of(general.intervals.begin(), general.intervals.end(),
                        [&](const Interval& outer) {
                          return interval_contains_interval(outer, inner);
                        });
        if (!contained) return false;
      }
      return true;
    }
    case AttrKind::categorical: {
      for (const CatValue& v : specific.allowed) {
        if (!general.allowed.count(v)) return false;
      }
      return true;
    }
    case AttrKind::subject: {
      for (const CatValue& v : specific.allowed) {
        if (!v) {
          if (!general.allowed.count(std::nullopt)) return false;
          continue;
        }
        const bool covered = std::any_of(
            general.allowed.begin(), general.allowed.end(), [&](const CatValue& g) {
              return g && (h ? h->covers(*g, *v) : *g == *v);
            });
        if (!covered) return false;
      }
      return true;
    }
  }
  return false;
}

bool complex_subsumes(const Complex& general, const Complex& specific,
                      const GeneralizationHierarchy* h) {
  for (const auto& [attribute, g] : general.selectors) {
    const auto it = specific.selectors.find(attribute);
    if (it == specific.selectors.end()) return false;
    if (!selector_subsumes(g, it->second, h)) return false;
  }
  return true;
}

namespace {

std::optional<Selector> intersect_selectors(const Selector& a, const Selector& b,
                                            const GeneralizationHierarchy* h) {
  if (a.kind != b.kind) return std::nullopt;
  Selector out;
  out.attribute = a.attribute;
  out.kind = a.kind;
  switch (a.kind) {
    case AttrKind::numeric: {
      for (const Interval& ia : a.intervals) {
        for (const Interval& ib : b.intervals) {
          Interval r;
          if (ia.lo > ib.lo) {
            r.lo = ia.lo;
            r.lo_closed = ia.lo_closed;
          } else if (ib.lo > ia.lo) {
            r.lo = ib.lo;
            r.lo_closed = ib.lo_closed;
          } else {
            r.lo = ia.lo;
            r.lo_closed = ia.lo_closed && ib.lo_closed;
          }
          if (ia.hi < ib.hi) {
            r.hi = ia.hi;
            r.hi_closed = ia.hi_closed;
          } else if (ib.hi < ia.hi) {
            r.hi = ib.hi;
            r.hi_closed = ib.hi_closed;
          } else {
            r.hi = ia.hi;
            r.hi_closed = ia.hi_closed && ib.hi_closed;
          }
          if (!r.empty()) out.intervals.push_back(r);
        }
      }
      std::sort(out.intervals.begin(), out.intervals.end(),
                [](const Interval& x, const Interval& y) {
                  return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
                });
      out.intervals.erase(std::unique(out.intervals.begin(), out.intervals.end()),
                          out.intervals.end());
      if (out.intervals.empty()) return std::nullopt;
      return out;
    }
    case AttrKind::categorical: {
      for (const CatValue& v : a.allowed) {
        if (b.allowed.count(v)) out.allowed.insert(v);
      }
      if (out.allowed.empty()) return std::nullopt;
      return out;
    }
    case AttrKind::subject: {
      // value-wise meet: for comparable nodes keep the deeper one
      for (const CatValue& va : a.allowed) {
        for (const CatValue& vb : b.allowed) {
          if (!va && !vb) {
            out.allowed.insert(std::nullopt);
          } else if (va && vb) {
            if (h ? h->covers(*va, *vb) : *va == *vb) {
              out.allowed.insert(vb);
            } else if (h && h->covers(*vb, *va)) {
              out.allowed.insert(va);
            }
          }
        }
      }
      if (out.allowed.empty()) return std::nullopt;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Complex> intersect(const Complex& a, const Complex& b,
                                 const GeneralizationHierarchy* h) {
  Complex out = a;
  for (const auto& [attribute, sb] : b.selectors) {
    const auto it = out.selectors.find(attribute);
    if (it == out.selectors.end()) {
      out.selectors.emplace(attribute, sb);
      continue;
    }
    std::optional<Selector> merged = intersect_selectors(it->second, sb, h);
    if (!merged) return std::nullopt;
    it->second = std::move(*merged);
  }
  return out;
}

// ---------------------------------------------------------------- render

namespace {

std::string render_cat_value(const CatValue& v, AttrKind kind) {
  if (!v) return std::string(kNullValue);
  if (kind != AttrKind::subject) return *v;
  std::string out = *v;  // category ids display with spaces
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string render_interval(const Interval& i) {
  const bool lo_inf = std::isinf(i.lo) && i.lo < 0;
  const bool hi_inf = std::isinf(i.hi) && i.hi > 0;
  if (lo_inf && hi_inf) return "in (-inf, inf)";
  if (lo_inf) return (i.hi_closed ? "<= " : "< ") + format_real(i.hi);
  if (hi_inf) return (i.lo_closed ? ">= " : "> ") + format_real(i.lo);
  std::string out = "in ";
  out += i.lo_closed ? '[' : '(';
  out += format_real(i.lo) + ", " + format_real(i.hi);
  out += i.hi_closed ? ']' : ')';
  return out;
}

}  // namespace

std::string render_selector(const Selector& s) {
  if (s.kind == AttrKind::numeric) {
    std::string parts;
    for (const Interval& i : s.intervals) {
      if (!parts.empty()) parts += " or ";
      parts += render_interval(i);
    }
    return s.attribute + " " + parts;
  }
  std::string parts;
  for (const CatValue& v : s.allowed) {
    if (!parts.empty()) parts += " or ";
    parts += render_cat_value(v, s.kind);
  }
  return s.attribute + " = " + parts;
}

std::string render_complex(const Complex& c) {
  if (c.universal()) return "anything";
  std::string out;
  for (const auto& [attribute, selector] : c.selectors) {
    if (!out.empty()) out += " & ";
    out += render_selector(selector);
  }
  return out;
}

namespace {

std::string render_dnf(const std::vector<Complex>& complexes, const char* conclusion) {
  std::string body;
  for (const Complex& c : complexes) {
    if (!body.empty()) body += " or ";
    body += render_complex(c);
  }
  return "IF " + body + " THEN " + conclusion;
}

}  // namespace

std::string render_positive_dnf(const std::vector<Complex>& complexes) {
  return render_dnf(complexes, "article is of interest");
}

std::string render_ruleset(const RuleSet& rs) {
  if (rs.rules.empty()) return "IF nothing THEN article is of interest";
  return render_positive_dnf(rs.rules);
}

// Display groups rules by class (positive line, then negative line, then
// the default); matching order is the rule order in the machine form.
std::string render_pruned_ruleset(const PrunedRuleSet& rs) {
  std::vector<Complex> positive, negative;
  for (const ClassRule& r : rs.rules) {
    (r.label == Label::positive ? positive : negative).push_back(r.conditions);
  }
  std::string out;
  if (!positive.empty()) out += render_positive_dnf(positive) + "\n";
  if (!negative.empty())
    out += render_dnf(negative, "article is not of interest") + "\n";
  out += std::string("DEFAULT article is ") +
         (rs.default_label == Label::positive ? "of interest" : "not of interest") +
         "\n";
  return out;
}

// ------------------------------------------------------------- machine form

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json interval_to_json(const Interval& i) {
  ordered_json j;
  j["lo"] = std::isinf(i.lo) ? ordered_json(nullptr) : ordered_json(i.lo);
  j["hi"] = std::isinf(i.hi) ? ordered_json(nullptr) : ordered_json(i.hi);
  j["lo_closed"] = i.lo_closed;
  j["hi_closed"] = i.hi_closed;
  return j;
}

Interval interval_from_json(const nlohmann::json& j) {
  Interval i;
  if (j.contains("lo") && !j["lo"].is_null()) i.lo = j["lo"].get<double>();
  if (j.contains("hi") && !j["hi"].is_null()) i.hi = j["hi"].get<double>();
  i.lo_closed = j.value("lo_closed", false);
  i.hi_closed = j.value("hi_closed", false);
  return i;
}

ordered_json selector_to_json(const Selector& s) {
  ordered_json j;
  j["attribute"] = s.attribute;
  j["kind"] = attr_kind_name(s.kind);
  if (s.kind == AttrKind::numeric) {
    ordered_json intervals = ordered_json::array();
    for (const Interval& i : s.intervals) intervals.push_back(interval_to_json(i));
    j["intervals"] = intervals;
  } else {
    ordered_json allowed = ordered_json::array();
    for (const CatValue& v : s.allowed) {
      if (v) {
        allowed.push_back(*v);
      } else {
        allowed.push_back(nullptr);
      }
    }
    j["allowed"] = allowed;
  }
  return j;
}

Selector selector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("attribute") || !j.contains("kind"))
    throw ParseError("selector: expected object with attribute and kind");
  Selector s;
  s.attribute = j["attribute"].get<std::string>();
  s.kind = attr_kind_from_name(j["kind"].get<std::string>());
  if (j.contains("intervals")) {
    for (const auto& i : j["intervals"]) s.intervals.push_back(interval_from_json(i));
  }
  if (j.contains("allowed")) {
    for (const auto& v : j["allowed"]) {
      if (v.is_null()) {
        s.allowed.insert(std::nullopt);
      } else {
        s.allowed.insert(v.get<std::string>());
      }
    }
  }
  if (s.allowed.empty() && s.intervals.empty())
    throw ParseError("selector for \"" + s.attribute + "\" allows nothing");
  return s;
}

}  // namespace

nlohmann::ordered_json complex_to_json(const Complex& c) {
  ordered_json selectors = ordered_json::array();
  for (const auto& [attribute, selector] : c.selectors) {
    selectors.push_back(selector_to_json(selector));
  }
  ordered_json j;
  j["selectors"] = selectors;
  return j;
}

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("selectors") || !j["selectors"].is_array())
    throw ParseError("complex: expected object with a selectors array");
  Complex c;
  for (const auto& js : j["selectors"]) {
    Selector s = selector_from_json(js);
    const std::string attribute = s.attribute;
    if (!c.selectors.emplace(attribute, std::move(s)).second)
      throw ParseError("complex: duplicate selector for \"" + attribute + "\"");
  }
  return c;
}

nlohmann::ordered_json ruleset_to_json(const RuleSet& rs) {
  ordered_json rules = ordered_json::array();
  for (const Complex& c : rs.rules) rules.push_back(complex_to_json(c));
  ordered_json j;
  j["kind"] = "covering_profile";
  j["rules"] = rules;
  j["new_coverage"] = rs.new_coverage;
  j["total_coverage"] = rs.total_coverage;
  return j;
}

RuleSet ruleset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("kind", "") != "covering_profile")
    throw ParseError("rule set: expected kind \"covering_profile\"");
  RuleSet rs;
  for (const auto& jr : j.at("rules")) rs.rules.push_back(complex_from_json(jr));
  if (j.contains("new_coverage"))
    rs.new_coverage = j["new_coverage"].get<std::vector<std::size_t>>();
  if (j.contains("total_coverage"))
    rs.total_coverage = j["total_coverage"].get<std::vector<std::size_t>>();
  return rs;
}

nlohmann::ordered_json pruned_ruleset_to_json(const PrunedRuleSet& rs) {
  ordered_json rules = ordered_json::array();
  for (const ClassRule& r : rs.rules) {
    ordered_json jr;
    jr["conditions"] = complex_to_json(r.conditions);
    jr["class"] = label_name(r.label);
    jr["train_accuracy"] = r.train_accuracy;
    jr["train_covered"] = r.train_covered;
    rules.push_back(jr);
  }
  ordered_json j;
  j["kind"] = "decision_rules";
  j["rules"] = rules;
  j["default"] = label_name(rs.default_label);
  return j;
}

PrunedRuleSet pruned_ruleset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("kind", "") != "decision_rules")
    throw ParseError("rule set: expected kind \"decision_rules\"");
  PrunedRuleSet rs;
  for (const auto& jr : j.at("rules")) {
    ClassRule r;
    r.conditions = complex_from_json(jr.at("conditions"));
    r.label = label_from_name(jr.at("class").get<std::string>());
    r.train_accuracy = jr.value("train_accuracy", 0.0);
    r.train_covered = jr.value("train_covered", std::size_t{0});
    rs.rules.push_back(std::move(r));
  }
  rs.default_label = label_from_name(j.at("default").get<std::string>());
  return rs;
}

}  // namespace textprof
