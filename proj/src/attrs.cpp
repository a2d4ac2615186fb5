#include "textprof/attrs.hpp"

#include <cstdio>

namespace textprof {

int Schema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Schema make_schema(FeatureSet set, const std::vector<std::string>& vocabulary,
                   const GeneralizationHierarchy* hierarchy) {
  Schema schema;
  schema.hierarchy = hierarchy;
  const bool subjects = set == FeatureSet::sfc || set == FeatureSet::all;
  const bool pol = set == FeatureSet::pol || set == FeatureSet::all;
  const bool keywords = set == FeatureSet::tfidf || set == FeatureSet::all;
  if (subjects) {
    for (int k = 1; k <= kSubjectSlots; ++k) {
      schema.attrs.push_back({"subject" + std::to_string(k), AttrKind::subject});
    }
  }
  if (pol) {
    for (const std::string& name : pol_slot_names()) {
      schema.attrs.push_back({name, AttrKind::categorical});
    }
  }
  if (keywords) {
    for (const std::string& term : vocabulary) {
      schema.attrs.push_back({"kw_" + term, AttrKind::numeric});
    }
  }
  return schema;
}

Row to_row(const FeatureVector& fv, const Schema& schema) {
  Row row;
  row.reserve(schema.size());
  for (const AttrDef& attr : schema.attrs) {
    AttrValue value;  // NULL by default
    if (attr.kind == AttrKind::subject && attr.name.rfind("subject", 0) == 0) {
      const int k = std::atoi(attr.name.c_str() + 7);
      if (k >= 1 && k <= kSubjectSlots && fv.subjects[k - 1]) {
        value = *fv.subjects[k - 1];
      }
    } else if (attr.kind == AttrKind::categorical) {
      const int slot = pol_slot_index(attr.name);
      if (slot >= 0 && fv.pol[slot]) value = *fv.pol[slot];
    } else if (attr.kind == AttrKind::numeric && attr.name.rfind("kw_", 0) == 0) {
      const auto it = fv.keywords.find(attr.name.substr(3));
      value = it == fv.keywords.end() ? 0.0 : it->second;
    }
    row.push_back(std::move(value));
  }
  return row;
}

std::string attr_value_repr(const AttrValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return std::string(kNullValue);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::get<double>(v));
  return buf;
}

}  // namespace textprof
