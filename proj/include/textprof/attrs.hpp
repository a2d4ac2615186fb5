#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "textprof/features.hpp"
#include "textprof/hierarchy.hpp"

namespace textprof {

// subject: categorical over hierarchy nodes, matched via `covers`;
// categorical: flat string values; numeric: real-valued (keyword weights).
enum class AttrKind { subject, categorical, numeric };

struct AttrDef {
  std::string name;
  AttrKind kind = AttrKind::categorical;

  bool operator==(const AttrDef&) const = default;
};

// Attribute declarations for one dataset, plus the hierarchy interpreting
// subject values.  Declaration order matters: learners use it for
// deterministic tie-breaking.
struct Schema {
  std::vector<AttrDef> attrs;
  const GeneralizationHierarchy* hierarchy = nullptr;

  int index_of(const std::string& name) const;  // -1 when absent
  const AttrDef& at(int index) const { return attrs[static_cast<std::size_t>(index)]; }
  std::size_t size() const { return attrs.size(); }
};

// One attribute value: monostate = NULL (slot empty / attribute absent).
using AttrValue = std::variant<std::monostate, std::string, double>;
using Row = std::vector<AttrValue>;

inline bool is_null(const AttrValue& v) {
  return std::holds_alternative<std::monostate>(v);
}

// Attribute layout for a feature set: subject1..subject5, the named
// entity slots, then kw_<term> per vocabulary entry (sets that skip a
// block simply omit its attributes).
Schema make_schema(FeatureSet set, const std::vector<std::string>& vocabulary,
                   const GeneralizationHierarchy* hierarchy);

// FeatureVector laid out against `schema`; attributes the vector does not
// carry become NULL, keyword attributes default to weight 0.
Row to_row(const FeatureVector& fv, const Schema& schema);

// Rendered form of a single value ("__null__" for NULL, %g for numbers).
std::string attr_value_repr(const AttrValue& v);

}  // namespace textprof
