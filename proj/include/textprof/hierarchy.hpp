#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace textprof {

// Sentinel produced when a generalization walk runs off the top of the
// hierarchy.  It is not a node: it covers nothing and nothing covers it.
inline constexpr std::string_view kDummyValue = "__dummy__";

// A single-rooted is-a tree over subject categories.  Node names are
// unique; levels count edges from the root (root = 0).
class GeneralizationHierarchy {
 public:
  // TSV with one "node<TAB>parent" line per node; the root uses "-" as its
  // parent.  ParseError for malformed lines, ValidationError for duplicate
  // nodes, unknown parents, missing/multiple roots, or unreachable nodes
  // (cycles) — each names the offending node.
  static GeneralizationHierarchy load(std::istream& in);
  static GeneralizationHierarchy load_file(const std::string& path);

  // Programmatic construction from (child, parent) pairs, parent "-" for
  // the root.  Same validation as load().
  static GeneralizationHierarchy from_edges(
      const std::vector<std::pair<std::string, std::string>>& edges);

  const std::string& root() const { return root_; }
  bool contains(const std::string& node) const { return level_.count(node) != 0; }
  std::size_t node_count() const { return level_.size(); }
  int max_depth() const { return max_depth_; }

  int level(const std::string& node) const;                 // LookupError
  const std::string& parent(const std::string& node) const;  // LookupError; root -> ""
  const std::vector<std::string>& children(const std::string& node) const;
  std::vector<std::string> leaves() const;  // sorted by name
  // Leaves in the subtree rooted at `node` (node itself if it is a leaf).
  std::vector<std::string> leaves_under(const std::string& node) const;

  // The ancestor `levels_up` edges above `node`; 0 is the node itself.
  // Walking past the root yields the dummy sentinel.  LookupError for
  // unknown nodes, ValidationError for negative distances.
  std::string ancestor_at(const std::string& node, int levels_up) const;

  // Deepest node that is an ancestor-or-self of every value in the set.
  // ValidationError on an empty set, LookupError on unknown values.
  std::string minimal_common_generalization(const std::set<std::string>& values) const;

  // True iff `general` is an ancestor-or-self of `specific`.  The dummy
  // sentinel covers nothing and is covered by nothing.  Unknown non-dummy
  // names raise LookupError.
  bool covers(const std::string& general, const std::string& specific) const;

 private:
  std::string root_;
  int max_depth_ = 0;
  std::map<std::string, std::string> parent_;
  std::map<std::string, int> level_;
  std::map<std::string, std::vector<std::string>> children_;

  static GeneralizationHierarchy build(
      const std::vector<std::pair<std::string, std::string>>& edges);
};

}  // namespace textprof
