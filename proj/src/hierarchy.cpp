#include "textprof/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>

#include "textprof/errors.hpp"

namespace textprof {

GeneralizationHierarchy GeneralizationHierarchy::load(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected \"node<TAB>parent\"");
    }
    edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return build(edges);
}

GeneralizationHierarchy GeneralizationHierarchy::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open hierarchy file: " + path);
  return load(in);
}

GeneralizationHierarchy GeneralizationHierarchy::from_edges(
    const std::vector<std::pair<std::string, std::string>>& edges) {
  return build(edges);
}

GeneralizationHierarchy GeneralizationHierarchy::build(
    const std::vector<std::pair<std::string, std::string>>& edges) {
  GeneralizationHierarchy h;
  for (const auto& [node, parent] : edges) {
    if (node == kDummyValue || parent == kDummyValue)
      throw ValidationError(std::string("\"") + std::string(kDummyValue) +
                            "\" is reserved and cannot be a node name");
    if (h.parent_.count(node))
      throw ValidationError("node \"" + node + "\" defined twice");
    h.parent_[node] = parent;
    h.children_[node];  // ensure every node has a (possibly empty) child list
    if (parent == "-") {
      if (!h.root_.empty())
        throw ValidationError("multiple roots: \"" + h.root_ + "\" and \"" +
                              node + "\"");
      h.root_ = node;
    }
  }
  if (h.root_.empty()) throw ValidationError("hierarchy has no root");
  for (const auto& [node, parent] : h.parent_) {
    if (parent == "-") continue;
    if (!h.parent_.count(parent))
      throw ValidationError("node \"" + node + "\" references missing parent \"" +
                            parent + "\"");
    h.children_[parent].push_back(node);
  }
  // std::map iteration gave each child list sorted order already, but be
  // explicit: child order is part of deterministic traversal.
  for (auto& [node, kids] : h.children_) std::sort(kids.begin(), kids.end());

  // Levels by BFS from the root; anything never reached sits on a cycle
  // (or under one) since every parent reference resolves.
  std::deque<std::string> queue{h.root_};
  h.level_[h.root_] = 0;
  while (!queue.empty()) {
    const std::string node = queue.front();
    queue.pop_front();
    const int next = h.level_[node] + 1;
    for (const std::string& child : h.children_[node]) {
      h.level_[child] = next;
      h.max_depth_ = std::max(h.max_depth_, next);
      queue.push_back(child);
    }
  }
  if (h.level_.size() != h.parent_.size()) {
    for (const auto& [node, parent] : h.parent_) {
      if (!h.level_.count(node))
        throw ValidationError("node \"" + node +
                              "\" is not reachable from the root (cycle?)");
    }
  }
  return h;
}

int GeneralizationHierarchy::level(const std::string& node) const {
  const auto it = level_.find(node);
  if (it == level_.end()) throw LookupError("unknown hierarchy node \"" + node + "\"");
  return it->second;
}

const std::string& GeneralizationHierarchy::parent(const std::string& node) const {
  const auto it = parent_.find(node);
  if (it == parent_.end()) throw LookupError("unknown hierarchy node \"" + node + "\"");
  if (it->second == "-") {
    static const std::string empty;
    return empty;
  }
  return it->second;
}

const std::vector<std::string>& GeneralizationHierarchy::children(
    const std::string& node) const {
  const auto it = children_.find(node);
  if (it == children_.end()) throw LookupError("unknown hierarchy node \"" + node + "\"");
  return it->second;
}

std::vector<std::string> GeneralizationHierarchy::leaves() const {
  std::vector<std::string> out;
  for (const auto& [node, kids] : children_) {
    if (kids.empty()) out.push_back(node);
  }
  return out;  // children_ is an ordered map, so this is sorted
}

std::vector<std::string> GeneralizationHierarchy::leaves_under(
    const std::string& node) const {
  if (!contains(node)) throw LookupError("unknown hierarchy node \"" + node + "\"");
  std::vector<std::string> out;
  std::deque<std::string> queue{node};
  while (!queue.empty()) {
    const std::string current = queue.front();
    queue.pop_front();
    const auto& kids = children_.at(current);
    if (kids.empty()) {
      out.push_back(current);
    } else {
      queue.insert(queue.end(), kids.begin(), kids.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string GeneralizationHierarchy::ancestor_at(const std::string& node,
                                                 int levels_up) const {
  if (levels_up < 0) throw ValidationError("ancestor_at: negative distance");
  const int node_level = level(node);  // validates the node
  if (levels_up > node_level) return std::string(kDummyValue);
  std::string current = node;
  for (int i = 0; i < levels_up; ++i) current = parent_.at(current);
  return current;
}

std::string GeneralizationHierarchy::minimal_common_generalization(
    const std::set<std::string>& values) const {
  if (values.empty())
    throw ValidationError("minimal_common_generalization of empty set");
  auto path_to_root = [&](const std::string& node) {
    std::vector<std::string> path;  // root first
    std::string current = node;
    while (true) {
      path.push_back(current);
      const auto it = parent_.find(current);
      if (it->second == "-") break;
      current = it->second;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  auto it = values.begin();
  if (!contains(*it)) throw LookupError("unknown hierarchy node \"" + *it + "\"");
  std::vector<std::string> common = path_to_root(*it);
  for (++it; it != values.end(); ++it) {
    if (!contains(*it)) throw LookupError("unknown hierarchy node \"" + *it + "\"");
    const std::vector<std::string> path = path_to_root(*it);
    std::size_t shared = 0;
    while (shared < common.size() && shared < path.size() &&
           common[shared] == path[shared]) {
      ++shared;
    }
    common.resize(shared);  // shared >= 1: single root guarantees it
  }
  return common.back();
}

bool GeneralizationHierarchy::covers(const std::string& general,
                                     const std::string& specific) const {
  if (general == kDummyValue || specific == kDummyValue) return false;
  const int general_level = level(general);
  int current_level = level(specific);
  if (general_level > current_level) return false;
  std::string current = specific;
  while (current_level > general_level) {
    current = parent_.at(current);
    --current_level;
  }
  return current == general;
}

}  // namespace textprof
