#pragma once

#include <optional>
#include <utility>

#include "shapebandit/core.hpp"

namespace shapebandit {

// Node {L, M, R} of the binary search tree over arm indices. Nodes are
// computed arithmetically on demand; the tree is never materialized.
struct TreeNode {
  int left = 0;
  int mid = 0;
  int right = 0;

  bool operator==(const TreeNode& other) const = default;
};

inline bool is_leaf(const TreeNode& v) { return v.right == v.left + 1; }

inline TreeNode root_node(int num_arms) {
  if (num_arms < 2) throw DegenerateProblem("search tree needs K >= 2 arms");
  return {1, (1 + num_arms) / 2, num_arms};
}

// (left, right) children, or nullopt for a leaf.
inline std::optional<std::pair<TreeNode, TreeNode>> children(const TreeNode& v) {
  if (is_leaf(v)) return std::nullopt;
  TreeNode left{v.left, (v.left + v.mid) / 2, v.mid};
  TreeNode right{v.mid, (v.mid + v.right) / 2, v.right};
  return std::make_pair(left, right);
}

}  // namespace shapebandit
