#pragma once

// Attack-tree synthesis by backward chaining over the implication view of a
// constraint system, and DOT rendering of the resulting parse tree.

#include <string>
#include <string_view>
#include <vector>

#include "logic.hpp"
#include "translate.hpp"

namespace qprot {

// The denotation of the query label: a formula over channel literals only.
// Goals are tracked per recursion path. Throws Error(UnknownLabel) when no
// rule defines the label and Error(MissingRule) for an undefined input
// variable.
Formula synthesize(const RuleMap& rules, LabelId query);

// build_system + implication_view + synthesize.
Formula denotation(const Process& p, LabelId query);

struct TreeNode {
  enum class Kind { And, Or, Leaf, True, False };
  Kind kind = Kind::True;
  Name channel;           // Leaf only
  bool negated = false;   // Leaf only
  std::vector<TreeNode> children;

  bool operator==(const TreeNode&) const = default;
};

// Parse tree of the negation normal form of f with constants folded away.
// True/False nodes only appear as the root of a constant formula. Throws
// Error(NonChannelAtom).
TreeNode parse_tree(const Formula& f);

// Back to a formula; inverse of parse_tree up to folding.
Formula to_formula(const TreeNode& t);

// Graphviz digraph; node ids n0, n1, ... in preorder.
std::string to_dot(const TreeNode& t, std::string_view title);

}  // namespace qprot
