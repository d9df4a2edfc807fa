#pragma once

// Flow constraints generated from processes, attacker augmentation and the
// implication view used by tree synthesis.

#include <map>
#include <set>
#include <vector>

#include "ast.hpp"
#include "logic.hpp"

namespace qprot {

struct FlowRule {
  Formula antecedent;
  Literal consequent;  // Chan, InVar or Lab
};

using RuleMap = std::map<Literal, FlowRule>;

// Rules in generation order, starting from the hypothesis tt.
std::vector<FlowRule> translate(const Process& p);

// Merges rules sharing a consequent into one disjunction, in source order.
RuleMap normalize(const std::vector<FlowRule>& rules);

// Antecedent literals plus one per consequent.
std::size_t literal_count(const std::vector<FlowRule>& rules);
std::size_t literal_count(const RuleMap& rules);

// Rules are read as bi-implications; lab(query) is asserted as a fact.
struct ConstraintSystem {
  RuleMap rules;
  LabelId query;
  std::set<Name> universe;

  Formula formula() const;
  std::set<Literal> atoms() const;
};

// Throws Error(UnknownLabel) when no rule defines lab(query).
ConstraintSystem augment(const RuleMap& rules, LabelId query, const std::set<Name>& universe);

// translate + normalize + augment over names(p).
ConstraintSystem build_system(const Process& p, LabelId query);

// Iff read as Implies, guess disjuncts removed; rules that were a bare guess
// are dropped.
RuleMap implication_view(const ConstraintSystem& sys);

}  // namespace qprot
