#pragma once

// DPLL over a Tseitin encoding, ALL-SAT by blocking clauses, and attack
// extraction from models of an augmented constraint system.

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "logic.hpp"
#include "translate.hpp"

namespace qprot {

using Model = Assignment;
using Attack = std::set<Name>;

// Incremental enumeration: each call to next() returns a fresh model over the
// formula's atoms; block() excludes assignments agreeing with a model on the
// given literals.
class ModelEnumerator {
 public:
  explicit ModelEnumerator(const Formula& f);
  ~ModelEnumerator();
  ModelEnumerator(const ModelEnumerator&) = delete;
  ModelEnumerator& operator=(const ModelEnumerator&) = delete;

  std::optional<Model> next();
  void block(const Model& m, const std::vector<Literal>& over);
  void block(const Model& m);  // over every atom
  const std::vector<Literal>& atoms() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<Model> sat(const Formula& f);
std::vector<Model> all_models(const Formula& f);

// Channels of the universe whose guess literal is true in m.
Attack attack(const Model& m, const std::set<Name>& universe);

// True when every derived literal of m is forced by its guesses: m equals the
// least fixpoint of the rules with negated atoms read from m. Rules the model
// merely tolerates, such as mutually supporting channels, fail this test.
bool is_supported(const ConstraintSystem& sys, const Model& m);

// Attacks of all supported models, deduplicated.
std::set<Attack> attack_sets(const ConstraintSystem& sys);

// Elements with no strict subset in the family.
std::set<Attack> minimal_by_inclusion(const std::set<Attack>& family);

}  // namespace qprot
