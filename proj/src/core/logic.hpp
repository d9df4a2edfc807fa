#pragma once

// Propositional formulas over channel, guess, input-variable and label
// literals.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"

namespace qprot {

enum class LitKind { Chan, Guess, InVar, Lab };

class Literal {
 public:
  static Literal chan(const Name& n) { return Literal(LitKind::Chan, n.value(), 0); }
  static Literal guess(const Name& n) { return Literal(LitKind::Guess, n.value(), 0); }
  static Literal invar(const InVarId& x) { return Literal(LitKind::InVar, x.value(), 0); }
  static Literal lab(LabelId l) { return Literal(LitKind::Lab, {}, l.value()); }

  LitKind kind() const { return kind_; }
  // Channel name for Chan/Guess, variable name for InVar.
  const std::string& id() const { return id_; }
  Name name() const { return Name(id_); }
  LabelId label() const { return LabelId(label_); }

  // Canonical tag: chan:c, guess:c, var:x, lab:7.
  std::string tag() const;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;

 private:
  Literal(LitKind k, std::string id, std::uint32_t l) : kind_(k), id_(std::move(id)), label_(l) {}
  LitKind kind_;
  std::string id_;
  std::uint32_t label_;
};

// Orders literals by tag with guess literals last.
struct SolverOrder {
  bool operator()(const Literal& a, const Literal& b) const;
};

class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies, Iff };

  Formula();  // True
  static Formula truth();
  static Formula falsity();
  static Formula atom(Literal l);
  static Formula negate(Formula f);
  // And/Or with at least one operand.
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);

  Kind kind() const;
  const Literal& literal() const;  // Atom only
  const std::vector<Formula>& children() const;

  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Total ordering used for canonical sorting; structural.
bool formula_less(const Formula& a, const Formula& b);

// Conjunction that elides True operands and flattens nested And.
Formula and_of(std::vector<Formula> fs);
// Disjunction that elides False operands and flattens nested Or.
Formula or_of(std::vector<Formula> fs);

using Assignment = std::map<Literal, bool>;

// Throws Error(MissingLiteral) when an atom is outside the assignment.
bool eval(const Formula& f, const Assignment& a);

Formula nnf(const Formula& f);
std::set<Literal> atoms(const Formula& f);
// Number of literal occurrences (True/False are not counted).
std::size_t literal_count(const Formula& f);

inline constexpr std::size_t kEquivalenceAtomCap = 24;

// Exhaustive truth-table comparison; Error(DomainTooLarge) above the cap.
bool equivalent(const Formula& f, const Formula& g);

// Prefix form: (and chan:a (not var:x)), true, false.
std::string to_prefix(const Formula& f);
// Infix form for humans. With bare_channels, channel literals print as their
// name only.
std::string to_infix(const Formula& f, bool bare_channels = false);

}  // namespace qprot
