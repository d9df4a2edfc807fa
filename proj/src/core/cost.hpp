#pragma once

// Cost structures (numeric or finite symbolic lattices), cost maps and the
// search for cost-minimal attacks.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lattice.hpp"
#include "solver.hpp"
#include "translate.hpp"

namespace qprot {

using Rational = boost::multiprecision::cpp_rational;

// Exact parse of "12", "0.5", "4.4e15", "3/4" and sums "a + b". Negative
// values are rejected. Throws Error(Config).
Rational parse_rational(std::string_view text);
// Integers print as digits, everything else as "p/q".
std::string format_rational(const Rational& r);

// A numeric value or the index of a lattice element.
using CostValue = std::variant<Rational, std::size_t>;

class CostStructure {
 public:
  static CostStructure numeric();
  static CostStructure symbolic(std::shared_ptr<const Lattice> lattice);

  bool is_numeric() const { return lattice_ == nullptr; }
  const Lattice& lattice() const { return *lattice_; }
  std::shared_ptr<const Lattice> lattice_ptr() const { return lattice_; }

  CostValue bottom() const;
  CostValue plus(const CostValue& a, const CostValue& b) const;
  bool leq(const CostValue& a, const CostValue& b) const;
  bool lt(const CostValue& a, const CostValue& b) const { return leq(a, b) && !leq(b, a); }

  std::string format(const CostValue& v) const;
  CostValue parse_value(std::string_view text) const;  // Error(Config)

 private:
  std::shared_ptr<const Lattice> lattice_;
};

struct CostMap {
  CostStructure structure = CostStructure::numeric();
  CostValue default_value = Rational(0);
  std::map<Name, CostValue> entries;

  CostValue cost(const Name& c) const;
};

// "default = v" followed by "name = v" lines; the default is mandatory.
CostMap parse_cost_map(std::string_view text, const CostStructure& s);

struct PricedAttack {
  Attack attack;
  CostValue cost;
};

CostValue cost_of(const Attack& a, const CostMap& m);

// Keeps the cost-minimal candidates (an antichain under the cost order) and,
// among those, drops strict supersets of other survivors. Output is sorted by
// attack.
std::vector<PricedAttack> minimize(const std::vector<PricedAttack>& candidates, const CostStructure& s);

// Cost-minimal attacks of the supported models of the system. Each model
// found is priced and merged into the current antichain; its guess
// projection is then blocked. Throws Error(Unsatisfiable) when the query
// label is unreachable. When iterations is given it receives the number of
// solver calls that produced a model.
std::vector<PricedAttack> minimal_attacks(const ConstraintSystem& sys, const CostMap& m,
                                          std::size_t* iterations = nullptr);

// The same search over a formula whose atoms are all channel literals; the
// attack of a model is its set of true channels. Throws Error(NonChannelAtom)
// or Error(Unsatisfiable).
std::vector<PricedAttack> minimal_models_of_formula(const Formula& f, const CostMap& m);

}  // namespace qprot
