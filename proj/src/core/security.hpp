#pragma once

// Security levels of program points and the inversion-of-protection check.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "cost.hpp"
#include "lattice.hpp"

namespace qprot {

// Maps costs to security levels. Numeric maps are a base level followed by
// ascending thresholds; each threshold opens a region closed below ("from t",
// k >= t) or open below ("above t", k > t) that extends to the next one.
// Symbolic maps are a total table over the cost lattice.
struct LevelMap {
  struct Region {
    Rational threshold;
    bool strict = false;
    std::size_t level = 0;
  };
  std::shared_ptr<const Lattice> security;
  bool numeric = true;
  std::size_t base_level = 0;
  std::vector<Region> regions;
  std::map<std::size_t, std::size_t> table;
};

std::size_t level(const CostValue& k, const LevelMap& lm);

// Numeric: "base: L", then "from <t>: L" / "above <t>: L" in ascending order.
// Symbolic: "level <cost>: L" for every cost element. Without an explicit
// security lattice the levels form a chain in order of first appearance.
// Monotonicity is checked. Throws Error(Config).
LevelMap parse_level_map(std::string_view text, const CostStructure& costs,
                         std::shared_ptr<const Lattice> security = nullptr);

using SecurityMap = std::map<LabelId, std::size_t>;

// "label <int> : <level>" lines. Throws Error(Config).
SecurityMap parse_security_map(std::string_view text, const Lattice& security);

struct Deployed {
  std::size_t level;
  std::vector<PricedAttack> minimal;
};

// glb of the levels of the cost-minimal attacks. Error(Unsatisfiable) when
// the query is unreachable.
Deployed deployed_protection(const ConstraintSystem& sys, const CostMap& m, const LevelMap& lm);

enum class Verdict { Pass, Inversion, Unreachable };

struct LabelReport {
  LabelId label;
  Verdict verdict = Verdict::Pass;
  std::size_t required = 0;
  std::optional<std::size_t> deployed;
  std::vector<PricedAttack> minimal;
  // Numeric costs only: distance from the cheapest minimal attack to the
  // lowest threshold that grants the required level.
  std::optional<Rational> gap;
};

// Error(UnknownLabel) for labels outside the process, Error(Config) for
// labels without a security level.
std::vector<LabelReport> check_architecture(const Process& p, const std::set<LabelId>& queries, const CostMap& m,
                                            const LevelMap& lm, const SecurityMap& sm);

}  // namespace qprot
