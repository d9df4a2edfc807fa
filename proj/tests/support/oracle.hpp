#pragma once

// Test-only generators and reference implementations. Nothing here calls the
// solver: the oracles work by exhaustive enumeration and direct fixpoints.

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ast.hpp"
#include "cost.hpp"
#include "logic.hpp"
#include "parser.hpp"
#include "solver.hpp"
#include "translate.hpp"

namespace qprot::testing {

inline std::string data_path(const std::string& file) { return std::string(QPROT_DATA_DIR) + "/" + file; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ProcessPtr load(const std::string& file) { return parse_process(slurp(data_path(file))); }

// Random well-formed processes over channels c0..c{channels-1}.
class ProcessGen {
 public:
  ProcessGen(std::uint64_t seed, int max_actions = 12, int channels = 6)
      : rng_(seed), max_actions_(max_actions), channels_(channels) {}

  ProcessPtr next() {
    budget_ = max_actions_;
    label_ = 1;
    var_ = 0;
    auto p = proc({}, {}, 0);
    // At least one action so that there is a label to query.
    if (labels(*p).empty()) p = par(p, output(LabelId(label_++), chan(), const_term(chan().value()), nil()));
    return p;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  Name chan() { return Name("c" + std::to_string(pick(channels_))); }

  Binder binder(int depth, std::vector<std::string>& xs) {
    if (depth < 2 && pick(100) < 30) {
      std::vector<Binder> subs;
      int k = 2 + pick(2);
      for (int i = 0; i < k; ++i) subs.push_back(binder(depth + 1, xs));
      return quality(pick(2) ? Guard::Forall : Guard::Exists, std::move(subs));
    }
    auto x = "x" + std::to_string(var_++);
    xs.push_back(x);
    return input(chan().value(), x);
  }

  ProcessPtr proc(std::vector<std::string> xs, std::vector<std::string> ys, int depth) {
    if (budget_ <= 0 || depth > 7) return nil();
    int r = pick(100);
    if (r < 8) return nil();
    if (r < 20) return par(proc(xs, ys, depth + 1), proc(xs, ys, depth + 1));
    if (r < 25) return restrict_(chan(), proc(xs, ys, depth + 1));
    if (r < 30) return repl(proc(xs, ys, depth + 1));
    --budget_;
    LabelId l(label_++);
    if (r < 58) {
      auto b = binder(0, xs);
      return bind(l, std::move(b), proc(xs, ys, depth + 1));
    }
    if (r < 80 || xs.empty()) {
      Term t = !ys.empty() && pick(2) ? var_term(ys[pick(static_cast<int>(ys.size()))]) : const_term(chan().value());
      return output(l, chan(), std::move(t), proc(xs, ys, depth + 1));
    }
    auto x = xs[pick(static_cast<int>(xs.size()))];
    auto y = "y" + std::to_string(var_++);
    auto then_ys = ys;
    then_ys.push_back(y);
    auto t = proc(xs, then_ys, depth + 1);
    auto e = proc(xs, ys, depth + 1);
    return case_(l, InVarId(x), TermVarId(y), t, e);
  }

  std::mt19937_64 rng_;
  int max_actions_, channels_;
  int budget_ = 0;
  std::uint32_t label_ = 1;
  int var_ = 0;
};

// True when no else branch carries an action. Negative literals then never
// reach a rule, so flows cannot depend on the absence of their own output.
inline bool else_free(const Process& p) {
  bool ok = true;
  std::function<void(const Process&)> walk = [&](const Process& q) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, CaseProc>) {
            if (!labels(*node.else_branch).empty()) ok = false;
            walk(*node.then_branch);
          } else if constexpr (std::is_same_v<T, ParProc>) {
            walk(*node.left);
            walk(*node.right);
          } else if constexpr (!std::is_same_v<T, NilProc>) {
            walk(*node.body);
          }
        },
        q.node);
  };
  walk(p);
  return ok;
}

// Every assignment over the atoms of f that satisfies it, by truth table.
inline std::vector<Assignment> truth_table_models(const Formula& f) {
  auto as = atoms(f);
  std::vector<Literal> v(as.begin(), as.end());
  std::vector<Assignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << v.size()); ++bits) {
    Assignment a;
    for (std::size_t i = 0; i < v.size(); ++i) a[v[i]] = (bits >> i) & 1u;
    if (eval(f, a)) out.push_back(std::move(a));
  }
  return out;
}

// Attacks of the augmented system computed without a solver: for every set
// of guesses and every valuation of the negatively used atoms, derive the
// least fixpoint of the rules and keep the guesses when the fixpoint is
// consistent with the valuation and reaches the query.
inline std::set<Attack> fixpoint_attacks(const ConstraintSystem& sys) {
  std::set<Literal> negative;
  std::function<void(const Formula&, bool)> scan = [&](const Formula& f, bool pos) {
    if (f.kind() == Formula::Kind::Atom) {
      if (!pos) negative.insert(f.literal());
      return;
    }
    if (f.kind() == Formula::Kind::Not) return scan(f.children()[0], !pos);
    for (const auto& g : f.children()) scan(g, pos);
  };
  for (const auto& [lit, rule] : sys.rules) scan(rule.antecedent, true);
  std::vector<Literal> neg(negative.begin(), negative.end());
  std::vector<Name> uni(sys.universe.begin(), sys.universe.end());

  // Positive atoms read from the current approximation, negative ones from
  // the fixed valuation.
  std::function<bool(const Formula&, const std::set<Literal>&, const std::set<Literal>&, bool)> holds =
      [&](const Formula& f, const std::set<Literal>& cur, const std::set<Literal>& val, bool pos) -> bool {
    switch (f.kind()) {
      case Formula::Kind::True:
        return true;
      case Formula::Kind::False:
        return false;
      case Formula::Kind::Atom:
        return pos ? cur.count(f.literal()) > 0 : val.count(f.literal()) > 0;
      case Formula::Kind::Not:
        return !holds(f.children()[0], cur, val, !pos);
      case Formula::Kind::And: {
        bool all = true;
        for (const auto& g : f.children()) all = all && holds(g, cur, val, pos);
        return all;
      }
      case Formula::Kind::Or: {
        bool any = false;
        for (const auto& g : f.children()) any = any || holds(g, cur, val, pos);
        return any;
      }
      default:
        break;
    }
    throw std::logic_error("unexpected connective in rules");
  };

  std::set<Attack> out;
  for (std::uint64_t gbits = 0; gbits < (std::uint64_t{1} << uni.size()); ++gbits) {
    std::set<Literal> guesses;
    Attack att;
    for (std::size_t i = 0; i < uni.size(); ++i)
      if ((gbits >> i) & 1u) {
        guesses.insert(Literal::guess(uni[i]));
        att.insert(uni[i]);
      }
    for (std::uint64_t nbits = 0; nbits < (std::uint64_t{1} << neg.size()); ++nbits) {
      std::set<Literal> val;
      for (std::size_t i = 0; i < neg.size(); ++i)
        if ((nbits >> i) & 1u) val.insert(neg[i]);
      std::set<Literal> cur = guesses;
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [lit, rule] : sys.rules)
          if (!cur.count(lit) && holds(rule.antecedent, cur, val, true)) {
            cur.insert(lit);
            changed = true;
          }
      }
      bool consistent = true;
      for (const auto& n : neg)
        if (cur.count(n) != val.count(n)) consistent = false;
      if (consistent && cur.count(Literal::lab(sys.query))) {
        out.insert(att);
        break;
      }
    }
  }
  return out;
}

// Cost-minimal attacks by sorting the whole family.
inline std::vector<PricedAttack> brute_minimal(const std::set<Attack>& family, const CostMap& m) {
  std::vector<PricedAttack> priced;
  for (const auto& a : family) priced.push_back({a, cost_of(a, m)});
  std::vector<PricedAttack> keep;
  for (const auto& p : priced) {
    bool dominated = false;
    for (const auto& q : priced)
      if (m.structure.lt(q.cost, p.cost)) dominated = true;
    if (!dominated) keep.push_back(p);
  }
  std::vector<PricedAttack> out;
  for (const auto& p : keep) {
    bool super = false;
    for (const auto& q : keep)
      if (q.attack.size() < p.attack.size() &&
          std::includes(p.attack.begin(), p.attack.end(), q.attack.begin(), q.attack.end()))
        super = true;
    if (!super) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.attack < b.attack; });
  return out;
}

inline std::set<Attack> inclusion_minimal(const std::set<Attack>& fam) {
  std::set<Attack> out;
  for (const auto& a : fam) {
    bool super = false;
    for (const auto& b : fam)
      if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end())) super = true;
    if (!super) out.insert(a);
  }
  return out;
}

inline Attack attack_of(std::initializer_list<const char*> names) {
  Attack a;
  for (const char* n : names) a.insert(Name(n));
  return a;
}

}  // namespace qprot::testing
