#include "solver.hpp"

#include <algorithm>
#include <cstdint>

namespace qprot {
namespace {

// Literal encoding: 2*var for the positive phase, 2*var+1 for the negative.
using Lit = std::uint32_t;
inline Lit pos(std::uint32_t v) { return 2 * v; }
inline Lit neg(Lit l) { return l ^ 1u; }
inline std::uint32_t var_of(Lit l) { return l >> 1; }

constexpr std::int8_t kUnset = -1;

class Dpll {
 public:
  std::uint32_t new_var() {
    value_.push_back(kUnset);
    watches_.emplace_back();
    watches_.emplace_back();
    return static_cast<std::uint32_t>(value_.size() - 1);
  }
  std::size_t num_vars() const { return value_.size(); }

  void add_clause(std::vector<Lit> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (c[i + 1] == neg(c[i]) && var_of(c[i]) == var_of(c[i + 1])) return;  // tautology
    if (c.empty()) {
      trivially_unsat_ = true;
      return;
    }
    if (c.size() == 1) {
      units_.push_back(c[0]);
      return;
    }
    auto idx = static_cast<std::uint32_t>(clauses_.size());
    watches_[c[0]].push_back(idx);
    watches_[c[1]].push_back(idx);
    clauses_.push_back(std::move(c));
  }

  // Variables decided in this order (false phase first); the rest follow.
  void set_order(std::vector<std::uint32_t> order) { order_ = std::move(order); }

  bool solve() {
    reset();
    if (trivially_unsat_) return false;
    for (Lit u : units_) {
      if (lit_value(u) == 0) return false;
      if (lit_value(u) == kUnset) enqueue(u);
    }
    if (!propagate()) return false;
    std::vector<Decision> decisions;
    std::size_t next_order = 0;
    for (;;) {
      std::uint32_t v = 0;
      bool found = false;
      for (; next_order < order_.size(); ++next_order)
        if (value_[order_[next_order]] == kUnset) {
          v = order_[next_order];
          found = true;
          break;
        }
      if (!found) {
        for (std::uint32_t w = 0; w < value_.size(); ++w)
          if (value_[w] == kUnset) {
            v = w;
            found = true;
            break;
          }
      }
      if (!found) return true;
      decisions.push_back({neg(pos(v)), false, trail_.size(), next_order});
      enqueue(decisions.back().lit);
      while (!propagate()) {
        while (!decisions.empty() && decisions.back().flipped) {
          undo_to(decisions.back().trail_pos);
          decisions.pop_back();
        }
        if (decisions.empty()) return false;
        auto& d = decisions.back();
        undo_to(d.trail_pos);
        d.lit = neg(d.lit);
        d.flipped = true;
        next_order = d.order_pos;
        enqueue(d.lit);
      }
    }
  }

  bool var_true(std::uint32_t v) const { return value_[v] == 1; }

 private:
  struct Decision {
    Lit lit;
    bool flipped;
    std::size_t trail_pos;
    std::size_t order_pos;
  };

  std::int8_t lit_value(Lit l) const {
    auto v = value_[var_of(l)];
    if (v == kUnset) return kUnset;
    return static_cast<std::int8_t>((l & 1u) ? !v : v);
  }

  void enqueue(Lit l) {
    value_[var_of(l)] = (l & 1u) ? 0 : 1;
    trail_.push_back(l);
  }

  void undo_to(std::size_t pos) {
    while (trail_.size() > pos) {
      value_[var_of(trail_.back())] = kUnset;
      trail_.pop_back();
    }
    qhead_ = std::min(qhead_, pos);
  }

  void reset() {
    undo_to(0);
    qhead_ = 0;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      Lit false_lit = neg(trail_[qhead_++]);
      auto& ws = watches_[false_lit];
      std::size_t i = 0, j = 0;
      bool conflict = false;
      while (i < ws.size()) {
        auto ci = ws[i++];
        auto& c = clauses_[ci];
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == 1) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k)
          if (lit_value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        if (moved) continue;
        ws[j++] = ci;
        if (lit_value(c[0]) == 0) {
          conflict = true;
          while (i < ws.size()) ws[j++] = ws[i++];
          break;
        }
        enqueue(c[0]);
      }
      ws.resize(j);
      if (conflict) return false;
    }
    return true;
  }

  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<Lit> units_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  std::vector<std::uint32_t> order_;
  bool trivially_unsat_ = false;
};

}  // namespace

struct ModelEnumerator::Impl {
  Dpll dpll;
  std::vector<Literal> atoms;
  std::map<Literal, std::uint32_t> var;
  Lit true_lit = 0;

  Lit encode(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
        return true_lit;
      case K::False:
        return neg(true_lit);
      case K::Atom:
        return pos(var.at(f.literal()));
      case K::Not:
        return neg(encode(f.children()[0]));
      case K::And:
      case K::Or: {
        std::vector<Lit> ls;
        for (const auto& c : f.children()) ls.push_back(encode(c));
        // Or is encoded as the negation of And over negated operands.
        bool is_or = f.kind() == K::Or;
        if (is_or)
          for (auto& l : ls) l = neg(l);
        Lit v = pos(dpll.new_var());
        std::vector<Lit> big{v};
        for (Lit l : ls) {
          dpll.add_clause({neg(v), l});
          big.push_back(neg(l));
        }
        dpll.add_clause(std::move(big));
        return is_or ? neg(v) : v;
      }
      case K::Implies: {
        Lit a = encode(f.children()[0]);
        Lit b = encode(f.children()[1]);
        Lit v = pos(dpll.new_var());
        dpll.add_clause({neg(v), neg(a), b});
        dpll.add_clause({v, a});
        dpll.add_clause({v, neg(b)});
        return v;
      }
      case K::Iff: {
        Lit a = encode(f.children()[0]);
        Lit b = encode(f.children()[1]);
        Lit v = pos(dpll.new_var());
        dpll.add_clause({neg(v), neg(a), b});
        dpll.add_clause({neg(v), a, neg(b)});
        dpll.add_clause({v, a, b});
        dpll.add_clause({v, neg(a), neg(b)});
        return v;
      }
    }
    return true_lit;
  }

  void assert_top(const Formula& f) {
    if (f.kind() == Formula::Kind::And) {
      for (const auto& c : f.children()) assert_top(c);
      return;
    }
    dpll.add_clause({encode(f)});
  }
};

ModelEnumerator::ModelEnumerator(const Formula& f) : impl_(std::make_unique<Impl>()) {
  auto as = qprot::atoms(f);
  impl_->atoms.assign(as.begin(), as.end());
  std::sort(impl_->atoms.begin(), impl_->atoms.end(), SolverOrder{});
  std::vector<std::uint32_t> order;
  for (const auto& a : impl_->atoms) {
    auto v = impl_->dpll.new_var();
    impl_->var.emplace(a, v);
    order.push_back(v);
  }
  impl_->true_lit = pos(impl_->dpll.new_var());
  impl_->dpll.add_clause({impl_->true_lit});
  impl_->dpll.set_order(std::move(order));
  impl_->assert_top(f);
}

ModelEnumerator::~ModelEnumerator() = default;

std::optional<Model> ModelEnumerator::next() {
  if (!impl_->dpll.solve()) return std::nullopt;
  Model m;
  for (const auto& a : impl_->atoms) m.emplace(a, impl_->dpll.var_true(impl_->var.at(a)));
  return m;
}

void ModelEnumerator::block(const Model& m, const std::vector<Literal>& over) {
  std::vector<Lit> clause;
  for (const auto& l : over) {
    auto it = impl_->var.find(l);
    if (it == impl_->var.end()) continue;
    clause.push_back(m.at(l) ? neg(pos(it->second)) : pos(it->second));
  }
  impl_->dpll.add_clause(std::move(clause));
}

void ModelEnumerator::block(const Model& m) { block(m, impl_->atoms); }

const std::vector<Literal>& ModelEnumerator::atoms() const { return impl_->atoms; }

std::optional<Model> sat(const Formula& f) { return ModelEnumerator(f).next(); }

std::vector<Model> all_models(const Formula& f) {
  ModelEnumerator e(f);
  std::vector<Model> out;
  while (auto m = e.next()) {
    e.block(*m);
    out.push_back(std::move(*m));
  }
  return out;
}

Attack attack(const Model& m, const std::set<Name>& universe) {
  Attack out;
  for (const auto& c : universe) {
    auto it = m.find(Literal::guess(c));
    if (it != m.end() && it->second) out.insert(c);
  }
  return out;
}

namespace {

bool eval_split(const Formula& f, bool positive, const Model& m, const std::map<Literal, bool>& cur) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom: {
      auto it = cur.find(f.literal());
      if (positive && it != cur.end()) return it->second;
      auto mt = m.find(f.literal());
      return mt != m.end() && mt->second;
    }
    case K::Not:
      return !eval_split(f.children()[0], !positive, m, cur);
    case K::And:
      for (const auto& c : f.children())
        if (!eval_split(c, positive, m, cur)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (eval_split(c, positive, m, cur)) return true;
      return false;
    case K::Implies:
      return !eval_split(f.children()[0], !positive, m, cur) || eval_split(f.children()[1], positive, m, cur);
    case K::Iff: {
      // Mixed polarity: read both sides from the model.
      return eval(f.children()[0], m) == eval(f.children()[1], m);
    }
  }
  return false;
}

}  // namespace

bool is_supported(const ConstraintSystem& sys, const Model& m) {
  std::map<Literal, bool> cur;
  for (const auto& [lit, _] : sys.rules) cur[lit] = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lit, r] : sys.rules) {
      if (cur[lit]) continue;
      if (eval_split(r.antecedent, true, m, cur)) {
        cur[lit] = true;
        changed = true;
      }
    }
  }
  for (const auto& [lit, v] : cur) {
    auto it = m.find(lit);
    if (it != m.end() && it->second != v) return false;
  }
  return true;
}

std::set<Attack> attack_sets(const ConstraintSystem& sys) {
  std::set<Attack> out;
  for (const auto& m : all_models(sys.formula()))
    if (is_supported(sys, m)) out.insert(attack(m, sys.universe));
  return out;
}

std::set<Attack> minimal_by_inclusion(const std::set<Attack>& family) {
  std::set<Attack> out;
  for (const auto& a : family) {
    bool dominated = false;
    for (const auto& b : family)
      if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end())) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(a);
  }
  return out;
}

}  // namespace qprot
