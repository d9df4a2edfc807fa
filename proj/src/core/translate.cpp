#include "translate.hpp"

#include "error.hpp"

namespace qprot {
namespace {

Formula hp(const Binder& b) {
  if (auto* in = std::get_if<InputBinder>(&b.node)) return Formula::atom(Literal::chan(in->channel));
  const auto& q = std::get<QualityBinder>(b.node);
  std::vector<Formula> parts;
  for (const auto& s : q.subs) parts.push_back(hp(s));
  return q.guard == Guard::Forall ? and_of(std::move(parts)) : or_of(std::move(parts));
}

void th(const Formula& phi, const Binder& b, std::vector<FlowRule>& out) {
  if (auto* in = std::get_if<InputBinder>(&b.node)) {
    out.push_back({and_of({phi, Formula::atom(Literal::chan(in->channel))}), Literal::invar(in->var)});
    return;
  }
  for (const auto& s : std::get<QualityBinder>(b.node).subs) th(phi, s, out);
}

void walk(const Process& p, const Formula& phi, std::vector<FlowRule>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NilProc>) {
        } else if constexpr (std::is_same_v<T, RestrictProc> || std::is_same_v<T, ReplProc>) {
          walk(*n.body, phi, out);
        } else if constexpr (std::is_same_v<T, ParProc>) {
          walk(*n.left, phi, out);
          walk(*n.right, phi, out);
        } else if constexpr (std::is_same_v<T, BindProc>) {
          out.push_back({phi, Literal::lab(n.label)});
          th(phi, n.binder, out);
          walk(*n.body, and_of({phi, hp(n.binder)}), out);
        } else if constexpr (std::is_same_v<T, OutputProc>) {
          out.push_back({phi, Literal::lab(n.label)});
          out.push_back({phi, Literal::chan(n.channel)});
          walk(*n.body, phi, out);
        } else {
          out.push_back({phi, Literal::lab(n.label)});
          auto x = Formula::atom(Literal::invar(n.scrutinee));
          walk(*n.then_branch, and_of({phi, x}), out);
          walk(*n.else_branch, and_of({phi, Formula::negate(x)}), out);
        }
      },
      p.node);
}

}  // namespace

std::vector<FlowRule> translate(const Process& p) {
  std::vector<FlowRule> out;
  walk(p, Formula::truth(), out);
  return out;
}

RuleMap normalize(const std::vector<FlowRule>& rules) {
  std::map<Literal, std::vector<Formula>> grouped;
  for (const auto& r : rules) grouped[r.consequent].push_back(r.antecedent);
  RuleMap out;
  for (auto& [lit, ants] : grouped) {
    Formula ant = ants.size() == 1 ? ants.front() : Formula::disj(std::move(ants));
    out.emplace(lit, FlowRule{std::move(ant), lit});
  }
  return out;
}

std::size_t literal_count(const std::vector<FlowRule>& rules) {
  std::size_t n = 0;
  for (const auto& r : rules) n += literal_count(r.antecedent) + 1;
  return n;
}

std::size_t literal_count(const RuleMap& rules) {
  std::size_t n = 0;
  for (const auto& [_, r] : rules) n += literal_count(r.antecedent) + 1;
  return n;
}

Formula ConstraintSystem::formula() const {
  std::vector<Formula> parts;
  parts.push_back(Formula::atom(Literal::lab(query)));
  for (const auto& [lit, r] : rules) parts.push_back(Formula::iff(r.antecedent, Formula::atom(lit)));
  return Formula::conj(std::move(parts));
}

std::set<Literal> ConstraintSystem::atoms() const { return qprot::atoms(formula()); }

ConstraintSystem augment(const RuleMap& rules, LabelId query, const std::set<Name>& universe) {
  if (!rules.count(Literal::lab(query)))
    throw Error(ErrorKind::UnknownLabel, "label " + std::to_string(query.value()) + " does not occur in the process");
  ConstraintSystem sys{rules, query, universe};
  for (const auto& c : universe) {
    auto lit = Literal::chan(c);
    auto guess = Formula::atom(Literal::guess(c));
    auto it = sys.rules.find(lit);
    if (it == sys.rules.end()) {
      sys.rules.emplace(lit, FlowRule{guess, lit});
    } else {
      // Keep the guess as the first disjunct, then the original disjuncts.
      std::vector<Formula> ds{guess};
      const auto& ant = it->second.antecedent;
      if (ant.kind() == Formula::Kind::Or) {
        ds.insert(ds.end(), ant.children().begin(), ant.children().end());
      } else {
        ds.push_back(ant);
      }
      it->second.antecedent = Formula::disj(std::move(ds));
    }
  }
  return sys;
}

ConstraintSystem build_system(const Process& p, LabelId query) {
  return augment(normalize(translate(p)), query, names(p));
}

RuleMap implication_view(const ConstraintSystem& sys) {
  RuleMap out;
  for (const auto& [lit, r] : sys.rules) {
    if (lit.kind() != LitKind::Chan || !sys.universe.count(lit.name())) {
      out.emplace(lit, r);
      continue;
    }
    const auto& ant = r.antecedent;
    if (ant.kind() == Formula::Kind::Atom) continue;  // bare guess
    std::vector<Formula> rest;
    for (const auto& d : ant.children())
      if (!(d.kind() == Formula::Kind::Atom && d.literal().kind() == LitKind::Guess)) rest.push_back(d);
    if (rest.empty()) continue;
    Formula f = rest.size() == 1 ? rest.front() : Formula::disj(std::move(rest));
    out.emplace(lit, FlowRule{std::move(f), lit});
  }
  return out;
}

}  // namespace qprot
