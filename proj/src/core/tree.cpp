#include "tree.hpp"

#include <set>

#include "error.hpp"

namespace qprot {
namespace {

// Folding constructors: absorb constants, flatten, drop repeated children.
Formula fold(Formula::Kind k, const std::vector<Formula>& fs) {
  const bool conj = k == Formula::Kind::And;
  std::vector<Formula> out;
  auto add = [&](const Formula& f) {
    for (const auto& g : out)
      if (g == f) return;
    out.push_back(f);
  };
  for (const auto& f : fs) {
    if (conj ? f.is_false() : f.is_true()) return f;
    if (conj ? f.is_true() : f.is_false()) continue;
    if (f.kind() == k)
      for (const auto& g : f.children()) add(g);
    else
      add(f);
  }
  if (out.empty()) return conj ? Formula::truth() : Formula::falsity();
  if (out.size() == 1) return out.front();
  return conj ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
}

Formula fand(const std::vector<Formula>& fs) { return fold(Formula::Kind::And, fs); }
Formula f_or(const std::vector<Formula>& fs) { return fold(Formula::Kind::Or, fs); }

// Signed channel goals on the current path.
struct Goals {
  std::set<std::string> pos, neg;
};

class Synth {
 public:
  explicit Synth(const RuleMap& rules) : rules_(rules) {}

  Formula den(const Formula& f, const Goals& d) const {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return f;
      case Formula::Kind::Atom:
        return den_atom(f.literal(), d);
      case Formula::Kind::Not:
        return neg(f.children()[0], d);
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& g : f.children()) kids.push_back(den(g, d));
        return f.kind() == Formula::Kind::And ? fand(kids) : f_or(kids);
      }
      case Formula::Kind::Implies:
        return f_or({neg(f.children()[0], d), den(f.children()[1], d)});
      case Formula::Kind::Iff:
        return den(Formula::conj({Formula::implies(f.children()[0], f.children()[1]),
                                  Formula::implies(f.children()[1], f.children()[0])}),
                   d);
    }
    return f;
  }

  Formula neg(const Formula& f, const Goals& d) const {
    switch (f.kind()) {
      case Formula::Kind::True:
        return Formula::falsity();
      case Formula::Kind::False:
        return Formula::truth();
      case Formula::Kind::Atom:
        return neg_atom(f.literal(), d);
      case Formula::Kind::Not:
        return den(f.children()[0], d);
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& g : f.children()) kids.push_back(neg(g, d));
        return f.kind() == Formula::Kind::And ? f_or(kids) : fand(kids);
      }
      case Formula::Kind::Implies:
        return fand({den(f.children()[0], d), neg(f.children()[1], d)});
      case Formula::Kind::Iff:
        return neg(Formula::conj({Formula::implies(f.children()[0], f.children()[1]),
                                  Formula::implies(f.children()[1], f.children()[0])}),
                   d);
    }
    return f;
  }

 private:
  const FlowRule* rule(const Literal& l) const {
    auto it = rules_.find(l);
    return it == rules_.end() ? nullptr : &it->second;
  }

  Formula den_atom(const Literal& l, const Goals& d) const {
    switch (l.kind()) {
      case LitKind::Chan: {
        auto leaf = Formula::atom(l);
        const auto* r = rule(l);
        if (d.pos.count(l.id()) || !r) return leaf;
        Goals inner = d;
        inner.pos.insert(l.id());
        return f_or({leaf, den(r->antecedent, inner)});
      }
      case LitKind::InVar: {
        const auto* r = rule(l);
        if (!r) throw Error(ErrorKind::MissingRule, "no rule defines " + l.tag());
        return den(r->antecedent, d);
      }
      case LitKind::Lab: {
        const auto* r = rule(l);
        if (!r) throw Error(ErrorKind::MissingRule, "no rule defines " + l.tag());
        return den(r->antecedent, d);
      }
      case LitKind::Guess:
        break;
    }
    throw Error(ErrorKind::NonChannelAtom, "guess literal " + l.tag() + " in the implication view");
  }

  Formula neg_atom(const Literal& l, const Goals& d) const {
    switch (l.kind()) {
      case LitKind::Chan: {
        auto leaf = Formula::negate(Formula::atom(l));
        const auto* r = rule(l);
        if (d.neg.count(l.id()) || !r) return leaf;
        Goals inner = d;
        inner.neg.insert(l.id());
        return fand({leaf, neg(r->antecedent, inner)});
      }
      case LitKind::InVar:
      case LitKind::Lab: {
        const auto* r = rule(l);
        if (!r) throw Error(ErrorKind::MissingRule, "no rule defines " + l.tag());
        return neg(r->antecedent, d);
      }
      case LitKind::Guess:
        break;
    }
    throw Error(ErrorKind::NonChannelAtom, "guess literal " + l.tag() + " in the implication view");
  }

  const RuleMap& rules_;
};

TreeNode leaf(const Literal& l, bool negated) {
  if (l.kind() != LitKind::Chan) throw Error(ErrorKind::NonChannelAtom, "tree leaf " + l.tag() + " is not a channel");
  TreeNode t;
  t.kind = TreeNode::Kind::Leaf;
  t.channel = l.name();
  t.negated = negated;
  return t;
}

TreeNode build(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return TreeNode{};
    case Formula::Kind::False: {
      TreeNode t;
      t.kind = TreeNode::Kind::False;
      return t;
    }
    case Formula::Kind::Atom:
      return leaf(f.literal(), false);
    case Formula::Kind::Not:
      return leaf(f.children()[0].literal(), true);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      TreeNode t;
      t.kind = f.kind() == Formula::Kind::And ? TreeNode::Kind::And : TreeNode::Kind::Or;
      for (const auto& g : f.children()) t.children.push_back(build(g));
      return t;
    }
    default:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "formula is not in negation normal form");
}

// Rebuilds with folding so constants only survive at the root.
Formula refold(const Formula& f) {
  if (f.kind() != Formula::Kind::And && f.kind() != Formula::Kind::Or) return f;
  std::vector<Formula> kids;
  for (const auto& g : f.children()) kids.push_back(refold(g));
  return fold(f.kind(), kids);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void emit(const TreeNode& t, std::size_t& next, std::string& nodes, std::string& edges) {
  std::size_t id = next++;
  auto me = "n" + std::to_string(id);
  switch (t.kind) {
    case TreeNode::Kind::And:
    case TreeNode::Kind::Or:
      nodes += "  " + me + " [label=\"" + (t.kind == TreeNode::Kind::And ? "AND" : "OR") + "\", shape=circle];\n";
      break;
    case TreeNode::Kind::Leaf:
      nodes += "  " + me + " [label=" + quote((t.negated ? "NOT " : "") + t.channel.value()) + ", shape=box];\n";
      break;
    case TreeNode::Kind::True:
    case TreeNode::Kind::False:
      nodes += "  " + me + " [label=\"" + (t.kind == TreeNode::Kind::True ? "TRUE" : "FALSE") + "\", shape=box];\n";
      break;
  }
  for (const auto& c : t.children) {
    edges += "  " + me + " -> n" + std::to_string(next) + ";\n";
    emit(c, next, nodes, edges);
  }
}

}  // namespace

Formula synthesize(const RuleMap& rules, LabelId query) {
  auto it = rules.find(Literal::lab(query));
  if (it == rules.end())
    throw Error(ErrorKind::UnknownLabel, "no rule defines label " + std::to_string(query.value()));
  return Synth(rules).den(it->second.antecedent, Goals{});
}

Formula denotation(const Process& p, LabelId query) {
  return synthesize(implication_view(build_system(p, query)), query);
}

TreeNode parse_tree(const Formula& f) {
  for (const auto& a : atoms(f))
    if (a.kind() != LitKind::Chan) throw Error(ErrorKind::NonChannelAtom, "tree leaf " + a.tag() + " is not a channel");
  return build(refold(nnf(f)));
}

Formula to_formula(const TreeNode& t) {
  switch (t.kind) {
    case TreeNode::Kind::True:
      return Formula::truth();
    case TreeNode::Kind::False:
      return Formula::falsity();
    case TreeNode::Kind::Leaf: {
      auto a = Formula::atom(Literal::chan(t.channel));
      return t.negated ? Formula::negate(a) : a;
    }
    case TreeNode::Kind::And:
    case TreeNode::Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : t.children) kids.push_back(to_formula(c));
      return t.kind == TreeNode::Kind::And ? Formula::conj(kids) : Formula::disj(kids);
    }
  }
  return Formula::truth();
}

std::string to_dot(const TreeNode& t, std::string_view title) {
  std::string nodes, edges;
  std::size_t next = 0;
  emit(t, next, nodes, edges);
  return "digraph " + quote(title) + " {\n  label=" + quote(title) + ";\n" + nodes + edges + "}\n";
}

}  // namespace qprot
