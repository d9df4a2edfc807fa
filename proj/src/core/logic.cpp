#include "logic.hpp"

#include <algorithm>

#include "error.hpp"

namespace qprot {

std::string Literal::tag() const {
  switch (kind_) {
    case LitKind::Chan:
      return "chan:" + id_;
    case LitKind::Guess:
      return "guess:" + id_;
    case LitKind::InVar:
      return "var:" + id_;
    case LitKind::Lab:
      return "lab:" + std::to_string(label_);
  }
  return {};
}

bool SolverOrder::operator()(const Literal& a, const Literal& b) const {
  bool ga = a.kind() == LitKind::Guess, gb = b.kind() == LitKind::Guess;
  if (ga != gb) return gb;
  return a.tag() < b.tag();
}

struct Formula::Node {
  Kind kind;
  Literal lit = Literal::lab(LabelId(0));
  std::vector<Formula> kids;
};


Formula::Formula() : Formula(truth()) {}

Formula Formula::truth() {
  static const auto n = std::make_shared<const Node>(Node{Kind::True, Literal::lab(LabelId(0)), {}});
  return Formula(n);
}

Formula Formula::falsity() {
  static const auto n = std::make_shared<const Node>(Node{Kind::False, Literal::lab(LabelId(0)), {}});
  return Formula(n);
}

Formula Formula::atom(Literal l) { return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(l), {}})); }

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, Literal::lab(LabelId(0)), {std::move(f)}}));
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "empty conjunction");
  return Formula(std::make_shared<const Node>(Node{Kind::And, Literal::lab(LabelId(0)), std::move(fs)}));
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "empty disjunction");
  return Formula(std::make_shared<const Node>(Node{Kind::Or, Literal::lab(LabelId(0)), std::move(fs)}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Implies, Literal::lab(LabelId(0)), {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Iff, Literal::lab(LabelId(0)), {std::move(lhs), std::move(rhs)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Literal& Formula::literal() const {
  if (node_->kind != Kind::Atom) throw Error(ErrorKind::InvalidArgument, "literal() on a non-atom");
  return node_->lit;
}

const std::vector<Formula>& Formula::children() const { return node_->kids; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::Atom) return a.literal() == b.literal();
  return a.children() == b.children();
}

bool formula_less(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.kind() == Formula::Kind::Atom) return a.literal() < b.literal();
  const auto& x = a.children();
  const auto& y = b.children();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), formula_less);
}

Formula and_of(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.is_true()) continue;
    if (f.kind() == Formula::Kind::And) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return Formula::truth();
  if (flat.size() == 1) return flat.front();
  return Formula::conj(std::move(flat));
}

Formula or_of(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.is_false()) continue;
    if (f.kind() == Formula::Kind::Or) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return Formula::falsity();
  if (flat.size() == 1) return flat.front();
  return Formula::disj(std::move(flat));
}

bool eval(const Formula& f, const Assignment& a) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom: {
      auto it = a.find(f.literal());
      if (it == a.end()) throw Error(ErrorKind::MissingLiteral, "assignment lacks literal " + f.literal().tag());
      return it->second;
    }
    case K::Not:
      return !eval(f.children()[0], a);
    case K::And:
      for (const auto& c : f.children())
        if (!eval(c, a)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (eval(c, a)) return true;
      return false;
    case K::Implies:
      return !eval(f.children()[0], a) || eval(f.children()[1], a);
    case K::Iff:
      return eval(f.children()[0], a) == eval(f.children()[1], a);
  }
  return false;
}

namespace {

Formula nnf_signed(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return negated ? Formula::falsity() : f;
    case K::False:
      return negated ? Formula::truth() : f;
    case K::Atom:
      return negated ? Formula::negate(f) : f;
    case K::Not:
      return nnf_signed(f.children()[0], !negated);
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf_signed(c, negated));
      bool as_and = (f.kind() == K::And) != negated;
      return as_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case K::Implies: {
      // a -> b  ==  ~a | b
      auto lhs = nnf_signed(f.children()[0], !negated);
      auto rhs = nnf_signed(f.children()[1], negated);
      return negated ? Formula::conj({nnf_signed(f.children()[0], false), rhs})
                     : Formula::disj({lhs, rhs});
    }
    case K::Iff: {
      const auto& a = f.children()[0];
      const auto& b = f.children()[1];
      // a <-> b == (a & b) | (~a & ~b);  ~(a <-> b) == (a & ~b) | (~a & b)
      if (!negated)
        return Formula::disj({Formula::conj({nnf_signed(a, false), nnf_signed(b, false)}),
                              Formula::conj({nnf_signed(a, true), nnf_signed(b, true)})});
      return Formula::disj({Formula::conj({nnf_signed(a, false), nnf_signed(b, true)}),
                            Formula::conj({nnf_signed(a, true), nnf_signed(b, false)})});
    }
  }
  return f;
}

void collect_atoms(const Formula& f, std::set<Literal>& out) {
  if (f.kind() == Formula::Kind::Atom) {
    out.insert(f.literal());
    return;
  }
  for (const auto& c : f.children()) collect_atoms(c, out);
}

// Index-based evaluation for exhaustive enumeration.
struct Compiled {
  Formula::Kind kind;
  int atom = -1;
  std::vector<Compiled> kids;

  bool eval(std::uint64_t bits) const {
    using K = Formula::Kind;
    switch (kind) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Atom:
        return (bits >> atom) & 1u;
      case K::Not:
        return !kids[0].eval(bits);
      case K::And:
        for (const auto& c : kids)
          if (!c.eval(bits)) return false;
        return true;
      case K::Or:
        for (const auto& c : kids)
          if (c.eval(bits)) return true;
        return false;
      case K::Implies:
        return !kids[0].eval(bits) || kids[1].eval(bits);
      case K::Iff:
        return kids[0].eval(bits) == kids[1].eval(bits);
    }
    return false;
  }
};

Compiled compile(const Formula& f, const std::map<Literal, int>& index) {
  Compiled c{f.kind(), -1, {}};
  if (f.kind() == Formula::Kind::Atom) {
    c.atom = index.at(f.literal());
  } else {
    for (const auto& k : f.children()) c.kids.push_back(compile(k, index));
  }
  return c;
}

void prefix(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      out += "true";
      return;
    case K::False:
      out += "false";
      return;
    case K::Atom:
      out += f.literal().tag();
      return;
    default:
      break;
  }
  static const char* names[] = {"", "", "", "not", "and", "or", "implies", "iff"};
  out += '(';
  out += names[static_cast<int>(f.kind())];
  for (const auto& c : f.children()) {
    out += ' ';
    prefix(c, out);
  }
  out += ')';
}

void infix(const Formula& f, bool bare, std::string& out) {
  using K = Formula::Kind;
  auto child = [&](const Formula& c) {
    bool compound = c.kind() == K::And || c.kind() == K::Or || c.kind() == K::Implies || c.kind() == K::Iff;
    if (compound) out += '(';
    infix(c, bare, out);
    if (compound) out += ')';
  };
  switch (f.kind()) {
    case K::True:
      out += "tt";
      return;
    case K::False:
      out += "ff";
      return;
    case K::Atom:
      out += (bare && f.literal().kind() == LitKind::Chan) ? f.literal().id() : f.literal().tag();
      return;
    case K::Not:
      out += '~';
      child(f.children()[0]);
      return;
    case K::And:
    case K::Or: {
      const char* op = f.kind() == K::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += op;
        child(f.children()[i]);
      }
      return;
    }
    case K::Implies:
    case K::Iff:
      child(f.children()[0]);
      out += f.kind() == K::Implies ? " -> " : " <-> ";
      child(f.children()[1]);
      return;
  }
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_signed(f, false); }

std::set<Literal> atoms(const Formula& f) {
  std::set<Literal> out;
  collect_atoms(f, out);
  return out;
}

std::size_t literal_count(const Formula& f) {
  if (f.kind() == Formula::Kind::Atom) return 1;
  std::size_t n = 0;
  for (const auto& c : f.children()) n += literal_count(c);
  return n;
}

bool equivalent(const Formula& f, const Formula& g) {
  auto dom = atoms(f);
  auto more = atoms(g);
  dom.insert(more.begin(), more.end());
  if (dom.size() > kEquivalenceAtomCap)
    throw Error(ErrorKind::DomainTooLarge, "equivalence check over " + std::to_string(dom.size()) +
                                               " atoms exceeds the cap of " + std::to_string(kEquivalenceAtomCap));
  std::map<Literal, int> index;
  for (const auto& l : dom) index.emplace(l, static_cast<int>(index.size()));
  auto cf = compile(f, index);
  auto cg = compile(g, index);
  const std::uint64_t n = std::uint64_t{1} << dom.size();
  for (std::uint64_t bits = 0; bits < n; ++bits)
    if (cf.eval(bits) != cg.eval(bits)) return false;
  return true;
}

std::string to_prefix(const Formula& f) {
  std::string out;
  prefix(f, out);
  return out;
}

std::string to_infix(const Formula& f, bool bare_channels) {
  std::string out;
  infix(f, bare_channels, out);
  return out;
}

}  // namespace qprot
