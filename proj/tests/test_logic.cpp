#include <doctest.h>

#include <random>

#include "error.hpp"
#include "logic.hpp"
#include "support/oracle.hpp"

using namespace qprot;
using namespace qprot::testing;

namespace {

Formula ch(const char* c) { return Formula::atom(Literal::chan(Name(c))); }
Formula var(const char* x) { return Formula::atom(Literal::invar(InVarId(x))); }

// Random formulas over a few atoms, all connectives.
Formula random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> d(0, 9);
  const char* names[] = {"a", "b", "c", "d"};
  int r = d(rng);
  if (depth == 0 || r < 3) {
    if (r == 0) return Formula::truth();
    if (r == 1) return Formula::falsity();
    return ch(names[d(rng) % 4]);
  }
  switch (r % 5) {
    case 0:
      return Formula::negate(random_formula(rng, depth - 1));
    case 1:
      return Formula::conj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 2:
      return Formula::disj({random_formula(rng, depth - 1), random_formula(rng, depth - 1),
                            random_formula(rng, depth - 1)});
    case 3:
      return Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default:
      return Formula::iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

bool negation_only_on_atoms(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return f.children()[0].kind() == Formula::Kind::Atom;
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return false;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const auto& g : f.children())
        if (!negation_only_on_atoms(g)) return false;
      return true;
    default:
      return true;
  }
}

}  // namespace

TEST_CASE("literal tags and ordering") {
  CHECK(Literal::chan(Name("c")).tag() == "chan:c");
  CHECK(Literal::guess(Name("c")).tag() == "guess:c");
  CHECK(Literal::invar(InVarId("x")).tag() == "var:x");
  CHECK(Literal::lab(LabelId(7)).tag() == "lab:7");
  SolverOrder lt;
  CHECK(lt(Literal::chan(Name("z")), Literal::guess(Name("a"))));
  CHECK_FALSE(lt(Literal::guess(Name("a")), Literal::lab(LabelId(1))));
  CHECK(lt(Literal::chan(Name("a")), Literal::chan(Name("b"))));
}

TEST_CASE("and_of and or_of elide units and flatten") {
  auto f = and_of({Formula::truth(), ch("a"), and_of({ch("b"), ch("c")})});
  CHECK(f.kind() == Formula::Kind::And);
  CHECK(f.children().size() == 3);
  CHECK(and_of({Formula::truth()}).is_true());
  CHECK(and_of({ch("a"), Formula::truth()}) == ch("a"));
  auto g = or_of({Formula::falsity(), or_of({ch("a"), ch("b")}), ch("c")});
  CHECK(g.children().size() == 3);
  CHECK(or_of({Formula::falsity()}).is_false());
  CHECK_THROWS(Formula::conj({}));
}

TEST_CASE("printing") {
  auto f = Formula::conj({ch("a"), Formula::negate(var("x"))});
  CHECK(to_prefix(f) == "(and chan:a (not var:x))");
  CHECK(to_prefix(Formula::truth()) == "true");
  CHECK(to_infix(Formula::disj({ch("a"), f})) == "chan:a | (chan:a & ~var:x)");
  CHECK(to_infix(Formula::disj({ch("a"), Formula::conj({ch("b"), ch("c")})}), true) == "a | (b & c)");
  CHECK(to_infix(Formula::implies(ch("a"), Formula::falsity()), true) == "a -> ff");
  CHECK(to_infix(Formula::iff(Formula::truth(), ch("a")), true) == "tt <-> a");
}

TEST_CASE("eval needs every atom") {
  auto f = Formula::conj({ch("a"), Formula::negate(ch("b"))});
  Assignment m{{Literal::chan(Name("a")), true}, {Literal::chan(Name("b")), false}};
  CHECK(eval(f, m));
  m[Literal::chan(Name("b"))] = true;
  CHECK_FALSE(eval(f, m));
  Assignment partial{{Literal::chan(Name("a")), true}};
  try {
    eval(f, partial);
    FAIL("expected MissingLiteral");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingLiteral);
  }
}

TEST_CASE("literal counts ignore constants") {
  auto f = Formula::conj({ch("a"), Formula::truth(), Formula::disj({ch("a"), Formula::negate(var("x"))})});
  CHECK(literal_count(f) == 3);
  CHECK(literal_count(Formula::truth()) == 0);
}

TEST_CASE("equivalence") {
  auto a = ch("a"), b = ch("b");
  CHECK(equivalent(Formula::implies(a, b), Formula::disj({Formula::negate(a), b})));
  CHECK(equivalent(Formula::conj({Formula::disj({a, b}), Formula::disj({b, a})}), Formula::disj({a, b})));
  CHECK_FALSE(equivalent(Formula::conj({Formula::disj({a, b}), b}), Formula::disj({a, b})));
  CHECK(equivalent(Formula::truth(), Formula::disj({a, Formula::negate(a)})));
  std::vector<Formula> many;
  for (int i = 0; i < 25; ++i) many.push_back(Formula::atom(Literal::chan(Name("c" + std::to_string(i)))));
  try {
    equivalent(Formula::conj(many), Formula::truth());
    FAIL("expected DomainTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainTooLarge);
  }
}

TEST_CASE("property: nnf preserves meaning and pushes negation to atoms") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto f = random_formula(rng, 4);
    auto n = nnf(f);
    INFO(to_infix(f, true));
    CHECK(negation_only_on_atoms(n));
    CHECK(equivalent(f, n));
    CHECK(atoms(n).size() <= atoms(f).size());
  }
}

TEST_CASE("property: truth-table oracle agrees with eval-based equivalence") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto f = random_formula(rng, 3), g = random_formula(rng, 3);
    auto both = atoms(Formula::conj({f, g}));
    // Compare the model sets of f and g over the union of their atoms.
    auto padded = [&](const Formula& h) {
      std::vector<Formula> taut{h};
      for (const auto& l : both)
        taut.push_back(Formula::disj({Formula::atom(l), Formula::negate(Formula::atom(l))}));
      return truth_table_models(Formula::conj(taut));
    };
    CHECK(equivalent(f, g) == (padded(f) == padded(g)));
  }
}
