#include <doctest.h>

#include <random>

#include "error.hpp"
#include "support/oracle.hpp"
#include "tree.hpp"

using namespace qprot;
using namespace qprot::testing;

namespace {

Formula ch(const char* c) { return Formula::atom(Literal::chan(Name(c))); }
Formula nch(const char* c) { return Formula::negate(ch(c)); }

FlowRule rule(Literal cons, Formula ant) { return FlowRule{std::move(ant), cons}; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::set<Attack> minimal_projections(const Formula& f) {
  std::set<Attack> fam;
  for (const auto& m : truth_table_models(f)) {
    Attack a;
    for (const auto& [lit, v] : m)
      if (v) a.insert(lit.name());
    fam.insert(a);
  }
  return inclusion_minimal(fam);
}

bool leaves_only_channels(const TreeNode& t) {
  if (t.kind == TreeNode::Kind::Leaf) return t.children.empty();
  for (const auto& c : t.children)
    if (!leaves_only_channels(c)) return false;
  return t.kind == TreeNode::Kind::And || t.kind == TreeNode::Kind::Or || t.children.empty();
}

}  // namespace

TEST_CASE("nemid denotation of label 13") {
  auto f = denotation(*load("nemid.vqc"), LabelId(13));
  auto phi = Formula::disj({ch("cert"), Formula::conj({ch("id"), ch("pwd"), ch("otp")})});
  auto published = Formula::disj({ch("login"), Formula::conj({phi, ch("cert")}),
                                  Formula::conj({phi, nch("cert"), ch("id"), ch("pwd"), ch("otp")}),
                                  Formula::conj({ch("id"), ch("pin")})});
  CHECK(f == published);
  CHECK(to_infix(f, true) ==
        "login | ((cert | (id & pwd & otp)) & cert) | ((cert | (id & pwd & otp)) & ~cert & id & pwd & otp) | "
        "(id & pin)");
  auto dnf = Formula::disj({ch("login"), Formula::conj({ch("id"), ch("pin")}),
                            Formula::conj({ch("id"), ch("pwd"), ch("otp")}), ch("cert")});
  CHECK(equivalent(f, dnf));
  REQUIRE(f.kind() == Formula::Kind::Or);
  const auto& third = f.children()[2].children();
  CHECK(std::find(third.begin(), third.end(), nch("cert")) != third.end());
}

TEST_CASE("cyclic rules need local goals") {
  RuleMap rules;
  rules.emplace(Literal::chan(Name("b")), rule(Literal::chan(Name("b")), ch("a")));
  rules.emplace(Literal::chan(Name("a")), rule(Literal::chan(Name("a")), ch("b")));
  rules.emplace(Literal::lab(LabelId(7)), rule(Literal::lab(LabelId(7)), Formula::conj({ch("a"), ch("b")})));
  auto f = synthesize(rules, LabelId(7));
  CHECK(equivalent(f, Formula::disj({ch("a"), ch("b")})));
  CHECK_FALSE(equivalent(f, Formula::conj({Formula::disj({ch("a"), ch("b")}), ch("b")})));
  auto from_process = denotation(*load("cycle.vqc"), LabelId(7));
  CHECK(equivalent(from_process, Formula::disj({ch("a"), ch("b")})));
}

TEST_CASE("base cases and errors") {
  RuleMap rules;
  rules.emplace(Literal::lab(LabelId(1)), rule(Literal::lab(LabelId(1)), Formula::truth()));
  CHECK(synthesize(rules, LabelId(1)).is_true());
  CHECK(kind_of([&] { synthesize(rules, LabelId(2)); }) == ErrorKind::UnknownLabel);
  RuleMap dangling;
  auto x = Formula::atom(Literal::invar(InVarId("x")));
  dangling.emplace(Literal::lab(LabelId(1)), rule(Literal::lab(LabelId(1)), x));
  CHECK(kind_of([&] { synthesize(dangling, LabelId(1)); }) == ErrorKind::MissingRule);
}

TEST_CASE("negated channels without rules become negated leaves") {
  auto f = denotation(*parse_process("1: &exists(c?x, d?z) . 2: case x of some(y): 0 else 3: e!e . 0 end"),
                      LabelId(3));
  CHECK(f == Formula::conj({Formula::disj({ch("c"), ch("d")}), nch("c")}));
}

TEST_CASE("negated channels with rules expand their derivation") {
  // c is produced after a; the else branch needs c missing, hence a missing.
  auto f = denotation(*parse_process("1: a?xa . 2: c!c . 0 | 3: &exists(c?x, d?z) . 4: case x of some(y): 0 else "
                                     "5: e!e . 0 end"),
                      LabelId(5));
  CHECK(f == Formula::conj({Formula::disj({ch("c"), ch("a"), ch("d")}), nch("c"), nch("a")}));
}

TEST_CASE("parse trees") {
  auto leaf = parse_tree(ch("c"));
  CHECK(leaf.kind == TreeNode::Kind::Leaf);
  CHECK(leaf.channel.value() == "c");
  auto two = parse_tree(Formula::disj({ch("a"), Formula::conj({ch("b"), ch("c")})}));
  CHECK(two.kind == TreeNode::Kind::Or);
  REQUIRE(two.children.size() == 2);
  CHECK(two.children[1].kind == TreeNode::Kind::And);
  auto pushed = parse_tree(Formula::negate(Formula::conj({ch("a"), ch("b")})));
  CHECK(pushed.kind == TreeNode::Kind::Or);
  CHECK(pushed.children[0].negated);
  auto folded = parse_tree(Formula::conj({ch("a"), Formula::truth(), Formula::disj({Formula::falsity(), ch("b")})}));
  CHECK(folded.kind == TreeNode::Kind::And);
  CHECK(folded.children.size() == 2);
  CHECK(parse_tree(Formula::disj({ch("a"), Formula::truth()})).kind == TreeNode::Kind::True);
  CHECK(kind_of([] { parse_tree(Formula::atom(Literal::invar(InVarId("x")))); }) == ErrorKind::NonChannelAtom);
  auto f = denotation(*load("nemid.vqc"), LabelId(13));
  auto t = parse_tree(f);
  CHECK(t.kind == TreeNode::Kind::Or);
  CHECK(t.children.size() == 4);
  CHECK(to_formula(t) == f);
  CHECK(leaves_only_channels(t));
}

TEST_CASE("dot rendering") {
  CHECK(to_dot(parse_tree(ch("c")), "t") == "digraph \"t\" {\n  label=\"t\";\n  n0 [label=\"c\", shape=box];\n}\n");
  auto dnf = Formula::disj({Formula::conj({ch("a"), nch("b")}), ch("c")});
  CHECK(to_dot(parse_tree(dnf), "say \"hi\"") ==
        "digraph \"say \\\"hi\\\"\" {\n"
        "  label=\"say \\\"hi\\\"\";\n"
        "  n0 [label=\"OR\", shape=circle];\n"
        "  n1 [label=\"AND\", shape=circle];\n"
        "  n2 [label=\"a\", shape=box];\n"
        "  n3 [label=\"NOT b\", shape=box];\n"
        "  n4 [label=\"c\", shape=box];\n"
        "  n0 -> n1;\n"
        "  n1 -> n2;\n"
        "  n1 -> n3;\n"
        "  n0 -> n4;\n"
        "}\n");
  auto nemid = to_dot(parse_tree(denotation(*load("nemid.vqc"), LabelId(13))), "T13");
  CHECK(nemid == slurp(std::string(QPROT_TEST_DIR) + "/golden/nemid_13.dot"));
}

TEST_CASE("property: denotations mention channels only") {
  ProcessGen gen(707);
  for (int i = 0; i < 200; ++i) {
    auto p = gen.next();
    INFO(pretty(*p));
    for (auto l : labels(*p)) {
      auto f = denotation(*p, l);
      for (const auto& a : atoms(f)) CHECK(a.kind() == LitKind::Chan);
      CHECK(leaves_only_channels(parse_tree(f)));
    }
  }
}

TEST_CASE("self-negating flows separate the two pipelines") {
  // c3 is only produced on the else branch of a case on c3 itself. Through
  // the binder, c4 alone reaches label 5, which the denotation keeps and the
  // bi-implications cannot express (c3 <-> c4 & ~c3).
  auto p = parse_process(
      "1: c2!c2 . 2: c5!c2 . 3: c5!c4 . 4: &exists(c3?x0, c4?x1, c4?x2) . 5: case x0 of some(y3): 6: c0?x4 . 0 "
      "else !7: c1!c1 . 8: c3!c1 . 0 end");
  auto f = denotation(*p, LabelId(5));
  CHECK(equivalent(f, Formula::disj({ch("c3"), ch("c4")})));
  CHECK(minimal_projections(f) == std::set<Attack>{attack_of({"c3"}), attack_of({"c4"})});
  CHECK(inclusion_minimal(attack_sets(build_system(*p, LabelId(5)))) == std::set<Attack>{attack_of({"c3"})});
}

TEST_CASE("property: denotations contain the same minimal attacks as the constraint system") {
  ProcessGen gen(808);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto p = gen.next();
    if (!else_free(*p)) continue;
    ++checked;
    INFO(pretty(*p));
    for (auto l : labels(*p)) {
      auto f = denotation(*p, l);
      auto sys = build_system(*p, l);
      CHECK(minimal_projections(f) == inclusion_minimal(fixpoint_attacks(sys)));
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("property: both quantitative pipelines agree") {
  ProcessGen gen(909);
  std::mt19937 rng(23);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto p = gen.next();
    if (!else_free(*p)) continue;
    ++checked;
    INFO(pretty(*p));
    CostMap m;
    for (const auto& c : names(*p)) m.entries[c] = Rational(std::uniform_int_distribution<int>(0, 5)(rng));
    for (auto l : labels(*p)) {
      auto f = denotation(*p, l);
      std::vector<PricedAttack> direct, via;
      bool d_ok = true, v_ok = true;
      try {
        direct = minimal_attacks(build_system(*p, l), m);
      } catch (const Error&) {
        d_ok = false;
      }
      try {
        via = minimal_models_of_formula(f, m);
      } catch (const Error&) {
        v_ok = false;
      }
      CHECK(d_ok == v_ok);
      REQUIRE(direct.size() == via.size());
      for (std::size_t k = 0; k < direct.size(); ++k) {
        CHECK(direct[k].attack == via[k].attack);
        CHECK(std::get<Rational>(direct[k].cost) == std::get<Rational>(via[k].cost));
      }
    }
  }
  CHECK(checked >= 100);
}
