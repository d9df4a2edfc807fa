#include <doctest.h>

#include "error.hpp"
#include "parser.hpp"
#include "support/oracle.hpp"

using namespace qprot;
using namespace qprot::testing;

TEST_CASE("nemid parses with the expected shape") {
  auto p = load("nemid.vqc");
  auto ls = labels(*p);
  CHECK(ls.size() == 13);
  CHECK(ls.begin()->value() == 1);
  CHECK(ls.rbegin()->value() == 13);
  CHECK(action_count(*p) == 13);
  CHECK(names(*p).size() == 8);
  CHECK(free_names(*p).empty());
}

TEST_CASE("free names exclude restricted ones") {
  auto p = parse_process("(new a) 1: a?x . 2: b!a . 0");
  CHECK(free_names(*p) == std::set<Name>{Name("b")});
  CHECK(names(*p) == std::set<Name>{Name("a"), Name("b")});
}

TEST_CASE("quality binders keep sub-binder order") {
  auto p = parse_process("1: &forall(b?y, a?x, &exists(c?z, d?w)) . 0");
  const auto& bp = std::get<BindProc>(p->node);
  auto vars = bound_vars(bp.binder);
  REQUIRE(vars.size() == 4);
  CHECK(vars[0].value() == "y");
  CHECK(vars[3].value() == "w");
  auto chans = binder_channels(bp.binder);
  CHECK(chans.front().value() == "b");
  CHECK(pretty(bp.binder) == "&forall(b?y, a?x, &exists(c?z, d?w))");
}

TEST_CASE("case binds a term variable usable as payload") {
  auto p = parse_process("1: c?x . 2: case x of some(y): 3: d!y . 0 else 0 end");
  const auto& out = std::get<OutputProc>(
      std::get<CaseProc>(std::get<BindProc>(p->node).body->node).then_branch->node);
  CHECK_FALSE(out.payload.is_const());
  CHECK(out.payload.text() == "y");
}

TEST_CASE("syntax errors carry a source span") {
  try {
    parse_process("1: c?x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 1);
    CHECK(e.span().column == 7);
  }
  CHECK_THROWS_AS(parse_process(""), ParseError);
  CHECK_THROWS_AS(parse_process("1: c?x . 0 |"), ParseError);
  CHECK_THROWS_AS(parse_process("x: c!d . 0"), ParseError);
  try {
    parse_process("0\n  | 2: c!d");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 2);
  }
}

TEST_CASE("validation rejects ill-formed processes") {
  auto kind = [](const char* src) {
    try {
      parse_process(src);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind("1: c!d . 0 | 1: d!c . 0") == ErrorKind::Validation);
  CHECK(kind("1: c?x . 0 | 2: d?x . 0") == ErrorKind::Validation);
  CHECK(kind("1: case x of some(y): 0 else 0 end") == ErrorKind::Validation);
  auto report = validate(*parse_process_unchecked("1: c!d . 0 | 1: d!c . 0"));
  CHECK_FALSE(report.ok());
  CHECK(validate(*load("nemid.vqc")).ok());
}

TEST_CASE("stripping restrictions and replications keeps the actions") {
  auto p = load("imprecision.vqc");
  auto q = strip_restrictions_and_replications(p);
  CHECK(action_count(*q) == action_count(*p));
  CHECK(labels(*q) == labels(*p));
  CHECK(pretty(*q).find("new") == std::string::npos);
  CHECK(pretty(*q).find('!') == pretty(*q).find("c!c") + 1);
}

TEST_CASE("pretty printing round-trips the corpus") {
  for (const char* f : {"nemid.vqc", "imprecision.vqc", "cycle.vqc", "twopath.vqc"}) {
    auto p = load(f);
    auto again = parse_process(pretty(*p));
    CHECK(equal(p, again));
    CHECK(pretty(*again) == pretty(*p));
  }
}

TEST_CASE("property: generated processes are well formed and round-trip") {
  ProcessGen gen(7);
  for (int i = 0; i < 200; ++i) {
    auto p = gen.next();
    INFO(pretty(*p));
    CHECK(validate(*p).ok());
    CHECK(action_count(*p) <= 12);
    auto again = parse_process(pretty(*p));
    CHECK(equal(p, again));
  }
}
