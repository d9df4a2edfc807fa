#include <doctest.h>

#include "error.hpp"
#include "security.hpp"
#include "support/oracle.hpp"

using namespace qprot;
using namespace qprot::testing;

namespace {

struct Nemid {
  ProcessPtr p = load("nemid.vqc");
  CostMap costs = parse_cost_map(slurp(data_path("nemid.costs")), CostStructure::numeric());
  LevelMap levels = parse_level_map(slurp(data_path("nemid.levels")), CostStructure::numeric());
  SecurityMap sec = parse_security_map(slurp(data_path("nemid.security")), *levels.security);
};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("threshold level map") {
  Nemid n;
  const auto& sigma = *n.levels.security;
  CHECK(sigma.size() == 2);
  CHECK(sigma.name(level(Rational(15000), n.levels)) == "unrestricted");
  CHECK(sigma.name(level(parse_rational("4.4e15 + 1e6"), n.levels)) == "restricted");
  CHECK(sigma.name(level(parse_rational("4.4e15 + 1e6") - 1, n.levels)) == "unrestricted");
  auto open = parse_level_map("base: low\nabove 10: high", CostStructure::numeric());
  CHECK(open.security->name(level(Rational(10), open)) == "low");
  CHECK(open.security->name(level(Rational(21, 2), open)) == "high");
}

TEST_CASE("level map errors") {
  auto num = CostStructure::numeric();
  CHECK(kind_of([&] { parse_level_map("", num); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_level_map("from 1: a", num); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_level_map("base: a\nfrom 5: b\nfrom 3: c", num); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_level_map("base: a\nfrom -1: b", num); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_level_map("base: a\nwhen 1: b", num); }) == ErrorKind::Config);
  auto sigma = std::make_shared<const Lattice>(parse_lattice("elements: lo, hi\nleq: lo < hi"));
  // Decreasing levels are not monotone.
  CHECK(kind_of([&] { parse_level_map("base: hi\nfrom 3: lo", num, sigma); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_level_map("base: lo\nfrom 3: mid", num, sigma); }) == ErrorKind::Config);
  auto bad = std::make_shared<const Lattice>(parse_lattice("elements: a, b"));
  CHECK(kind_of([&] { parse_level_map("base: a", num, bad); }) == ErrorKind::Config);
}

TEST_CASE("symbolic level map") {
  auto k = std::make_shared<const Lattice>(parse_lattice(slurp(data_path("effort.lattice"))));
  auto s = CostStructure::symbolic(k);
  auto lm = parse_level_map("level cheap: public\nlevel cpu: guarded\nlevel enrg: guarded\nlevel expensive: secret", s);
  CHECK(lm.security->name(level(*k->index("cpu"), lm)) == "guarded");
  CHECK(kind_of([&] { parse_level_map("level cheap: public\nlevel cpu: guarded", s); }) == ErrorKind::Config);
  CHECK(kind_of([&] {
          parse_level_map("level cheap: b\nlevel cpu: a\nlevel enrg: b\nlevel expensive: b", s);
        }) == ErrorKind::Config);
}

TEST_CASE("security map parsing") {
  Nemid n;
  CHECK(n.sec.size() == 2);
  CHECK(n.levels.security->name(n.sec.at(LabelId(13))) == "restricted");
  CHECK(kind_of([&] { parse_security_map("label x: restricted", *n.levels.security); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_security_map("label 1: secret", *n.levels.security); }) == ErrorKind::Config);
  CHECK(kind_of([&] { parse_security_map("label 1: restricted\nlabel 1: restricted", *n.levels.security); }) ==
        ErrorKind::Config);
}

TEST_CASE("nemid architecture check") {
  Nemid n;
  auto reps = check_architecture(*n.p, {LabelId(12), LabelId(13)}, n.costs, n.levels, n.sec);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].verdict == Verdict::Pass);
  CHECK_FALSE(reps[0].gap.has_value());
  CHECK(reps[1].verdict == Verdict::Inversion);
  CHECK(n.levels.security->name(*reps[1].deployed) == "unrestricted");
  REQUIRE(reps[1].gap.has_value());
  CHECK(*reps[1].gap == parse_rational("4.4e15 + 1e6") - 15000);
  CHECK(check_architecture(*n.p, {}, n.costs, n.levels, n.sec).empty());
  CHECK(kind_of([&] { check_architecture(*n.p, {LabelId(99)}, n.costs, n.levels, n.sec); }) ==
        ErrorKind::UnknownLabel);
  CHECK(kind_of([&] { check_architecture(*n.p, {LabelId(3)}, n.costs, n.levels, n.sec); }) == ErrorKind::Config);
}

TEST_CASE("pricier credentials remove the inversion") {
  Nemid n;
  n.costs.entries[Name("pin")] = parse_rational("5e15");
  n.costs.entries[Name("login")] = parse_rational("5e15");
  n.costs.entries[Name("id")] = parse_rational("5e15");
  auto reps = check_architecture(*n.p, {LabelId(13)}, n.costs, n.levels, n.sec);
  CHECK(reps[0].verdict == Verdict::Pass);
}

TEST_CASE("unreachable labels are reported, not failed") {
  auto p = parse_process("1: c?x . 2: case x of some(y): 0 else 3: d!d . 0 end");
  CostMap m;
  auto lm = parse_level_map("base: low\nfrom 1: high", CostStructure::numeric());
  auto sm = parse_security_map("label 3: high", *lm.security);
  auto reps = check_architecture(*p, {LabelId(3)}, m, lm, sm);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].verdict == Verdict::Unreachable);
  CHECK_FALSE(reps[0].deployed.has_value());
}

TEST_CASE("deployed protection is the meet over minimal attacks") {
  auto k = std::make_shared<const Lattice>(parse_lattice(slurp(data_path("effort.lattice"))));
  auto s = CostStructure::symbolic(k);
  auto m = parse_cost_map(slurp(data_path("twopath.costs")), s);
  auto sigma = std::make_shared<const Lattice>(
      parse_lattice("elements: none, x, y, both\nleq: none < x < both\nleq: none < y < both"));
  auto lm = parse_level_map("level cheap: none\nlevel cpu: x\nlevel enrg: y\nlevel expensive: both", s, sigma);
  auto d = deployed_protection(build_system(*load("twopath.vqc"), LabelId(6)), m, lm);
  CHECK(d.minimal.size() == 2);
  CHECK(sigma->name(d.level) == "none");
}
