#include "security.hpp"

#include "error.hpp"
#include "text.hpp"

namespace qprot {

std::size_t level(const CostValue& k, const LevelMap& lm) {
  if (!lm.numeric) return lm.table.at(std::get<std::size_t>(k));
  const auto& v = std::get<Rational>(k);
  std::size_t out = lm.base_level;
  for (const auto& r : lm.regions) {
    bool inside = r.strict ? v > r.threshold : v >= r.threshold;
    if (!inside) break;
    out = r.level;
  }
  return out;
}

namespace {

std::shared_ptr<const Lattice> chain_of(const std::vector<std::string>& names) {
  LatticeSpec spec;
  spec.elements = names;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) spec.leq.emplace_back(names[i], names[i + 1]);
  return std::make_shared<const Lattice>(spec);
}

}  // namespace

LevelMap parse_level_map(std::string_view text, const CostStructure& costs, std::shared_ptr<const Lattice> security) {
  if (security) {
    auto rep = validate_lattice(*security);
    if (!rep.ok) throw Error(ErrorKind::Config, "security lattice: " + rep.violation);
  }
  struct Entry {
    int line;
    std::string kind;  // base, from, above, level
    std::string arg;
    std::string level;
  };
  std::vector<Entry> entries;
  std::vector<std::string> seen;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    auto colon = line.rfind(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::Config, where + "expected '...: level'");
    auto head = trim(line.substr(0, colon));
    auto lvl = trim(line.substr(colon + 1));
    if (!is_element_name(lvl)) throw Error(ErrorKind::Config, where + "bad level name '" + std::string(lvl) + "'");
    auto sp = head.find_first_of(" \t");
    std::string kind(head.substr(0, sp));
    std::string arg = sp == std::string_view::npos ? "" : std::string(trim(head.substr(sp)));
    if (kind != "base" && kind != "from" && kind != "above" && kind != "level")
      throw Error(ErrorKind::Config, where + "unknown entry '" + kind + "'");
    if ((kind == "base") != arg.empty()) throw Error(ErrorKind::Config, where + "malformed '" + kind + "' entry");
    entries.push_back({lineno, kind, arg, std::string(lvl)});
    if (std::find(seen.begin(), seen.end(), lvl) == seen.end()) seen.emplace_back(lvl);
  }
  if (entries.empty()) throw Error(ErrorKind::Config, "level map is empty");
  LevelMap lm;
  lm.security = security ? security : chain_of(seen);
  lm.numeric = costs.is_numeric();
  const Lattice& sigma = *lm.security;
  auto lookup = [&](const Entry& e) {
    auto i = sigma.index(e.level);
    if (!i)
      throw Error(ErrorKind::Config, "line " + std::to_string(e.line) + ": unknown security level '" + e.level + "'");
    return *i;
  };
  if (lm.numeric) {
    bool have_base = false;
    for (const auto& e : entries) {
      auto where = "line " + std::to_string(e.line) + ": ";
      if (e.kind == "level") throw Error(ErrorKind::Config, where + "'level' entries need a symbolic cost lattice");
      if (e.kind == "base") {
        if (have_base || !lm.regions.empty()) throw Error(ErrorKind::Config, where + "'base' must come first, once");
        lm.base_level = lookup(e);
        have_base = true;
        continue;
      }
      if (!have_base) throw Error(ErrorKind::Config, where + "'base' must come first");
      LevelMap::Region r;
      try {
        r.threshold = parse_rational(e.arg);
      } catch (const Error& err) {
        throw Error(ErrorKind::Config, where + err.what());
      }
      r.strict = e.kind == "above";
      r.level = lookup(e);
      if (!lm.regions.empty()) {
        const auto& prev = lm.regions.back();
        bool ascending = r.threshold > prev.threshold || (r.threshold == prev.threshold && r.strict && !prev.strict);
        if (!ascending) throw Error(ErrorKind::Config, where + "thresholds must be strictly ascending");
      }
      std::size_t below = lm.regions.empty() ? lm.base_level : lm.regions.back().level;
      if (!sigma.leq(below, r.level)) throw Error(ErrorKind::Config, where + "level map is not monotone");
      lm.regions.push_back(std::move(r));
    }
    if (!have_base) throw Error(ErrorKind::Config, "level map has no 'base' entry");
    return lm;
  }
  const Lattice& k = costs.lattice();
  for (const auto& e : entries) {
    auto where = "line " + std::to_string(e.line) + ": ";
    if (e.kind != "level") throw Error(ErrorKind::Config, where + "symbolic level maps use 'level <cost>: <level>'");
    auto c = k.index(e.arg);
    if (!c) throw Error(ErrorKind::Config, where + "unknown cost element '" + e.arg + "'");
    if (!lm.table.emplace(*c, lookup(e)).second)
      throw Error(ErrorKind::Config, where + "duplicate entry for '" + e.arg + "'");
  }
  for (std::size_t c = 0; c < k.size(); ++c)
    if (!lm.table.count(c)) throw Error(ErrorKind::Config, "no level for cost element '" + k.name(c) + "'");
  for (std::size_t a = 0; a < k.size(); ++a)
    for (std::size_t b = 0; b < k.size(); ++b)
      if (k.leq(a, b) && !sigma.leq(lm.table[a], lm.table[b]))
        throw Error(ErrorKind::Config, "level map is not monotone: " + k.name(a) + " <= " + k.name(b));
  return lm;
}

SecurityMap parse_security_map(std::string_view text, const Lattice& security) {
  SecurityMap sm;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    auto colon = line.find(':');
    auto head = colon == std::string_view::npos ? line : trim(line.substr(0, colon));
    if (colon == std::string_view::npos || head.substr(0, 5) != "label")
      throw Error(ErrorKind::Config, where + "expected 'label <int> : <level>'");
    auto num = trim(head.substr(5));
    if (num.empty() || num.size() > 9 || num.find_first_not_of("0123456789") != std::string_view::npos)
      throw Error(ErrorKind::Config, where + "bad label '" + std::string(num) + "'");
    auto lvl = trim(line.substr(colon + 1));
    auto i = security.index(lvl);
    if (!i) throw Error(ErrorKind::Config, where + "unknown security level '" + std::string(lvl) + "'");
    if (!sm.emplace(LabelId(static_cast<std::uint32_t>(std::stoul(std::string(num)))), *i).second)
      throw Error(ErrorKind::Config, where + "duplicate label " + std::string(num));
  }
  return sm;
}

Deployed deployed_protection(const ConstraintSystem& sys, const CostMap& m, const LevelMap& lm) {
  Deployed d;
  d.minimal = minimal_attacks(sys, m);
  std::optional<std::size_t> acc;
  for (const auto& pa : d.minimal) {
    auto l = level(pa.cost, lm);
    if (!acc) {
      acc = l;
      continue;
    }
    auto g = lm.security->glb(*acc, l);
    if (!g) throw Error(ErrorKind::Config, "security lattice lacks a glb");
    acc = *g;
  }
  d.level = *acc;
  return d;
}

std::vector<LabelReport> check_architecture(const Process& p, const std::set<LabelId>& queries, const CostMap& m,
                                            const LevelMap& lm, const SecurityMap& sm) {
  auto known = labels(p);
  for (auto l : queries) {
    if (!known.count(l))
      throw Error(ErrorKind::UnknownLabel, "label " + std::to_string(l.value()) + " does not occur in the process");
    if (!sm.count(l)) throw Error(ErrorKind::Config, "no security level for label " + std::to_string(l.value()));
  }
  auto rules = normalize(translate(p));
  auto universe = names(p);
  std::vector<LabelReport> out;
  for (auto l : queries) {
    LabelReport rep;
    rep.label = l;
    rep.required = sm.at(l);
    auto sys = augment(rules, l, universe);
    Deployed d;
    try {
      d = deployed_protection(sys, m, lm);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsatisfiable) throw;
      rep.verdict = Verdict::Unreachable;
      out.push_back(std::move(rep));
      continue;
    }
    rep.deployed = d.level;
    rep.minimal = d.minimal;
    rep.verdict = lm.security->leq(rep.required, d.level) ? Verdict::Pass : Verdict::Inversion;
    if (rep.verdict == Verdict::Inversion && lm.numeric) {
      Rational cheapest = std::get<Rational>(d.minimal.front().cost);
      for (const auto& pa : d.minimal) cheapest = std::min(cheapest, std::get<Rational>(pa.cost));
      for (const auto& r : lm.regions)
        if (lm.security->leq(rep.required, r.level)) {
          rep.gap = r.threshold - cheapest;
          break;
        }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace qprot
