#include "cost.hpp"

#include <algorithm>

#include "error.hpp"
#include "text.hpp"

namespace qprot {
namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned e) {
  cpp_int r = 1;
  cpp_int base = 10;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_term(std::string_view s) {
  auto bad = [&]() { return Error(ErrorKind::Config, "malformed number '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto p = trim(s.substr(0, slash)), q = trim(s.substr(slash + 1));
    if (!all_digits(p) || !all_digits(q)) throw bad();
    auto decimal = [](std::string_view d) {
      auto k = d.find_first_not_of('0');
      return cpp_int(k == std::string_view::npos ? std::string("0") : std::string(d.substr(k)));
    };
    cpp_int den = decimal(q);
    if (den == 0) throw bad();
    return Rational(decimal(p), den);
  }
  std::string_view mant = s, exps;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    exps = s.substr(e + 1);
    if (exps.empty()) throw bad();
  }
  std::string_view ip = mant, fp;
  if (auto dot = mant.find('.'); dot != std::string_view::npos) {
    ip = mant.substr(0, dot);
    fp = mant.substr(dot + 1);
    if (!fp.empty() && !all_digits(fp)) throw bad();
  }
  if (ip.empty() && fp.empty()) throw bad();
  if (!ip.empty() && !all_digits(ip)) throw bad();
  long exp = 0;
  if (!exps.empty()) {
    bool neg = false;
    if (exps.front() == '+' || exps.front() == '-') {
      neg = exps.front() == '-';
      exps.remove_prefix(1);
    }
    if (!all_digits(exps) || exps.size() > 6) throw bad();
    exp = std::stol(std::string(exps));
    if (neg) exp = -exp;
  }
  // cpp_int reads a leading zero as an octal prefix.
  auto ds = std::string(ip) + std::string(fp);
  ds.erase(0, std::min(ds.find_first_not_of('0'), ds.size()));
  cpp_int digits(ds.empty() ? "0" : ds);
  exp -= static_cast<long>(fp.size());
  if (exp >= 0) return Rational(digits * pow10(static_cast<unsigned>(exp)));
  return Rational(digits, pow10(static_cast<unsigned>(-exp)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto t = trim(text);
  if (t.empty()) throw Error(ErrorKind::Config, "empty number");
  Rational sum = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= t.size(); ++i) {
    // A '+' right after an exponent marker belongs to the literal.
    bool sep = i == t.size() || (t[i] == '+' && !(i > 0 && (t[i - 1] == 'e' || t[i - 1] == 'E')));
    if (!sep) continue;
    sum += parse_term(trim(t.substr(start, i - start)));
    start = i + 1;
  }
  return sum;
}

std::string format_rational(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

CostStructure CostStructure::numeric() { return CostStructure(); }

CostStructure CostStructure::symbolic(std::shared_ptr<const Lattice> lattice) {
  CostStructure s;
  s.lattice_ = std::move(lattice);
  return s;
}

CostValue CostStructure::bottom() const {
  if (is_numeric()) return Rational(0);
  auto b = lattice_->bottom();
  if (!b) throw Error(ErrorKind::Config, "cost lattice has no bottom element");
  return *b;
}

CostValue CostStructure::plus(const CostValue& a, const CostValue& b) const {
  if (is_numeric()) return std::get<Rational>(a) + std::get<Rational>(b);
  auto r = lattice_->plus(std::get<std::size_t>(a), std::get<std::size_t>(b));
  if (!r)
    throw Error(ErrorKind::Config, "no join for " + lattice_->name(std::get<std::size_t>(a)) + " and " +
                                       lattice_->name(std::get<std::size_t>(b)));
  return *r;
}

bool CostStructure::leq(const CostValue& a, const CostValue& b) const {
  if (is_numeric()) return std::get<Rational>(a) <= std::get<Rational>(b);
  return lattice_->leq(std::get<std::size_t>(a), std::get<std::size_t>(b));
}

std::string CostStructure::format(const CostValue& v) const {
  if (is_numeric()) return format_rational(std::get<Rational>(v));
  return lattice_->name(std::get<std::size_t>(v));
}

CostValue CostStructure::parse_value(std::string_view text) const {
  if (is_numeric()) return parse_rational(text);
  auto t = trim(text);
  auto i = lattice_->index(t);
  if (!i) throw Error(ErrorKind::Config, "unknown cost element '" + std::string(t) + "'");
  return *i;
}

CostValue CostMap::cost(const Name& c) const {
  auto it = entries.find(c);
  return it == entries.end() ? default_value : it->second;
}

CostMap parse_cost_map(std::string_view text, const CostStructure& s) {
  CostMap m;
  m.structure = s;
  bool have_default = false;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::Config, where + "expected 'name = value'");
    auto key = trim(line.substr(0, eq));
    CostValue v;
    try {
      v = s.parse_value(line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, where + e.what());
    }
    if (key == "default") {
      if (have_default) throw Error(ErrorKind::Config, where + "duplicate default");
      m.default_value = v;
      have_default = true;
      continue;
    }
    if (!is_element_name(key)) throw Error(ErrorKind::Config, where + "bad channel name '" + std::string(key) + "'");
    if (!m.entries.emplace(Name(std::string(key)), v).second)
      throw Error(ErrorKind::Config, where + "duplicate entry for '" + std::string(key) + "'");
  }
  if (!have_default) throw Error(ErrorKind::Config, "cost map has no 'default = ...' line");
  return m;
}

CostValue cost_of(const Attack& a, const CostMap& m) {
  CostValue acc = m.structure.bottom();
  for (const auto& c : a) acc = m.structure.plus(acc, m.cost(c));
  return acc;
}

namespace {

// Algorithm-1 style update of the current antichain with a new candidate.
void merge(std::vector<PricedAttack>& front, PricedAttack cand, const CostStructure& s) {
  for (const auto& p : front)
    if (s.lt(p.cost, cand.cost)) return;
  std::erase_if(front, [&](const PricedAttack& p) { return s.lt(cand.cost, p.cost); });
  for (const auto& p : front)
    if (p.attack == cand.attack) return;
  front.push_back(std::move(cand));
}

std::vector<PricedAttack> finish(std::vector<PricedAttack> front) {
  std::vector<PricedAttack> out;
  for (const auto& a : front) {
    bool superset = false;
    for (const auto& b : front)
      if (b.attack.size() < a.attack.size() &&
          std::includes(a.attack.begin(), a.attack.end(), b.attack.begin(), b.attack.end())) {
        superset = true;
        break;
      }
    if (!superset) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const PricedAttack& x, const PricedAttack& y) { return x.attack < y.attack; });
  return out;
}

}  // namespace

std::vector<PricedAttack> minimize(const std::vector<PricedAttack>& candidates, const CostStructure& s) {
  std::vector<PricedAttack> front;
  for (const auto& c : candidates) merge(front, c, s);
  return finish(std::move(front));
}

std::vector<PricedAttack> minimal_attacks(const ConstraintSystem& sys, const CostMap& m, std::size_t* iterations) {
  ModelEnumerator e(sys.formula());
  std::vector<Literal> guesses;
  for (const auto& c : sys.universe) guesses.push_back(Literal::guess(c));
  std::vector<PricedAttack> front;
  bool reachable = false;
  std::size_t iters = 0;
  while (auto model = e.next()) {
    ++iters;
    if (!is_supported(sys, *model)) {
      e.block(*model);
      continue;
    }
    reachable = true;
    Attack a = attack(*model, sys.universe);
    CostValue k = cost_of(a, m);
    e.block(*model, guesses);
    merge(front, {std::move(a), std::move(k)}, m.structure);
  }
  if (iterations) *iterations = iters;
  if (!reachable)
    throw Error(ErrorKind::Unsatisfiable, "label " + std::to_string(sys.query.value()) + " is unreachable");
  return finish(std::move(front));
}

std::vector<PricedAttack> minimal_models_of_formula(const Formula& f, const CostMap& m) {
  for (const auto& a : atoms(f))
    if (a.kind() != LitKind::Chan)
      throw Error(ErrorKind::NonChannelAtom, "formula contains the non-channel literal " + a.tag());
  ModelEnumerator e(f);
  std::vector<PricedAttack> front;
  bool any = false;
  while (auto model = e.next()) {
    any = true;
    Attack a;
    for (const auto& [lit, v] : *model)
      if (v) a.insert(lit.name());
    CostValue k = cost_of(a, m);
    e.block(*model);
    merge(front, {std::move(a), std::move(k)}, m.structure);
  }
  if (!any) throw Error(ErrorKind::Unsatisfiable, "formula is unsatisfiable");
  return finish(std::move(front));
}

}  // namespace qprot
