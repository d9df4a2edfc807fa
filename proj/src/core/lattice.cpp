#include "lattice.hpp"

#include "error.hpp"
#include "text.hpp"

namespace qprot {

Lattice::Lattice(const LatticeSpec& spec) : names_(spec.elements) {
  if (names_.empty()) throw Error(ErrorKind::Config, "lattice has no elements");
  const std::size_t n = names_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names_[i] == names_[j]) throw Error(ErrorKind::Config, "duplicate lattice element '" + names_[i] + "'");
  auto need = [&](const std::string& s) {
    auto i = index(s);
    if (!i) throw Error(ErrorKind::Config, "unknown lattice element '" + s + "'");
    return *i;
  };
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : spec.leq) leq_[need(a)][need(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  if (!spec.join.empty()) {
    join_.assign(n, std::vector<std::optional<std::size_t>>(n));
    for (const auto& e : spec.join) {
      auto a = need(e.a), b = need(e.b), r = need(e.result);
      join_[a][b] = r;
    }
  }
  if (spec.bottom) declared_bottom_ = need(*spec.bottom);
  if (spec.top) declared_top_ = need(*spec.top);
  for (std::size_t i = 0; i < n; ++i) {
    bool least = true, greatest = true;
    for (std::size_t j = 0; j < n; ++j) {
      least = least && leq_[i][j];
      greatest = greatest && leq_[j][i];
    }
    if (least && !bottom_) bottom_ = i;
    if (greatest && !top_) top_ = i;
  }
  if (declared_bottom_) bottom_ = declared_bottom_;
  if (declared_top_) top_ = declared_top_;
}

std::optional<std::size_t> Lattice::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Lattice::lub(std::size_t a, std::size_t b) const {
  std::optional<std::size_t> best;
  for (std::size_t u = 0; u < size(); ++u) {
    if (!leq_[a][u] || !leq_[b][u]) continue;
    bool least = true;
    for (std::size_t v = 0; v < size() && least; ++v)
      if (leq_[a][v] && leq_[b][v] && !leq_[u][v]) least = false;
    if (least) {
      if (best && *best != u) return std::nullopt;  // not antisymmetric
      best = u;
    }
  }
  return best;
}

std::optional<std::size_t> Lattice::glb(std::size_t a, std::size_t b) const {
  std::optional<std::size_t> best;
  for (std::size_t u = 0; u < size(); ++u) {
    if (!leq_[u][a] || !leq_[u][b]) continue;
    bool greatest = true;
    for (std::size_t v = 0; v < size() && greatest; ++v)
      if (leq_[v][a] && leq_[v][b] && !leq_[v][u]) greatest = false;
    if (greatest) {
      if (best && *best != u) return std::nullopt;
      best = u;
    }
  }
  return best;
}

std::optional<std::size_t> Lattice::plus(std::size_t a, std::size_t b) const {
  if (!join_.empty()) {
    if (join_[a][b]) return join_[a][b];
    if (join_[b][a]) return join_[b][a];
  }
  return lub(a, b);
}

LatticeReport validate_lattice(const Lattice& l) {
  const std::size_t n = l.size();
  auto fail = [](std::string msg) { return LatticeReport{false, std::move(msg)}; };
  auto nm = [&](std::size_t i) { return l.name(i); };

  for (std::size_t a = 0; a < n; ++a) {
    if (!l.leq(a, a)) return fail("order not reflexive at " + nm(a));
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && l.leq(a, b) && l.leq(b, a))
        return fail("order not antisymmetric: " + nm(a) + " and " + nm(b));
      for (std::size_t c = 0; c < n; ++c)
        if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c))
          return fail("order not transitive: " + nm(a) + ", " + nm(b) + ", " + nm(c));
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      if (!l.lub(a, b)) return fail("lub missing for " + nm(a) + " and " + nm(b));
      if (!l.glb(a, b)) return fail("glb missing for " + nm(a) + " and " + nm(b));
    }
  if (auto d = l.declared_bottom())
    for (std::size_t k = 0; k < n; ++k)
      if (!l.leq(*d, k)) return fail("declared bottom " + nm(*d) + " is not least");
  if (auto d = l.declared_top())
    for (std::size_t k = 0; k < n; ++k)
      if (!l.leq(k, *d)) return fail("declared top " + nm(*d) + " is not greatest");
  auto bot = l.bottom();
  if (!bot) return fail("no least element");

  // Every pair has a lub past this point, so plus is total.
  auto p = [&](std::size_t a, std::size_t b) { return *l.plus(a, b); };
  for (std::size_t k = 0; k < n; ++k)
    if (p(*bot, k) != k || p(k, *bot) != k)
      return fail("⊥ not identity: " + nm(*bot) + " + " + nm(k) + " = " + nm(p(*bot, k)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (p(a, b) != p(b, a)) return fail("⊕ not commutative at " + nm(a) + ", " + nm(b));
      for (std::size_t c = 0; c < n; ++c)
        if (p(p(a, b), c) != p(a, p(b, c)))
          return fail("⊕ not associative at " + nm(a) + ", " + nm(b) + ", " + nm(c));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!l.leq(a, p(a, b)) || !l.leq(b, p(a, b)))
        return fail("⊕ not extensive at " + nm(a) + ", " + nm(b));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      if (!l.leq(a, a2)) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (!l.leq(p(a, b), p(a2, b)))
          return fail("⊕ not monotone at " + nm(a) + " <= " + nm(a2) + " with " + nm(b));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p(a, b) != *l.lub(a, b)) return fail("⊕ differs from lub at " + nm(a) + ", " + nm(b));
  return {};
}

LatticeSpec parse_lattice(std::string_view text) {
  LatticeSpec spec;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected 'key: value'");
    auto key = trim(line.substr(0, colon));
    auto val = trim(line.substr(colon + 1));
    auto where = "line " + std::to_string(lineno) + ": ";
    if (key == "elements") {
      for (auto e : split(val, ',')) {
        auto t = trim(e);
        if (!is_element_name(t)) throw Error(ErrorKind::Config, where + "bad element name '" + std::string(t) + "'");
        spec.elements.emplace_back(t);
      }
    } else if (key == "bottom" || key == "top") {
      if (!is_element_name(val)) throw Error(ErrorKind::Config, where + "bad element name '" + std::string(val) + "'");
      (key == "bottom" ? spec.bottom : spec.top) = std::string(val);
    } else if (key == "leq") {
      auto chain = split(val, '<');
      if (chain.size() < 2) throw Error(ErrorKind::Config, where + "expected 'a < b'");
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        auto a = trim(chain[i]), b = trim(chain[i + 1]);
        if (!b.empty() && b.front() == '=') b = trim(b.substr(1));  // a <= b
        if (!is_element_name(a) || !is_element_name(b)) throw Error(ErrorKind::Config, where + "expected 'a < b'");
        spec.leq.emplace_back(std::string(a), std::string(b));
      }
    } else if (key == "join") {
      auto eq = split(val, '=');
      if (eq.size() != 2) throw Error(ErrorKind::Config, where + "expected 'a + b = c'");
      auto sum = split(eq[0], '+');
      if (sum.size() != 2) throw Error(ErrorKind::Config, where + "expected 'a + b = c'");
      LatticeSpec::JoinEntry e{std::string(trim(sum[0])), std::string(trim(sum[1])), std::string(trim(eq[1]))};
      if (!is_element_name(e.a) || !is_element_name(e.b) || !is_element_name(e.result))
        throw Error(ErrorKind::Config, where + "expected 'a + b = c'");
      spec.join.push_back(std::move(e));
    } else {
      throw Error(ErrorKind::Config, where + "unknown key '" + std::string(key) + "'");
    }
  }
  return spec;
}

}  // namespace qprot
