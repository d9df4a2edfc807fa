#pragma once

// Finite partial orders declared by Hasse data, with an optional explicit
// join table. Used both as symbolic cost structures and as security lattices.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qprot {

struct LatticeSpec {
  std::vector<std::string> elements;
  std::optional<std::string> bottom;
  std::optional<std::string> top;
  std::vector<std::pair<std::string, std::string>> leq;  // a < b
  struct JoinEntry {
    std::string a, b, result;
  };
  std::vector<JoinEntry> join;
};

class Lattice {
 public:
  // Throws Error(Config) on unknown element names or an empty carrier. Order
  // axioms are not enforced here; see validate_lattice.
  explicit Lattice(const LatticeSpec& spec);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index(std::string_view name) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq_[a][b]; }
  std::optional<std::size_t> lub(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> glb(std::size_t a, std::size_t b) const;

  // Declared bottom/top, or the computed least/greatest element.
  std::optional<std::size_t> bottom() const { return bottom_; }
  std::optional<std::size_t> top() const { return top_; }
  std::optional<std::size_t> declared_bottom() const { return declared_bottom_; }
  std::optional<std::size_t> declared_top() const { return declared_top_; }

  // The join table entry when present, otherwise lub.
  std::optional<std::size_t> plus(std::size_t a, std::size_t b) const;
  bool has_join_table() const { return !join_.empty(); }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::optional<std::size_t>>> join_;
  std::optional<std::size_t> bottom_, top_, declared_bottom_, declared_top_;
};

struct LatticeReport {
  bool ok = true;
  std::string violation;
};

// Exhaustive check over the carrier; reports the first violation found.
LatticeReport validate_lattice(const Lattice& l);

// Line-based format: "elements: a, b", "bottom: a", "top: b", "leq: a < b",
// "join: a + b = c". '#' starts a comment. Throws Error(Config).
LatticeSpec parse_lattice(std::string_view text);

}  // namespace qprot
