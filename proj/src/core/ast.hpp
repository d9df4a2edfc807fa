#pragma once

// Abstract syntax of the value-passing quality calculus.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qprot {

template <class Tag, class T>
class StrongType {
 public:
  StrongType() = default;
  explicit StrongType(T v) : value_(std::move(v)) {}
  const T& value() const { return value_; }
  auto operator<=>(const StrongType&) const = default;
  bool operator==(const StrongType&) const = default;

 private:
  T value_{};
};

using Name = StrongType<struct NameTag, std::string>;
using InVarId = StrongType<struct InVarTag, std::string>;
using TermVarId = StrongType<struct TermVarTag, std::string>;
using LabelId = StrongType<struct LabelTag, std::uint32_t>;

enum class Guard { Forall, Exists };

struct Binder;

struct InputBinder {
  Name channel;
  InVarId var;
  bool operator==(const InputBinder&) const = default;
};

struct QualityBinder {
  Guard guard = Guard::Exists;
  std::vector<Binder> subs;  // at least one
  bool operator==(const QualityBinder&) const;
};

struct Binder {
  std::variant<InputBinder, QualityBinder> node;
  bool operator==(const Binder&) const = default;
};

inline bool QualityBinder::operator==(const QualityBinder& o) const {
  return guard == o.guard && subs == o.subs;
}

struct Term {
  std::variant<Name, TermVarId> node;
  bool operator==(const Term&) const = default;
  bool is_const() const { return std::holds_alternative<Name>(node); }
  const std::string& text() const;
};

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

struct NilProc {};
struct RestrictProc {
  Name name;
  ProcessPtr body;
};
struct ParProc {
  ProcessPtr left, right;
};
struct BindProc {
  LabelId label;
  Binder binder;
  ProcessPtr body;
};
struct OutputProc {
  LabelId label;
  Name channel;
  Term payload;
  ProcessPtr body;
};
struct ReplProc {
  ProcessPtr body;
};
struct CaseProc {
  LabelId label;
  InVarId scrutinee;
  TermVarId yvar;
  ProcessPtr then_branch, else_branch;
};

struct Process {
  std::variant<NilProc, RestrictProc, ParProc, BindProc, OutputProc, ReplProc, CaseProc> node;
};

// Structural equality; shared sub-trees compare by value.
bool operator==(const Process& a, const Process& b);
bool equal(const ProcessPtr& a, const ProcessPtr& b);

// Constructors.
ProcessPtr nil();
ProcessPtr restrict_(Name n, ProcessPtr body);
ProcessPtr par(ProcessPtr l, ProcessPtr r);
ProcessPtr bind(LabelId l, Binder b, ProcessPtr body);
ProcessPtr output(LabelId l, Name ch, Term payload, ProcessPtr body);
ProcessPtr repl(ProcessPtr body);
ProcessPtr case_(LabelId l, InVarId x, TermVarId y, ProcessPtr then_b, ProcessPtr else_b);

Binder input(std::string channel, std::string var);
Binder quality(Guard g, std::vector<Binder> subs);
Term const_term(std::string name);
Term var_term(std::string y);

struct Violation {
  std::string message;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks label uniqueness, single binding of every variable, closedness.
ValidationReport validate(const Process& p);

std::set<Name> free_names(const Process& p);
std::set<Name> names(const Process& p);
std::set<LabelId> labels(const Process& p);

// Number of actions (binders, outputs, case clauses).
std::size_t action_count(const Process& p);

// The process with every restriction and replication removed.
ProcessPtr strip_restrictions_and_replications(const ProcessPtr& p);

// Names of input variables bound by a binder, in source order.
std::vector<InVarId> bound_vars(const Binder& b);
// Channels listened on by a binder, in source order.
std::vector<Name> binder_channels(const Binder& b);

}  // namespace qprot
