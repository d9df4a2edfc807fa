#pragma once

// Bounded executable broadcast semantics with a hardest attacker that may
// broadcast on any known channel. Used as an oracle for the protection
// analysis.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "solver.hpp"

namespace qprot {

struct SimBounds {
  std::size_t depth = 12;   // transitions
  std::size_t unfold = 2;   // copies per replication
};

// One sequential component. Restricted names are instantiated as "c#k";
// names maps source names to their instance in scope.
struct Thread {
  ProcessPtr proc;  // never Nil, Par, Restrict or Repl
  std::map<std::string, std::string> names;
  std::map<std::string, std::string> terms;                    // y -> name
  std::map<std::string, std::optional<std::string>> inputs;    // x -> some/none
  std::map<std::string, std::string> received;                 // pending binder
};

struct Configuration {
  std::vector<Thread> threads;
  std::size_t fresh = 0;

  // Canonical text; equal keys mean equal configurations up to the naming of
  // restricted instances.
  std::string key() const;
  std::set<LabelId> enabled() const;
};

struct StepLabel {
  bool tau = true;
  std::string channel;  // broadcasts only
  std::string payload;
};

inline constexpr const char* kAttackerPayload = "_atk";

class Simulator {
 public:
  Simulator(ProcessPtr p, std::set<Name> knowledge, std::size_t unfold);

  Configuration initial() const;
  std::vector<std::pair<StepLabel, Configuration>> step(const Configuration& c) const;

 private:
  ProcessPtr root_;
  std::set<Name> knowledge_;
  std::size_t unfold_;
};

// Labels enabled in some configuration within the bounds.
std::set<LabelId> reachable_labels(const ProcessPtr& p, const std::set<Name>& knowledge, SimBounds b);
bool reaches(const ProcessPtr& p, LabelId target, const std::set<Name>& knowledge, SimBounds b);

enum class OracleVerdict { Pass, Fail, Vacuous };

struct OracleReport {
  OracleVerdict verdict = OracleVerdict::Vacuous;
  std::optional<Attack> witness;  // an analysed attack within the knowledge
};

// Reachable under the knowledge implies some analysed attack is contained in
// the knowledge.
OracleReport check_underapprox(const ProcessPtr& p, LabelId target, const std::set<Name>& knowledge, SimBounds b);

}  // namespace qprot
