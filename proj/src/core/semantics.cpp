#include "semantics.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <unordered_set>

#include "translate.hpp"

namespace qprot {
namespace {

std::string resolve(const Thread& t, const Name& n) {
  auto it = t.names.find(n.value());
  return it == t.names.end() ? n.value() : it->second;
}

std::string base_of(const std::string& inst) { return inst.substr(0, inst.find('#')); }

// Splits a process into threads, instantiating restrictions and unfolding
// replications.
void flatten(const ProcessPtr& p, Thread env, std::size_t unfold, std::size_t& fresh, std::vector<Thread>& out) {
  env.received.clear();
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NilProc>) {
        } else if constexpr (std::is_same_v<T, RestrictProc>) {
          env.names[n.name.value()] = n.name.value() + "#" + std::to_string(fresh++);
          flatten(n.body, std::move(env), unfold, fresh, out);
        } else if constexpr (std::is_same_v<T, ParProc>) {
          flatten(n.left, env, unfold, fresh, out);
          flatten(n.right, std::move(env), unfold, fresh, out);
        } else if constexpr (std::is_same_v<T, ReplProc>) {
          for (std::size_t i = 0; i < unfold; ++i) flatten(n.body, env, unfold, fresh, out);
        } else {
          env.proc = p;
          out.push_back(std::move(env));
        }
      },
      p->node);
}

bool satisfied(const Binder& b, const std::map<std::string, std::string>& received) {
  if (const auto* in = std::get_if<InputBinder>(&b.node)) return received.count(in->var.value()) > 0;
  const auto& q = std::get<QualityBinder>(b.node);
  auto sat = [&](const Binder& s) { return satisfied(s, received); };
  return q.guard == Guard::Forall ? std::all_of(q.subs.begin(), q.subs.end(), sat)
                                  : std::any_of(q.subs.begin(), q.subs.end(), sat);
}

// Records the broadcast in every pending input on the channel; false when
// the binder does not listen there.
bool update(const Binder& b, const Thread& t, const std::string& ch, const std::string& payload,
            std::map<std::string, std::string>& received) {
  if (const auto* in = std::get_if<InputBinder>(&b.node)) {
    if (received.count(in->var.value()) || resolve(t, in->channel) != ch) return false;
    received[in->var.value()] = payload;
    return true;
  }
  bool any = false;
  for (const auto& s : std::get<QualityBinder>(b.node).subs) any = update(s, t, ch, payload, received) || any;
  return any;
}

void listening(const Binder& b, const Thread& t, std::set<std::string>& out) {
  if (const auto* in = std::get_if<InputBinder>(&b.node)) {
    if (!t.received.count(in->var.value())) out.insert(resolve(t, in->channel));
    return;
  }
  for (const auto& s : std::get<QualityBinder>(b.node).subs) listening(s, t, out);
}

std::string thread_text(const Thread& t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%p", static_cast<const void*>(t.proc.get()));
  std::string s = buf;
  for (const auto& [k, v] : t.names) s += " n:" + k + "=" + v;
  for (const auto& [k, v] : t.terms) s += " y:" + k + "=" + v;
  for (const auto& [k, v] : t.inputs) s += " x:" + k + "=" + (v ? *v : "-");
  for (const auto& [k, v] : t.received) s += " r:" + k + "=" + v;
  return s;
}

// Rewrites the digits after each '#' through f.
template <class F>
std::string renumber(const std::string& s, F f) {
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    out += s[i];
    if (s[i++] != '#') continue;
    std::size_t j = i;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    out += f(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string Configuration::key() const {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& t : threads) {
    auto raw = thread_text(t);
    rows.emplace_back(renumber(raw, [](const std::string&) { return std::string(); }), raw);
  }
  std::sort(rows.begin(), rows.end());
  std::map<std::string, std::string> ids;
  std::string out;
  for (const auto& [masked, raw] : rows) {
    out += renumber(raw, [&](const std::string& k) {
      auto it = ids.find(k);
      if (it == ids.end()) it = ids.emplace(k, std::to_string(ids.size())).first;
      return it->second;
    });
    out += '\n';
  }
  return out;
}

std::set<LabelId> Configuration::enabled() const {
  std::set<LabelId> out;
  for (const auto& t : threads)
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, BindProc> || std::is_same_v<T, OutputProc> || std::is_same_v<T, CaseProc>)
            out.insert(n.label);
        },
        t.proc->node);
  return out;
}

Simulator::Simulator(ProcessPtr p, std::set<Name> knowledge, std::size_t unfold)
    : root_(std::move(p)), knowledge_(std::move(knowledge)), unfold_(unfold) {}

Configuration Simulator::initial() const {
  Configuration c;
  flatten(root_, Thread{}, unfold_, c.fresh, c.threads);
  return c;
}

std::vector<std::pair<StepLabel, Configuration>> Simulator::step(const Configuration& c) const {
  std::vector<std::pair<StepLabel, Configuration>> out;

  bool has_case = false;
  for (std::size_t i = 0; i < c.threads.size(); ++i) {
    const auto* cs = std::get_if<CaseProc>(&c.threads[i].proc->node);
    if (!cs) continue;
    has_case = true;
    Configuration next;
    next.fresh = c.fresh;
    for (std::size_t j = 0; j < c.threads.size(); ++j)
      if (j != i) next.threads.push_back(c.threads[j]);
    Thread t = c.threads[i];
    auto it = t.inputs.find(cs->scrutinee.value());
    if (it != t.inputs.end() && it->second) {
      t.terms[cs->yvar.value()] = *it->second;
      flatten(cs->then_branch, std::move(t), unfold_, next.fresh, next.threads);
    } else {
      flatten(cs->else_branch, std::move(t), unfold_, next.fresh, next.threads);
    }
    out.emplace_back(StepLabel{}, std::move(next));
  }
  // Pending case analyses complete before the next broadcast.
  if (has_case) return out;

  auto broadcast = [&](std::optional<std::size_t> sender, const std::string& ch, const std::string& payload) {
    Configuration next;
    next.fresh = c.fresh;
    for (std::size_t j = 0; j < c.threads.size(); ++j) {
      const Thread& t = c.threads[j];
      if (sender && j == *sender) {
        flatten(std::get<OutputProc>(t.proc->node).body, t, unfold_, next.fresh, next.threads);
        continue;
      }
      const auto* bp = std::get_if<BindProc>(&t.proc->node);
      if (!bp) {
        next.threads.push_back(t);
        continue;
      }
      Thread u = t;
      if (!update(bp->binder, t, ch, payload, u.received)) {
        next.threads.push_back(std::move(u));
        continue;
      }
      if (!satisfied(bp->binder, u.received)) {
        next.threads.push_back(std::move(u));
        continue;
      }
      for (const auto& x : bound_vars(bp->binder)) {
        auto r = u.received.find(x.value());
        u.inputs[x.value()] = r == u.received.end() ? std::nullopt : std::optional<std::string>(r->second);
      }
      flatten(bp->body, std::move(u), unfold_, next.fresh, next.threads);
    }
    out.emplace_back(StepLabel{false, ch, payload}, std::move(next));
  };

  for (std::size_t i = 0; i < c.threads.size(); ++i) {
    const Thread& t = c.threads[i];
    const auto* op = std::get_if<OutputProc>(&t.proc->node);
    if (!op) continue;
    std::string payload;
    if (const auto* n = std::get_if<Name>(&op->payload.node)) {
      payload = resolve(t, *n);
    } else {
      auto it = t.terms.find(std::get<TermVarId>(op->payload.node).value());
      payload = it == t.terms.end() ? kAttackerPayload : it->second;
    }
    broadcast(i, resolve(t, op->channel), payload);
  }

  std::set<std::string> heard;
  for (const auto& t : c.threads)
    if (const auto* bp = std::get_if<BindProc>(&t.proc->node)) listening(bp->binder, t, heard);
  for (const auto& ch : heard)
    if (knowledge_.count(Name(base_of(ch)))) broadcast(std::nullopt, ch, kAttackerPayload);
  return out;
}

std::set<LabelId> reachable_labels(const ProcessPtr& p, const std::set<Name>& knowledge, SimBounds b) {
  Simulator sim(p, knowledge, b.unfold);
  std::set<LabelId> seen_labels;
  std::unordered_set<std::string> seen;
  std::deque<std::pair<Configuration, std::size_t>> queue;
  auto init = sim.initial();
  seen.insert(init.key());
  queue.emplace_back(std::move(init), 0);
  while (!queue.empty()) {
    auto [c, d] = std::move(queue.front());
    queue.pop_front();
    auto en = c.enabled();
    seen_labels.insert(en.begin(), en.end());
    if (d >= b.depth) continue;
    for (auto& [lbl, next] : sim.step(c))
      if (seen.insert(next.key()).second) queue.emplace_back(std::move(next), d + 1);
  }
  return seen_labels;
}

bool reaches(const ProcessPtr& p, LabelId target, const std::set<Name>& knowledge, SimBounds b) {
  Simulator sim(p, knowledge, b.unfold);
  std::unordered_set<std::string> seen;
  std::deque<std::pair<Configuration, std::size_t>> queue;
  auto init = sim.initial();
  seen.insert(init.key());
  queue.emplace_back(std::move(init), 0);
  while (!queue.empty()) {
    auto [c, d] = std::move(queue.front());
    queue.pop_front();
    if (c.enabled().count(target)) return true;
    if (d >= b.depth) continue;
    for (auto& [lbl, next] : sim.step(c))
      if (seen.insert(next.key()).second) queue.emplace_back(std::move(next), d + 1);
  }
  return false;
}

OracleReport check_underapprox(const ProcessPtr& p, LabelId target, const std::set<Name>& knowledge, SimBounds b) {
  OracleReport rep;
  if (!reaches(p, target, knowledge, b)) return rep;
  rep.verdict = OracleVerdict::Fail;
  for (const auto& s : attack_sets(build_system(*p, target)))
    if (std::includes(knowledge.begin(), knowledge.end(), s.begin(), s.end())) {
      rep.verdict = OracleVerdict::Pass;
      rep.witness = s;
      break;
    }
  return rep;
}

}  // namespace qprot
