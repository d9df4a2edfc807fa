#include "ast.hpp"

#include <map>

#include "lexical.hpp"

namespace qprot {

const std::string& Term::text() const {
  if (auto* n = std::get_if<Name>(&node)) return n->value();
  return std::get<TermVarId>(node).value();
}

bool equal(const ProcessPtr& a, const ProcessPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Process& a, const Process& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NilProc>) {
          return true;
        } else if constexpr (std::is_same_v<T, RestrictProc>) {
          return x.name == y.name && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, ParProc>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, BindProc>) {
          return x.label == y.label && x.binder == y.binder && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, OutputProc>) {
          return x.label == y.label && x.channel == y.channel && x.payload == y.payload && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, ReplProc>) {
          return equal(x.body, y.body);
        } else {
          return x.label == y.label && x.scrutinee == y.scrutinee && x.yvar == y.yvar &&
                 equal(x.then_branch, y.then_branch) && equal(x.else_branch, y.else_branch);
        }
      },
      a.node);
}

namespace {
ProcessPtr make(auto node) { return std::make_shared<const Process>(Process{std::move(node)}); }
}  // namespace

ProcessPtr nil() {
  static const ProcessPtr the_nil = make(NilProc{});
  return the_nil;
}
ProcessPtr restrict_(Name n, ProcessPtr body) { return make(RestrictProc{std::move(n), std::move(body)}); }
ProcessPtr par(ProcessPtr l, ProcessPtr r) { return make(ParProc{std::move(l), std::move(r)}); }
ProcessPtr bind(LabelId l, Binder b, ProcessPtr body) { return make(BindProc{l, std::move(b), std::move(body)}); }
ProcessPtr output(LabelId l, Name ch, Term payload, ProcessPtr body) {
  return make(OutputProc{l, std::move(ch), std::move(payload), std::move(body)});
}
ProcessPtr repl(ProcessPtr body) { return make(ReplProc{std::move(body)}); }
ProcessPtr case_(LabelId l, InVarId x, TermVarId y, ProcessPtr then_b, ProcessPtr else_b) {
  return make(CaseProc{l, std::move(x), std::move(y), std::move(then_b), std::move(else_b)});
}

Binder input(std::string channel, std::string var) {
  return Binder{InputBinder{Name(std::move(channel)), InVarId(std::move(var))}};
}
Binder quality(Guard g, std::vector<Binder> subs) { return Binder{QualityBinder{g, std::move(subs)}}; }
Term const_term(std::string name) { return Term{Name(std::move(name))}; }
Term var_term(std::string y) { return Term{TermVarId(std::move(y))}; }

std::vector<InVarId> bound_vars(const Binder& b) {
  std::vector<InVarId> out;
  auto walk = [&](auto& self, const Binder& cur) -> void {
    if (auto* in = std::get_if<InputBinder>(&cur.node)) {
      out.push_back(in->var);
    } else {
      for (const auto& s : std::get<QualityBinder>(cur.node).subs) self(self, s);
    }
  };
  walk(walk, b);
  return out;
}

std::vector<Name> binder_channels(const Binder& b) {
  std::vector<Name> out;
  auto walk = [&](auto& self, const Binder& cur) -> void {
    if (auto* in = std::get_if<InputBinder>(&cur.node)) {
      out.push_back(in->channel);
    } else {
      for (const auto& s : std::get<QualityBinder>(cur.node).subs) self(self, s);
    }
  };
  walk(walk, b);
  return out;
}

namespace {

class Validator {
 public:
  ValidationReport run(const Process& p) {
    walk(p);
    return std::move(report_);
  }

 private:
  void fail(std::string msg) { report_.violations.push_back({std::move(msg)}); }

  void check_ident(const std::string& id, const char* what) {
    if (!is_identifier(id)) {
      fail(std::string("malformed ") + what + " '" + id + "'");
    } else if (is_keyword(id)) {
      fail(std::string("reserved word '") + id + "' used as " + what);
    }
  }

  void see_label(LabelId l) {
    if (l.value() == 0) fail("label 0 is not positive");
    if (!labels_.insert(l).second) fail("duplicate label " + std::to_string(l.value()));
  }

  void check_binder(const Binder& b, LabelId l) {
    if (auto* in = std::get_if<InputBinder>(&b.node)) {
      check_ident(in->channel.value(), "channel name");
      check_ident(in->var.value(), "input variable");
      if (!xvars_.insert(in->var).second)
        fail("input variable " + in->var.value() + " bound more than once");
      return;
    }
    const auto& q = std::get<QualityBinder>(b.node);
    if (q.subs.empty()) fail("empty quality binder at label " + std::to_string(l.value()));
    for (const auto& s : q.subs) check_binder(s, l);
  }

  void walk(const Process& p) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NilProc>) {
          } else if constexpr (std::is_same_v<T, RestrictProc>) {
            check_ident(n.name.value(), "channel name");
            walk(*n.body);
          } else if constexpr (std::is_same_v<T, ParProc>) {
            walk(*n.left);
            walk(*n.right);
          } else if constexpr (std::is_same_v<T, ReplProc>) {
            walk(*n.body);
          } else if constexpr (std::is_same_v<T, BindProc>) {
            see_label(n.label);
            check_binder(n.binder, n.label);
            auto vars = bound_vars(n.binder);
            for (const auto& v : vars) ++x_scope_[v];
            walk(*n.body);
            for (const auto& v : vars) --x_scope_[v];
          } else if constexpr (std::is_same_v<T, OutputProc>) {
            see_label(n.label);
            check_ident(n.channel.value(), "channel name");
            check_ident(n.payload.text(), "payload");
            if (auto* y = std::get_if<TermVarId>(&n.payload.node)) {
              if (y_scope_[*y] == 0)
                fail("unbound term variable " + y->value() + " at label " + std::to_string(n.label.value()));
            } else if (y_scope_[TermVarId(n.payload.text())] > 0) {
              fail("constant " + n.payload.text() + " shadowed by term variable at label " +
                   std::to_string(n.label.value()));
            }
            walk(*n.body);
          } else {
            see_label(n.label);
            check_ident(n.scrutinee.value(), "input variable");
            check_ident(n.yvar.value(), "term variable");
            if (x_scope_[n.scrutinee] == 0)
              fail("unbound input variable " + n.scrutinee.value() + " at label " +
                   std::to_string(n.label.value()));
            if (!yvars_.insert(n.yvar).second) fail("term variable " + n.yvar.value() + " bound more than once");
            ++y_scope_[n.yvar];
            walk(*n.then_branch);
            --y_scope_[n.yvar];
            walk(*n.else_branch);
          }
        },
        p.node);
  }

  ValidationReport report_;
  std::set<LabelId> labels_;
  std::set<InVarId> xvars_;
  std::set<TermVarId> yvars_;
  std::map<InVarId, int> x_scope_;
  std::map<TermVarId, int> y_scope_;
};

void collect_names(const Process& p, std::set<Name>& bound, std::set<Name>* free_out, std::set<Name>* all_out) {
  auto see = [&](const Name& n) {
    if (all_out) all_out->insert(n);
    if (free_out && !bound.contains(n)) free_out->insert(n);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NilProc>) {
        } else if constexpr (std::is_same_v<T, RestrictProc>) {
          if (all_out) all_out->insert(n.name);
          bool inserted = bound.insert(n.name).second;
          collect_names(*n.body, bound, free_out, all_out);
          if (inserted) bound.erase(n.name);
        } else if constexpr (std::is_same_v<T, ParProc>) {
          collect_names(*n.left, bound, free_out, all_out);
          collect_names(*n.right, bound, free_out, all_out);
        } else if constexpr (std::is_same_v<T, ReplProc>) {
          collect_names(*n.body, bound, free_out, all_out);
        } else if constexpr (std::is_same_v<T, BindProc>) {
          for (const auto& c : binder_channels(n.binder)) see(c);
          collect_names(*n.body, bound, free_out, all_out);
        } else if constexpr (std::is_same_v<T, OutputProc>) {
          see(n.channel);
          if (auto* c = std::get_if<Name>(&n.payload.node)) see(*c);
          collect_names(*n.body, bound, free_out, all_out);
        } else {
          collect_names(*n.then_branch, bound, free_out, all_out);
          collect_names(*n.else_branch, bound, free_out, all_out);
        }
      },
      p.node);
}

}  // namespace

ValidationReport validate(const Process& p) { return Validator{}.run(p); }

std::set<Name> free_names(const Process& p) {
  std::set<Name> bound, out;
  collect_names(p, bound, &out, nullptr);
  return out;
}

std::set<Name> names(const Process& p) {
  std::set<Name> bound, out;
  collect_names(p, bound, nullptr, &out);
  return out;
}

std::set<LabelId> labels(const Process& p) {
  std::set<LabelId> out;
  auto walk = [&](auto& self, const Process& cur) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, RestrictProc> || std::is_same_v<T, ReplProc>) {
            self(self, *n.body);
          } else if constexpr (std::is_same_v<T, ParProc>) {
            self(self, *n.left);
            self(self, *n.right);
          } else if constexpr (std::is_same_v<T, BindProc> || std::is_same_v<T, OutputProc>) {
            out.insert(n.label);
            self(self, *n.body);
          } else if constexpr (std::is_same_v<T, CaseProc>) {
            out.insert(n.label);
            self(self, *n.then_branch);
            self(self, *n.else_branch);
          }
        },
        cur.node);
  };
  walk(walk, p);
  return out;
}

std::size_t action_count(const Process& p) { return labels(p).size(); }

ProcessPtr strip_restrictions_and_replications(const ProcessPtr& p) {
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NilProc>) {
          return p;
        } else if constexpr (std::is_same_v<T, RestrictProc> || std::is_same_v<T, ReplProc>) {
          return strip_restrictions_and_replications(n.body);
        } else if constexpr (std::is_same_v<T, ParProc>) {
          return par(strip_restrictions_and_replications(n.left), strip_restrictions_and_replications(n.right));
        } else if constexpr (std::is_same_v<T, BindProc>) {
          return bind(n.label, n.binder, strip_restrictions_and_replications(n.body));
        } else if constexpr (std::is_same_v<T, OutputProc>) {
          return output(n.label, n.channel, n.payload, strip_restrictions_and_replications(n.body));
        } else {
          return case_(n.label, n.scrutinee, n.yvar, strip_restrictions_and_replications(n.then_branch),
                       strip_restrictions_and_replications(n.else_branch));
        }
      },
      p->node);
}

}  // namespace qprot
