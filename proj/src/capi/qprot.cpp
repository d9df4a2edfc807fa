#include "qprot/qprot.h"

#include <cstring>
#include <json.hpp>
#include <memory>
#include <string>

#include "cost.hpp"
#include "error.hpp"
#include "lattice.hpp"
#include "parser.hpp"
#include "security.hpp"
#include "semantics.hpp"
#include "solver.hpp"
#include "translate.hpp"
#include "tree.hpp"

using json = nlohmann::ordered_json;
using namespace qprot;

struct qprot_process {
  ProcessPtr proc;
};
struct qprot_costs {
  CostMap map;
};
struct qprot_levels {
  LevelMap map;
};
struct qprot_security {
  SecurityMap map;
  std::shared_ptr<const Lattice> lattice;
};

namespace {

thread_local std::string last_error;

qprot_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return QPROT_ERR_PARSE;
    case ErrorKind::Validation:
      return QPROT_ERR_VALIDATION;
    case ErrorKind::UnknownLabel:
      return QPROT_ERR_UNKNOWN_LABEL;
    case ErrorKind::Unsatisfiable:
      return QPROT_ERR_UNSATISFIABLE;
    case ErrorKind::Config:
      return QPROT_ERR_CONFIG;
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonChannelAtom:
    case ErrorKind::DomainTooLarge:
      return QPROT_ERR_INVALID_ARGUMENT;
    case ErrorKind::MissingLiteral:
    case ErrorKind::MissingRule:
      break;
  }
  return QPROT_ERR_EXCEPTION;
}

qprot_status fail(qprot_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
qprot_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(QPROT_ERR_EXCEPTION, e.what());
  } catch (...) {
    return fail(QPROT_ERR_EXCEPTION, "unknown exception");
  }
}

qprot_status emit(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (!needed) return fail(QPROT_ERR_NULL_POINTER, "needed is NULL");
  *needed = s.size() + 1;
  if (cap < s.size() + 1 || !buf) return fail(QPROT_ERR_INSUFFICIENT_BUFFER, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return QPROT_OK;
}

std::string set_text(const Attack& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& c : a) {
    s += (first ? "" : ", ") + c.value();
    first = false;
  }
  return s + "}";
}

json attack_json(const Attack& a) {
  json arr = json::array();
  for (const auto& c : a) arr.push_back(c.value());
  return arr;
}

json priced_json(const std::vector<PricedAttack>& v, const CostStructure& s) {
  json arr = json::array();
  for (const auto& pa : v) arr.push_back({{"attack", attack_json(pa.attack)}, {"cost", s.format(pa.cost)}});
  return arr;
}

std::string priced_text(const std::vector<PricedAttack>& v, const CostStructure& s, const char* indent) {
  std::string out;
  for (const auto& pa : v) out += indent + set_text(pa.attack) + "  cost " + s.format(pa.cost) + "\n";
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Inversion:
      return "inversion";
    case Verdict::Unreachable:
      return "unreachable";
  }
  return "";
}

bool has_label(const Process& p, uint32_t label) { return labels(p).count(LabelId(label)) > 0; }

qprot_status unknown_label(uint32_t label) {
  return fail(QPROT_ERR_UNKNOWN_LABEL, "label " + std::to_string(label) + " does not occur in the process");
}

}  // namespace

extern "C" {

const char* qprot_version(void) { return "1.0.0"; }

const char* qprot_status_name(qprot_status s) {
  switch (s) {
    case QPROT_OK:
      return "ok";
    case QPROT_ERR_NULL_POINTER:
      return "null pointer";
    case QPROT_ERR_PARSE:
      return "parse error";
    case QPROT_ERR_VALIDATION:
      return "validation error";
    case QPROT_ERR_UNKNOWN_LABEL:
      return "unknown label";
    case QPROT_ERR_UNSATISFIABLE:
      return "unsatisfiable";
    case QPROT_ERR_CONFIG:
      return "configuration error";
    case QPROT_ERR_INSUFFICIENT_BUFFER:
      return "insufficient buffer";
    case QPROT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QPROT_ERR_EXCEPTION:
      return "internal error";
  }
  return "unknown status";
}

const char* qprot_last_error(void) { return last_error.c_str(); }

qprot_status qprot_process_parse(const char* text, qprot_process** out) {
  if (!text || !out) return fail(QPROT_ERR_NULL_POINTER, "text and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<qprot_process>();
    h->proc = parse_process(text);
    *out = h.release();
    return QPROT_OK;
  });
}

void qprot_process_free(qprot_process* p) { delete p; }

qprot_status qprot_process_describe(const qprot_process* p, qprot_format fmt, char* buf, size_t cap,
                                    size_t* needed) {
  if (!p) return fail(QPROT_ERR_NULL_POINTER, "process is NULL");
  return guarded([&] {
    const Process& proc = *p->proc;
    auto canonical = pretty(proc);
    if (fmt == QPROT_FORMAT_TEXT) return emit(canonical + "\n", buf, cap, needed);
    json labs = json::array(), all = json::array(), fr = json::array();
    for (auto l : labels(proc)) labs.push_back(l.value());
    for (const auto& n : names(proc)) all.push_back(n.value());
    for (const auto& n : free_names(proc)) fr.push_back(n.value());
    json r = {{"canonical", canonical},
              {"labels", labs},
              {"names", all},
              {"free_names", fr},
              {"actions", action_count(proc)}};
    return emit(r.dump(), buf, cap, needed);
  });
}

qprot_status qprot_costs_load(const char* cost_text, const char* lattice_text, qprot_costs** out) {
  if (!cost_text || !out) return fail(QPROT_ERR_NULL_POINTER, "cost_text and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    CostStructure s = CostStructure::numeric();
    if (lattice_text) {
      auto lat = std::make_shared<const Lattice>(parse_lattice(lattice_text));
      auto rep = validate_lattice(*lat);
      if (!rep.ok) return fail(QPROT_ERR_CONFIG, "cost lattice: " + rep.violation);
      s = CostStructure::symbolic(lat);
    }
    auto h = std::make_unique<qprot_costs>();
    h->map = parse_cost_map(cost_text, s);
    *out = h.release();
    return QPROT_OK;
  });
}

void qprot_costs_free(qprot_costs* c) { delete c; }

qprot_status qprot_levels_load(const char* level_text, const qprot_costs* costs, const char* security_lattice_text,
                               qprot_levels** out) {
  if (!level_text || !costs || !out) return fail(QPROT_ERR_NULL_POINTER, "level_text, costs and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    std::shared_ptr<const Lattice> sigma;
    if (security_lattice_text) sigma = std::make_shared<const Lattice>(parse_lattice(security_lattice_text));
    auto h = std::make_unique<qprot_levels>();
    h->map = parse_level_map(level_text, costs->map.structure, sigma);
    *out = h.release();
    return QPROT_OK;
  });
}

void qprot_levels_free(qprot_levels* l) { delete l; }

qprot_status qprot_security_load(const char* text, const qprot_levels* levels, qprot_security** out) {
  if (!text || !levels || !out) return fail(QPROT_ERR_NULL_POINTER, "text, levels and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<qprot_security>();
    h->lattice = levels->map.security;
    h->map = parse_security_map(text, *h->lattice);
    *out = h.release();
    return QPROT_OK;
  });
}

void qprot_security_free(qprot_security* s) { delete s; }

qprot_status qprot_discover(const qprot_process* p, uint32_t label, qprot_format fmt, char* buf, size_t cap,
                            size_t* needed) {
  if (!p) return fail(QPROT_ERR_NULL_POINTER, "process is NULL");
  return guarded([&] {
    if (!has_label(*p->proc, label)) return unknown_label(label);
    auto sys = build_system(*p->proc, LabelId(label));
    auto all = attack_sets(sys);
    auto minimal = minimal_by_inclusion(all);
    if (fmt == QPROT_FORMAT_TEXT) {
      std::string s = "label " + std::to_string(label);
      if (all.empty()) return emit(s + ": unreachable\n", buf, cap, needed);
      s += ": " + std::to_string(minimal.size()) + " minimal attack" + (minimal.size() == 1 ? "" : "s") + "\n";
      for (const auto& a : minimal) s += "  " + set_text(a) + "\n";
      s += "all attacks (" + std::to_string(all.size()) + "):\n";
      for (const auto& a : all) s += "  " + set_text(a) + "\n";
      return emit(s, buf, cap, needed);
    }
    json ja = json::array(), jm = json::array();
    for (const auto& a : all) ja.push_back(attack_json(a));
    for (const auto& a : minimal) jm.push_back(attack_json(a));
    json r = {{"label", label}, {"reachable", !all.empty()}, {"attacks", ja}, {"minimal", jm}};
    return emit(r.dump(), buf, cap, needed);
  });
}

qprot_status qprot_quantify(const qprot_process* p, uint32_t label, const qprot_costs* costs, qprot_format fmt,
                            char* buf, size_t cap, size_t* needed) {
  if (!p || !costs) return fail(QPROT_ERR_NULL_POINTER, "process and costs must not be NULL");
  return guarded([&] {
    if (!has_label(*p->proc, label)) return unknown_label(label);
    auto sys = build_system(*p->proc, LabelId(label));
    const auto& s = costs->map.structure;
    std::vector<PricedAttack> minimal;
    bool reachable = true;
    std::size_t iterations = 0;
    try {
      minimal = minimal_attacks(sys, costs->map, &iterations);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsatisfiable) throw;
      reachable = false;
    }
    if (fmt == QPROT_FORMAT_TEXT) {
      std::string t = "label " + std::to_string(label);
      if (!reachable) return emit(t + ": unreachable\n", buf, cap, needed);
      return emit(t + ": minimal attacks\n" + priced_text(minimal, s, "  "), buf, cap, needed);
    }
    json r = {{"label", label},
              {"reachable", reachable},
              {"cost_structure", s.is_numeric() ? "numeric" : "symbolic"},
              {"minimal", priced_json(minimal, s)},
              {"iterations", iterations}};
    return emit(r.dump(), buf, cap, needed);
  });
}

qprot_status qprot_check(const qprot_process* p, const uint32_t* labels_in, size_t n_labels,
                         const qprot_costs* costs, const qprot_levels* levels, const qprot_security* security,
                         qprot_format fmt, char* buf, size_t cap, size_t* needed) {
  if (!p || !costs || !levels || !security || (!labels_in && n_labels))
    return fail(QPROT_ERR_NULL_POINTER, "process, costs, levels, security and labels must not be NULL");
  return guarded([&] {
    if (levels->map.security != security->lattice)
      return fail(QPROT_ERR_INVALID_ARGUMENT, "security map was loaded against different levels");
    std::set<LabelId> qs;
    for (size_t i = 0; i < n_labels; ++i) qs.insert(LabelId(labels_in[i]));
    auto reports = check_architecture(*p->proc, qs, costs->map, levels->map, security->map);
    const auto& sigma = *levels->map.security;
    const auto& s = costs->map.structure;
    if (fmt == QPROT_FORMAT_TEXT) {
      std::string t;
      for (const auto& r : reports) {
        t += "label " + std::to_string(r.label.value()) + ": " + verdict_name(r.verdict) + " (required " +
             sigma.name(r.required);
        if (r.deployed) t += ", deployed " + sigma.name(*r.deployed);
        t += ")\n";
        t += priced_text(r.minimal, s, "  ");
        if (r.gap) t += "  gap " + format_rational(*r.gap) + "\n";
      }
      return emit(t, buf, cap, needed);
    }
    json arr = json::array();
    for (const auto& r : reports) {
      json j = {{"label", r.label.value()}, {"verdict", verdict_name(r.verdict)}, {"required", sigma.name(r.required)}};
      j["deployed"] = r.deployed ? json(sigma.name(*r.deployed)) : json(nullptr);
      j["minimal"] = priced_json(r.minimal, s);
      j["gap"] = r.gap ? json(format_rational(*r.gap)) : json(nullptr);
      arr.push_back(std::move(j));
    }
    json r = {{"labels", arr}, {"inversions", std::count_if(reports.begin(), reports.end(), [](const auto& x) {
                                  return x.verdict == Verdict::Inversion;
                                })}};
    return emit(r.dump(), buf, cap, needed);
  });
}

qprot_status qprot_tree(const qprot_process* p, uint32_t label, int via_constraints, const qprot_costs* costs,
                        qprot_format fmt, char* buf, size_t cap, size_t* needed) {
  if (!p) return fail(QPROT_ERR_NULL_POINTER, "process is NULL");
  return guarded([&] {
    if (!has_label(*p->proc, label)) return unknown_label(label);
    auto f = denotation(*p->proc, LabelId(label));
    CostMap unit;
    unit.default_value = Rational(1);
    const CostMap& m = costs ? costs->map : unit;
    std::vector<PricedAttack> minimal;
    bool reachable = !f.is_false();
    if (via_constraints && reachable) {
      try {
        minimal = minimal_models_of_formula(f, m);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unsatisfiable) throw;
        reachable = false;
      }
    }
    if (fmt == QPROT_FORMAT_TEXT) {
      std::string t = "label " + std::to_string(label) + ": " + to_infix(f, true) + "\n";
      if (via_constraints) {
        if (!reachable)
          t += "unreachable\n";
        else
          t += "minimal attacks\n" + priced_text(minimal, m.structure, "  ");
      }
      return emit(t, buf, cap, needed);
    }
    json r = {{"label", label},
              {"reachable", reachable},
              {"via", via_constraints ? "constraints" : "direct"},
              {"denotation", to_infix(f, true)},
              {"prefix", to_prefix(f)}};
    if (via_constraints) {
      r["cost_structure"] = m.structure.is_numeric() ? "numeric" : "symbolic";
      r["minimal"] = priced_json(minimal, m.structure);
    }
    return emit(r.dump(), buf, cap, needed);
  });
}

qprot_status qprot_tree_dot(const qprot_process* p, uint32_t label, const char* title, char* buf, size_t cap,
                            size_t* needed) {
  if (!p) return fail(QPROT_ERR_NULL_POINTER, "process is NULL");
  return guarded([&] {
    if (!has_label(*p->proc, label)) return unknown_label(label);
    auto t = parse_tree(denotation(*p->proc, LabelId(label)));
    std::string name = title ? title : "T" + std::to_string(label);
    return emit(to_dot(t, name), buf, cap, needed);
  });
}

qprot_status qprot_simulate(const qprot_process* p, uint32_t label, const char* const* knowledge,
                            size_t n_knowledge, uint32_t depth, uint32_t unfold, qprot_format fmt, char* buf,
                            size_t cap, size_t* needed) {
  if (!p || (!knowledge && n_knowledge)) return fail(QPROT_ERR_NULL_POINTER, "process and knowledge must not be NULL");
  return guarded([&] {
    if (!has_label(*p->proc, label)) return unknown_label(label);
    std::set<Name> know;
    for (size_t i = 0; i < n_knowledge; ++i) {
      if (!knowledge[i]) return fail(QPROT_ERR_NULL_POINTER, "knowledge entry is NULL");
      know.insert(Name(knowledge[i]));
    }
    SimBounds b{depth, unfold};
    auto rep = check_underapprox(p->proc, LabelId(label), know, b);
    bool reached = rep.verdict != OracleVerdict::Vacuous;
    std::string verdict = rep.verdict == OracleVerdict::Pass ? "pass" : reached ? "fail" : "vacuous";
    if (fmt == QPROT_FORMAT_TEXT) {
      std::string t = "label " + std::to_string(label) + " with knowledge " + set_text(know) + ": " +
                      (reached ? "reached" : "not reached") + " within depth " + std::to_string(depth) + "\n";
      t += "verdict " + verdict;
      if (rep.witness) t += " (attack " + set_text(*rep.witness) + ")";
      return emit(t + "\n", buf, cap, needed);
    }
    json jk = attack_json(know);
    json r = {{"label", label}, {"knowledge", jk},   {"depth", depth},
              {"unfold", unfold}, {"reached", reached}, {"verdict", verdict}};
    r["witness"] = rep.witness ? attack_json(*rep.witness) : json(nullptr);
    return emit(r.dump(), buf, cap, needed);
  });
}

}  // extern "C"
