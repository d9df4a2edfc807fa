// qprot command-line front end. Talks to the analysis only through the C API.

#include <qprot/qprot.h>

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kUnreachable = 3, kConfig = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(qprot_status s) {
  switch (s) {
    case QPROT_ERR_PARSE:
    case QPROT_ERR_VALIDATION:
      return kInput;
    case QPROT_ERR_UNKNOWN_LABEL:
    case QPROT_ERR_UNSATISFIABLE:
      return kUnreachable;
    case QPROT_ERR_CONFIG:
      return kConfig;
    default:
      return kUsage;
  }
}

void check(qprot_status s) {
  if (s != QPROT_OK) throw Failure{exit_for(s), qprot_last_error()};
}

std::string read_file(const std::string& path, int code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{code, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs an output-producing API call with the size-query protocol.
template <class F>
std::string fetch(F call) {
  size_t needed = 0;
  qprot_status s = call(nullptr, 0, &needed);
  if (s == QPROT_OK) return {};
  if (s != QPROT_ERR_INSUFFICIENT_BUFFER) check(s);
  std::string buf(needed, '\0');
  check(call(buf.data(), buf.size(), &needed));
  buf.resize(needed - 1);
  return buf;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using Process = Handle<qprot_process, qprot_process_free>;
using Costs = Handle<qprot_costs, qprot_costs_free>;
using Levels = Handle<qprot_levels, qprot_levels_free>;
using Security = Handle<qprot_security, qprot_security_free>;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ','))
    if (auto b = cur.find_first_not_of(" \t"); b != std::string::npos)
      out.push_back(cur.substr(b, cur.find_last_not_of(" \t") - b + 1));
  return out;
}

std::vector<uint32_t> parse_labels(const std::string& s) {
  std::vector<uint32_t> out;
  for (const auto& t : split_list(s)) {
    if (t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9)
      throw Failure{kUsage, "bad label '" + t + "'"};
    out.push_back(static_cast<uint32_t>(std::stoul(t)));
  }
  return out;
}

struct Options {
  std::string file;
  uint32_t label = 0;
  std::string labels;
  std::string costs, lattice, levels, security, security_lattice;
  std::string dot, title, via = "direct", know;
  uint32_t depth = 12, unfold = 2;
  bool json = false;
};

void load_process(const Options& o, Process& p) {
  check(qprot_process_parse(read_file(o.file, kUsage).c_str(), &p.p));
}

void load_costs(const Options& o, Costs& c) {
  auto text = read_file(o.costs, kConfig);
  std::optional<std::string> lat;
  if (!o.lattice.empty()) lat = read_file(o.lattice, kConfig);
  check(qprot_costs_load(text.c_str(), lat ? lat->c_str() : nullptr, &c.p));
}

// Result text in the requested format plus the exit status it implies.
struct Outcome {
  json result;
  std::string text;
  int code = kOk;
};

Outcome run(const std::string& cmd, const Options& o) {
  Outcome out;
  Process p;
  load_process(o, p);
  auto both = [&](auto call) {
    out.result = json::parse(fetch([&](char* b, size_t c, size_t* n) { return call(QPROT_FORMAT_JSON, b, c, n); }));
    if (!o.json) out.text = fetch([&](char* b, size_t c, size_t* n) { return call(QPROT_FORMAT_TEXT, b, c, n); });
    if (out.result.contains("reachable") && !out.result["reachable"].get<bool>()) out.code = kUnreachable;
  };
  if (cmd == "parse") {
    both([&](qprot_format f, char* b, size_t c, size_t* n) { return qprot_process_describe(p.p, f, b, c, n); });
  } else if (cmd == "discover") {
    both([&](qprot_format f, char* b, size_t c, size_t* n) { return qprot_discover(p.p, o.label, f, b, c, n); });
  } else if (cmd == "quantify") {
    Costs costs;
    load_costs(o, costs);
    both([&](qprot_format f, char* b, size_t c, size_t* n) {
      return qprot_quantify(p.p, o.label, costs.p, f, b, c, n);
    });
  } else if (cmd == "check") {
    Costs costs;
    load_costs(o, costs);
    Levels levels;
    auto ltext = read_file(o.levels, kConfig);
    std::optional<std::string> sl;
    if (!o.security_lattice.empty()) sl = read_file(o.security_lattice, kConfig);
    check(qprot_levels_load(ltext.c_str(), costs.p, sl ? sl->c_str() : nullptr, &levels.p));
    Security sec;
    check(qprot_security_load(read_file(o.security, kConfig).c_str(), levels.p, &sec.p));
    auto labs = parse_labels(o.labels);
    both([&](qprot_format f, char* b, size_t c, size_t* n) {
      return qprot_check(p.p, labs.data(), labs.size(), costs.p, levels.p, sec.p, f, b, c, n);
    });
  } else if (cmd == "tree") {
    Costs costs;
    if (!o.costs.empty()) load_costs(o, costs);
    int via = o.via == "constraints";
    both([&](qprot_format f, char* b, size_t c, size_t* n) {
      return qprot_tree(p.p, o.label, via, costs.p, f, b, c, n);
    });
    if (!o.dot.empty()) {
      auto dot = fetch([&](char* b, size_t c, size_t* n) {
        return qprot_tree_dot(p.p, o.label, o.title.empty() ? nullptr : o.title.c_str(), b, c, n);
      });
      if (o.dot == "-") {
        out.text += dot;
      } else {
        std::ofstream f(o.dot, std::ios::binary);
        if (!f || !(f << dot)) throw Failure{kUsage, "cannot write " + o.dot};
      }
    }
  } else if (cmd == "simulate") {
    auto names = split_list(o.know);
    std::vector<const char*> ptrs;
    for (const auto& n : names) ptrs.push_back(n.c_str());
    both([&](qprot_format f, char* b, size_t c, size_t* n) {
      return qprot_simulate(p.p, o.label, ptrs.data(), ptrs.size(), o.depth, o.unfold, f, b, c, n);
    });
  }
  return out;
}

json input_json(const std::string& cmd, const Options& o) {
  json in = {{"file", o.file}};
  if (cmd == "parse") return in;
  if (cmd == "check") {
    in["labels"] = parse_labels(o.labels);
  } else {
    in["label"] = o.label;
  }
  if (!o.costs.empty()) in["costs"] = o.costs;
  if (!o.lattice.empty()) in["lattice"] = o.lattice;
  if (cmd == "check") {
    in["levels"] = o.levels;
    in["security"] = o.security;
    if (!o.security_lattice.empty()) in["security_lattice"] = o.security_lattice;
  }
  if (cmd == "tree") in["via"] = o.via;
  if (cmd == "simulate") {
    in["knowledge"] = split_list(o.know);
    in["depth"] = o.depth;
    in["unfold"] = o.unfold;
  }
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static protection analysis for value-passing quality calculus processes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qprot_version()));
  Options o;

  auto common = [&](CLI::App* sub, bool with_label) {
    sub->add_option("file", o.file, "process source")->required();
    if (with_label) sub->add_option("--label,-l", o.label, "target label")->required();
    sub->add_flag("--json", o.json, "emit JSON");
  };
  auto* parse = app.add_subcommand("parse", "parse and validate a process");
  common(parse, false);
  auto* discover = app.add_subcommand("discover", "attacks reaching a label");
  common(discover, true);
  auto* quantify = app.add_subcommand("quantify", "cost-minimal attacks reaching a label");
  common(quantify, true);
  quantify->add_option("--costs", o.costs, "cost map")->required();
  quantify->add_option("--lattice", o.lattice, "symbolic cost lattice");
  auto* chk = app.add_subcommand("check", "inversion-of-protection check");
  common(chk, false);
  chk->add_option("--labels", o.labels, "comma-separated labels")->required();
  chk->add_option("--costs", o.costs, "cost map")->required();
  chk->add_option("--lattice", o.lattice, "symbolic cost lattice");
  chk->add_option("--levels", o.levels, "level map")->required();
  chk->add_option("--security", o.security, "security map")->required();
  chk->add_option("--security-lattice", o.security_lattice, "security lattice");
  auto* tree = app.add_subcommand("tree", "attack-tree denotation of a label");
  common(tree, true);
  tree->add_option("--dot", o.dot, "write DOT to this path ('-' for standard output)");
  tree->add_option("--title", o.title, "graph label");
  tree->add_option("--via", o.via, "direct or constraints")->check(CLI::IsMember({"direct", "constraints"}));
  tree->add_option("--costs", o.costs, "cost map for --via constraints");
  tree->add_option("--lattice", o.lattice, "symbolic cost lattice");
  auto* sim = app.add_subcommand("simulate", "bounded simulation oracle");
  common(sim, true);
  sim->add_option("--know", o.know, "comma-separated channels known to the attacker");
  sim->add_option("--depth", o.depth, "transition bound");
  sim->add_option("--unfold", o.unfold, "copies per replication");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  json env = {{"command", cmd}};
  try {
    env["input"] = input_json(cmd, o);
    auto out = run(cmd, o);
    if (o.json) {
      env["result"] = out.result;
      env["diagnostics"] = json::array();
      if (out.code == kUnreachable)
        env["diagnostics"].push_back({{"severity", "warning"}, {"message", "label is unreachable"}});
      std::cout << env.dump(2) << "\n";
    } else {
      std::cout << out.text;
    }
    return out.code;
  } catch (const Failure& f) {
    if (o.json) {
      if (!env.contains("input")) env["input"] = nullptr;
      env["result"] = nullptr;
      env["diagnostics"] = json::array({{{"severity", "error"}, {"message", f.message}}});
      std::cout << env.dump(2) << "\n";
    } else {
      std::cerr << "qprot " << cmd << ": " << f.message << "\n";
    }
    return f.code;
  }
}
