#include "netident/netfile.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netident/errors.hpp"

namespace netident {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& filename, int line,
                             const std::string& message) {
  throw Error(ErrorCode::Parse,
              filename + ":" + std::to_string(line) + ": " + message);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

double parse_number(const std::string& tok, const std::string& filename, int line) {
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    parse_fail(filename, line, "'" + tok + "' is not a number");
  }
  return x;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

NodeId NetworkModel::id_of(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return static_cast<NodeId>(k + 1);
  }
  throw Error(ErrorCode::Parse, "unknown node name '" + name + "'");
}

const std::string& NetworkModel::name_of(NodeId id) const {
  return names.at(static_cast<std::size_t>(id - 1));
}

NetworkModel parse_network_file(const std::string& text, const std::string& filename) {
  std::vector<std::string> names;
  std::map<std::string, NodeId> ids;
  struct RawEdge {
    NodeId head = 0, tail = 0;
    int delay = 1;
    std::optional<std::vector<double>> coeffs;
    int line = 0;
  };
  std::vector<RawEdge> raw_edges;
  std::set<NodeId> excited, measured;
  bool saw_header = false;

  auto lookup = [&](const std::string& name, int line) -> NodeId {
    auto it = ids.find(name);
    if (it == ids.end()) parse_fail(filename, line, "unknown node '" + name + "'");
    return it->second;
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    if (!saw_header) {
      if (tok.size() != 2 || tok[0] != "netident" || tok[1] != "v1") {
        parse_fail(filename, lineno, "expected header 'netident v1'");
      }
      saw_header = true;
      continue;
    }
    if (tok[0] == "node") {
      if (tok.size() != 2) parse_fail(filename, lineno, "usage: node <name>");
      if (ids.count(tok[1])) parse_fail(filename, lineno, "duplicate node '" + tok[1] + "'");
      names.push_back(tok[1]);
      ids[tok[1]] = static_cast<NodeId>(names.size());
    } else if (tok[0] == "edge") {
      if (tok.size() < 5 || tok[3] != "delay") {
        parse_fail(filename, lineno,
                   "usage: edge <head> <tail> delay <m> [coeffs <a_1> ...]");
      }
      RawEdge e;
      e.head = lookup(tok[1], lineno);
      e.tail = lookup(tok[2], lineno);
      const double delay = parse_number(tok[4], filename, lineno);
      if (delay < 1 || delay != static_cast<int>(delay)) {
        parse_fail(filename, lineno, "delay must be a positive integer");
      }
      e.delay = static_cast<int>(delay);
      e.line = lineno;
      if (tok.size() > 5) {
        if (tok[5] != "coeffs") {
          parse_fail(filename, lineno, "unknown field '" + tok[5] + "'");
        }
        if (tok.size() == 6) parse_fail(filename, lineno, "coeffs needs at least one value");
        std::vector<double> coeffs;
        for (std::size_t k = 6; k < tok.size(); ++k) {
          coeffs.push_back(parse_number(tok[k], filename, lineno));
        }
        e.coeffs = std::move(coeffs);
      }
      raw_edges.push_back(std::move(e));
    } else if (tok[0] == "pattern") {
      if (tok.size() < 2 || (tok[1] != "excited" && tok[1] != "measured")) {
        parse_fail(filename, lineno, "usage: pattern excited|measured <name> ...");
      }
      auto& target = (tok[1] == "excited") ? excited : measured;
      for (std::size_t k = 2; k < tok.size(); ++k) {
        target.insert(lookup(tok[k], lineno));
      }
    } else {
      parse_fail(filename, lineno, "unknown field '" + tok[0] + "'");
    }
  }
  if (!saw_header) parse_fail(filename, lineno ? lineno : 1, "missing 'netident v1' header");
  if (names.empty()) parse_fail(filename, lineno, "no nodes declared");

  std::vector<Edge> edges;
  bool any_coeffs = false, all_coeffs = true;
  for (const RawEdge& e : raw_edges) {
    edges.push_back({e.head, e.tail, e.delay});
    any_coeffs |= e.coeffs.has_value();
    all_coeffs &= e.coeffs.has_value();
  }
  if (any_coeffs && !all_coeffs) {
    for (const RawEdge& e : raw_edges) {
      if (!e.coeffs) {
        parse_fail(filename, e.line,
                   "edge has no coeffs while other edges do; either all edges "
                   "carry coefficients or none");
      }
    }
  }

  Dag dag = Dag::create(static_cast<int>(names.size()), edges);
  std::optional<FunctionSet> functions;
  if (any_coeffs) {
    std::map<EdgeKey, EdgeFunction> funcs;
    for (const RawEdge& e : raw_edges) {
      funcs.emplace(EdgeKey{e.head, e.tail}, EdgeFunction(*e.coeffs, e.delay));
    }
    functions = FunctionSet::for_dag(dag, std::move(funcs));
  }

  return NetworkModel{std::move(names), std::move(dag), std::move(functions),
                      IdentificationPattern{std::move(excited), std::move(measured)}};
}

NetworkModel load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network_file(buf.str(), path);
}

std::string print_network_file(const NetworkModel& model) {
  std::ostringstream out;
  out << "netident v1\n";
  for (const std::string& name : model.names) out << "node " << name << "\n";
  for (const Edge& e : model.dag.edges()) {
    out << "edge " << model.name_of(e.head) << " " << model.name_of(e.tail)
        << " delay " << e.delay;
    if (model.functions) {
      out << " coeffs";
      for (double a : model.functions->at(key_of(e)).coefficients()) {
        out << " " << format_double(a);
      }
    }
    out << "\n";
  }
  out << "pattern excited";
  for (NodeId i : model.pattern.excited) out << " " << model.name_of(i);
  out << "\npattern measured";
  for (NodeId i : model.pattern.measured) out << " " << model.name_of(i);
  out << "\n";
  return out.str();
}

std::string to_dot(const NetworkModel& model) {
  std::ostringstream out;
  out << "digraph network {\n  rankdir=LR;\n";
  for (NodeId i = 1; i <= model.dag.node_count(); ++i) {
    const bool e = model.pattern.is_excited(i);
    const bool m = model.pattern.is_measured(i);
    out << "  \"" << model.name_of(i) << "\" [";
    if (e && m) {
      out << "style=filled, fillcolor=\"white;0.5:gray70\", gradientangle=90";
    } else if (m) {
      out << "style=filled, fillcolor=gray70";
    } else if (e) {
      out << "style=filled, fillcolor=white";
    } else {
      out << "style=dashed";
    }
    out << "];\n";
  }
  for (const Edge& edge : model.dag.edges()) {
    out << "  \"" << model.name_of(edge.tail) << "\" -> \"" << model.name_of(edge.head)
        << "\" [label=\"f_{" << model.name_of(edge.head) << ","
        << model.name_of(edge.tail) << "} m=" << edge.delay << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

std::string pattern_str(const IdentificationPattern& p, const NetworkModel& model) {
  std::ostringstream out;
  out << "excited {";
  bool first = true;
  for (NodeId i : p.excited) {
    out << (first ? "" : ",") << model.name_of(i);
    first = false;
  }
  out << "} measured {";
  first = true;
  for (NodeId i : p.measured) {
    out << (first ? "" : ",") << model.name_of(i);
    first = false;
  }
  out << "}";
  return out.str();
}

std::string edge_name(const EdgeKey& key, const NetworkModel& model) {
  return "f_{" + model.name_of(key.first) + "," + model.name_of(key.second) + "}";
}

}  // namespace

std::string report_table(const Report& report, const NetworkModel& model) {
  std::ostringstream out;
  out << "netident analysis (seed " << report.seed << ")\n";
  out << "pattern:  " << pattern_str(report.pattern_given, model) << "\n";
  if (report.reduced) {
    out << "analyzed: " << pattern_str(report.pattern_used, model)
        << "  [full-measurement companion]\n";
  }
  if (!report.necessary.ok) {
    out << "necessary-condition violations:";
    for (const auto& v : report.necessary.violations) {
      out << " " << to_string(v.kind) << "(" << model.name_of(v.node) << ")";
    }
    out << "\n";
  }
  if (report.tree_fast_path) out << "tree fast path: yes\n";
  if (report.functions_generated) {
    out << "functions: random cubics generated from the seed\n";
  }
  out << "summary: " << to_string(report.summary) << "\n\n";
  out << "edge verdicts:\n";
  for (const auto& [key, verdict] : report.per_edge) {
    out << "  " << edge_name(key, model) << "  " << to_string(verdict.state) << "  ("
        << verdict.reason << ")\n";
  }
  if (!report.witnesses.empty()) {
    out << "\nwitnesses:\n";
    for (std::size_t k = 0; k < report.witnesses.size(); ++k) {
      const Witness& w = report.witnesses[k];
      out << "  [" << k << "] " << to_string(w.kind);
      if (w.gamma) out << " gamma=" << format_double(*w.gamma);
      out << " verified=" << (w.verified ? "yes" : "no")
          << " max_deviation=" << format_double(w.max_deviation) << " edges:";
      for (const EdgeKey& key : w.modified_edges) out << " " << edge_name(key, model);
      out << "\n";
    }
  }
  if (!report.diagnostics.empty()) {
    out << "\nnode diagnostics:\n";
    for (const NodeDiagnostic& d : report.diagnostics) {
      out << "  node " << model.name_of(d.node) << ": disjoint paths "
          << d.certificate.achieved << "/" << d.certificate.required;
      if (d.probe) {
        out << ", probe rank " << d.probe->max_rank << "/"
            << d.probe->structural_bound << " in " << d.probe->draws_used
            << " draw(s)";
        if (d.probe->undetermined) out << " [undetermined]";
      }
      out << "\n";
      for (const auto& path : d.certificate.paths) {
        out << "    path:";
        for (NodeId v : path) out << " " << model.name_of(v);
        out << "\n";
      }
    }
  }
  return out.str();
}

std::string report_json(const Report& report, const NetworkModel& model) {
  ordered_json j;
  j["seed"] = report.seed;
  j["summary"] = to_string(report.summary);
  auto pattern_json = [&](const IdentificationPattern& p) {
    ordered_json pj;
    pj["excited"] = ordered_json::array();
    pj["measured"] = ordered_json::array();
    for (NodeId i : p.excited) pj["excited"].push_back(model.name_of(i));
    for (NodeId i : p.measured) pj["measured"].push_back(model.name_of(i));
    return pj;
  };
  j["pattern_given"] = pattern_json(report.pattern_given);
  j["pattern_used"] = pattern_json(report.pattern_used);
  j["reduced"] = report.reduced;
  if (report.reduced) j["reduction_note"] = report.reduction_note;
  j["tree_fast_path"] = report.tree_fast_path;
  j["functions_generated"] = report.functions_generated;

  j["necessary_ok"] = report.necessary.ok;
  j["violations"] = ordered_json::array();
  for (const auto& v : report.necessary.violations) {
    j["violations"].push_back(
        {{"kind", to_string(v.kind)}, {"node", model.name_of(v.node)}});
  }

  j["edges"] = ordered_json::array();
  for (const auto& [key, verdict] : report.per_edge) {
    ordered_json ej;
    ej["head"] = model.name_of(key.first);
    ej["tail"] = model.name_of(key.second);
    ej["verdict"] = to_string(verdict.state);
    ej["reason"] = verdict.reason;
    if (verdict.witness_index >= 0) {
      ej["witness"] = verdict.witness_index;
    } else {
      ej["witness"] = nullptr;
    }
    j["edges"].push_back(std::move(ej));
  }

  j["witnesses"] = ordered_json::array();
  for (const Witness& w : report.witnesses) {
    ordered_json wj;
    wj["kind"] = to_string(w.kind);
    if (w.gamma) {
      wj["gamma"] = *w.gamma;
    } else {
      wj["gamma"] = nullptr;
    }
    wj["verified"] = w.verified;
    wj["max_deviation"] = w.max_deviation;
    wj["modified_edges"] = ordered_json::array();
    for (const EdgeKey& key : w.modified_edges) {
      wj["modified_edges"].push_back(
          {{"head", model.name_of(key.first)}, {"tail", model.name_of(key.second)}});
    }
    wj["modified_functions"] = ordered_json::array();
    for (const EdgeKey& key : w.modified_edges) {
      wj["modified_functions"].push_back(
          {{"head", model.name_of(key.first)},
           {"tail", model.name_of(key.second)},
           {"coefficients", w.modified.at(key).coefficients()}});
    }
    j["witnesses"].push_back(std::move(wj));
  }

  j["nodes"] = ordered_json::array();
  for (const NodeDiagnostic& d : report.diagnostics) {
    ordered_json nj;
    nj["node"] = model.name_of(d.node);
    nj["required"] = d.certificate.required;
    nj["achieved"] = d.certificate.achieved;
    nj["paths"] = ordered_json::array();
    for (const auto& path : d.certificate.paths) {
      ordered_json pj = ordered_json::array();
      for (NodeId v : path) pj.push_back(model.name_of(v));
      nj["paths"].push_back(std::move(pj));
    }
    if (d.probe) {
      ordered_json pj;
      pj["structural_bound"] = d.probe->structural_bound;
      pj["max_rank"] = d.probe->max_rank;
      pj["attained"] = d.probe->attained;
      pj["undetermined"] = d.probe->undetermined;
      pj["draws_used"] = d.probe->draws_used;
      if (d.probe->has_witness_point) {
        pj["witness_point"] = ordered_json::array();
        for (Eigen::Index k = 0; k < d.probe->witness_point.size(); ++k) {
          pj["witness_point"].push_back(d.probe->witness_point[k]);
        }
      } else {
        pj["witness_point"] = nullptr;
      }
      nj["probe"] = std::move(pj);
    } else {
      nj["probe"] = nullptr;
    }
    j["nodes"].push_back(std::move(nj));
  }

  return j.dump(2) + "\n";
}

}  // namespace netident
