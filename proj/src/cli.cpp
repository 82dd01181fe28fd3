#include "netident/cli.hpp"

#include <functional>
#include <sstream>

#include "netident/engine.hpp"
#include "netident/errors.hpp"
#include "netident/netfile.hpp"
#include "netident/rng.hpp"

namespace netident::cli {

namespace {

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse: return kParseError;
    case ErrorCode::Cycle: return kCycle;
    case ErrorCode::ClassViolation: return kClassViolation;
    case ErrorCode::Invariant: return kInvariant;
    case ErrorCode::Unsupported: return kRefused;
    case ErrorCode::Refused: return kRefused;
    case ErrorCode::Overflow: return kOverflow;
  }
  return kInvariant;
}

CmdResult guarded(const std::function<CmdResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {code_for(e), "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kInvariant, "", std::string("error: ") + e.what() + "\n"};
  }
}

int summary_exit(VerdictState state) {
  switch (state) {
    case VerdictState::Identifiable: return kOk;
    case VerdictState::Unidentifiable: return kUnidentifiable;
    case VerdictState::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

AnalyzeOptions engine_options(const CommonOptions& options) {
  AnalyzeOptions out;
  out.draws = options.draws;
  out.trials = options.trials;
  out.tol = options.tol;
  return out;
}

}  // namespace

CmdResult cmd_validate(const std::string& path) {
  return guarded([&] {
    const NetworkModel model = load_network_file(path);
    std::ostringstream out;
    out << "ok: " << model.dag.node_count() << " node(s), "
        << model.dag.edges().size() << " edge(s), "
        << (model.functions ? "functions present" : "no functions") << ", pattern "
        << model.pattern.excited.size() << " excited / "
        << model.pattern.measured.size() << " measured\n";
    return CmdResult{kOk, out.str(), ""};
  });
}

CmdResult cmd_analyze(const std::string& path, const CommonOptions& options) {
  return guarded([&] {
    const NetworkModel model = load_network_file(path);
    const Report report =
        analyze(model.dag, model.pattern, model.functions, options.seed,
                engine_options(options));
    CmdResult result;
    result.out = options.json ? report_json(report, model) : report_table(report, model);
    result.exit_code = summary_exit(report.summary);
    return result;
  });
}

CmdResult cmd_patterns(const std::string& path, const CommonOptions& options) {
  return guarded([&] {
    const NetworkModel model = load_network_file(path);
    const auto patterns = enumerate_valid_patterns(model.dag, options.limit);
    std::ostringstream out;
    out << "valid patterns with exactly n actions (seed " << options.seed
        << ", limit " << options.limit << "):\n";
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      const Report report = analyze(model.dag, patterns[k], model.functions,
                                    options.seed, engine_options(options));
      out << "  [" << k << "] excited {";
      bool first = true;
      for (NodeId i : patterns[k].excited) {
        out << (first ? "" : ",") << model.name_of(i);
        first = false;
      }
      out << "} measured {";
      first = true;
      for (NodeId i : patterns[k].measured) {
        out << (first ? "" : ",") << model.name_of(i);
        first = false;
      }
      out << "} -> " << to_string(report.summary) << "\n";
    }
    return CmdResult{kOk, out.str(), ""};
  });
}

CmdResult cmd_witness(const std::string& path, const CommonOptions& options) {
  return guarded([&] {
    const NetworkModel model = load_network_file(path);
    const Dag& dag = model.dag;
    const IdentificationPattern& p = model.pattern;
    const FunctionSet funcs = model.functions
                                  ? *model.functions
                                  : FunctionSet::random_cubics(dag, options.seed);

    auto node_arg = [&]() -> NodeId {
      if (options.node.empty()) {
        throw Error(ErrorCode::Refused, "this witness kind needs --node");
      }
      return model.id_of(options.node);
    };
    auto gamma_or = [&](double fallback) {
      return options.gamma != 0.0 ? options.gamma : fallback;
    };

    Witness w;
    if (options.kind == "UnexcitedSource") {
      const NodeId source = node_arg();
      if (dag.out_neighbors(source).empty()) {
        throw Error(ErrorCode::Refused, "node has no out-neighbors");
      }
      w = witness_unexcited_source(dag, funcs, p, source,
                                   dag.out_neighbors(source).front(), options.seed);
    } else if (options.kind == "UnmeasuredSink") {
      const NodeId sink = node_arg();
      if (dag.in_neighbors(sink).empty()) {
        throw Error(ErrorCode::Refused, "node has no in-neighbors");
      }
      w = witness_unmeasured_sink(dag, funcs, p, sink,
                                  dag.in_neighbors(sink).front(), options.seed);
    } else if (options.kind == "ScalingGamma") {
      w = witness_scaling(dag, funcs, p, node_arg(), gamma_or(2.0));
    } else if (options.kind == "CollinearNeighbors") {
      w = witness_collinear(dag, funcs, p, gamma_or(2.0));
    } else if (options.kind == "CubicBridge") {
      if (!model.functions) {
        throw Error(ErrorCode::Refused,
                    "the cubic bridge takes its coefficients from the file; add "
                    "coeffs to every edge");
      }
      auto leading = [&](NodeId head, NodeId tail) {
        const EdgeFunction& f = funcs.at(head, tail);
        if (!f.is_monomial() || f.degree() != 3) {
          throw Error(ErrorCode::Refused,
                      "the cubic bridge needs pure cubic monomials on every edge");
        }
        return f.leading_coefficient();
      };
      w = witness_cubic_bridge(dag,
                               {leading(2, 1), leading(3, 1), leading(4, 2),
                                leading(4, 3)},
                               gamma_or(0.5));
    } else {
      throw Error(ErrorCode::Refused,
                  "unknown witness kind '" + options.kind +
                      "'; expected UnexcitedSource, UnmeasuredSink, ScalingGamma, "
                      "CollinearNeighbors or CubicBridge");
    }

    w = verify_witness(dag, p, std::move(w), options.trials, 0, options.tol,
                       mix_seed(options.seed, 0x76657269ull));

    NetworkModel modified = model;
    modified.functions = w.modified;
    CmdResult result;
    std::ostringstream out;
    out << print_network_file(modified);
    out << "# witness kind=" << to_string(w.kind);
    if (w.gamma) out << " gamma=" << format_double(*w.gamma);
    out << " verified=" << (w.verified ? "yes" : "no")
        << " max_deviation=" << format_double(w.max_deviation) << "\n";
    result.out = out.str();
    result.exit_code = w.verified ? kOk : kVerificationFailed;
    if (!w.verified) {
      result.err = "witness failed verification (max deviation " +
                   format_double(w.max_deviation) + ")\n";
    }
    return result;
  });
}

CmdResult cmd_simulate(const std::string& path, const CommonOptions& options) {
  return guarded([&] {
    const NetworkModel model = load_network_file(path);
    if (!model.functions) {
      throw Error(ErrorCode::Refused,
                  "simulation needs edge functions; add coeffs to every edge");
    }
    const ExcitationSchedule sched = ExcitationSchedule::random(
        model.pattern.excited, options.horizon, options.seed);
    const Trajectory traj = simulate(model.dag, *model.functions, sched);
    return CmdResult{kOk, trajectory_csv(traj, model.names), ""};
  });
}

CmdResult cmd_export(const std::string& path) {
  return guarded([&] {
    const NetworkModel model = load_network_file(path);
    return CmdResult{kOk, to_dot(model), ""};
  });
}

}  // namespace netident::cli
