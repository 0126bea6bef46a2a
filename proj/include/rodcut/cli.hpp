#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rodcut/cuts.hpp"
#include "rodcut/depth_graph.hpp"
#include "rodcut/instances.hpp"
#include "rodcut/io.hpp"
#include "rodcut/mixed_fvs.hpp"

namespace rodcut::cli {

/// Process exit codes.
enum Exit : int { ok = 0, no = 1, degenerate = 2, usage = 3, resource = 4 };

namespace detail {

inline std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

inline std::string describe(const SubSegment& p) {
  if (p.t_lo == 0 && p.t_hi == 1) return p.parent_id;
  return p.parent_id + "[" + to_string(p.t_lo) + "," + to_string(p.t_hi) + "]";
}

inline std::string describe(const std::vector<SubSegment>& cycle) {
  std::string out;
  for (const auto& p : cycle) out += describe(p) + " ≻ ";
  return out + describe(cycle.front());
}

struct Loaded {
  std::vector<Segment3> segments;
  DepthGraph graph;
};

inline Loaded load(const std::string& path) {
  Loaded l{parse_instance(read_file(path)), {}};
  l.graph = build_depth_graph(l.segments);
  return l;
}

}  // namespace detail

inline int cmd_check(const std::string& input, std::ostream& out) {
  const auto l = detail::load(input);
  out << "crossings: " << l.graph.index.crossings().size() << "\n";
  const auto report = verify_acyclic(l.graph.index, {});
  if (report.acyclic) {
    out << "acyclic\n";
    return ok;
  }
  out << "cyclic: " << detail::describe(report.witness) << "\n";
  return no;
}

inline int cmd_solve(const std::string& input, std::optional<int> k, const SolverOptions& options, std::ostream& out,
                     std::ostream& err) {
  const auto l = detail::load(input);
  std::vector<Vertex> fvs;
  if (k) {
    auto result = fvs_decide(l.graph.graph, *k, options);
    if (!result.found()) {
      err << "no solution with at most " << *k << " cuts\n";
      return no;
    }
    fvs = *result.solution;
  } else {
    fvs = fvs_minimum(l.graph.graph, options);
  }
  const CutSet cuts = fvs_to_cuts(fvs, l.graph.index);
  if (!verify_acyclic(l.graph.index, cuts).acyclic)
    throw std::logic_error("internal error: solver output leaves a depth cycle");
  out << emit_cuts(cuts);
  return ok;
}

inline int cmd_graph(const std::string& input, bool dot, std::ostream& out) {
  const auto l = detail::load(input);
  if (dot) {
    out << emit_dot(l.graph);
  } else {
    out << "vertices: " << l.graph.graph.vertex_count() << "\n"
        << "edges: " << l.graph.graph.edges().size() << "\n"
        << "arcs: " << l.graph.graph.arcs().size() << "\n";
  }
  return ok;
}

inline int cmd_verify(const std::string& input, const std::string& cuts_path, std::ostream& out) {
  const auto l = detail::load(input);
  const CutSet cuts = parse_cuts(detail::read_file(cuts_path));
  check_cuts_against(cuts, l.graph.index);
  const auto report = verify_acyclic(l.graph.index, cuts);
  if (report.acyclic) {
    out << "acyclic with " << cuts.size() << " cuts\n";
    return ok;
  }
  out << "cyclic: " << detail::describe(report.witness) << "\n";
  return no;
}

inline int cmd_gen(const GenSpec& spec, std::ostream& out) {
  out << emit_instance(generate(spec));
  return ok;
}

inline int cmd_render(const std::string& input, const std::string& cuts_path, std::ostream& out) {
  const auto l = detail::load(input);
  CutSet cuts;
  if (!cuts_path.empty()) {
    cuts = parse_cuts(detail::read_file(cuts_path));
    check_cuts_against(cuts, l.graph.index);
  }
  out << emit_svg(l.segments, l.graph.index, cuts);
  return ok;
}

/// Entry point shared by the rodcut binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum cuts that remove all depth cycles among 3D rods"};
  app.require_subcommand(1);

  std::string input, cuts_path;
  std::optional<int> k;
  bool min = false, dot = false;
  SolverOptions options;
  GenSpec spec;
  std::string kind = "random";
  std::int64_t range = 64;

  auto add_input = [&](CLI::App* sub) { sub->add_option("-i,--input", input, "instance JSON ('-' for stdin)")->required(); };

  auto* check = app.add_subcommand("check", "report crossings and any depth cycle");
  add_input(check);

  auto* solve = app.add_subcommand("solve", "minimum cut set, or decide whether k cuts suffice");
  add_input(solve);
  auto* k_opt = solve->add_option("-k", k, "cut budget")->check(CLI::NonNegativeNumber);
  auto* min_opt = solve->add_flag("--min", min, "find the minimum");
  k_opt->excludes(min_opt);
  solve->add_option("--threads", options.threads, "solver threads")->check(CLI::PositiveNumber);
  solve->add_option("--node-budget", options.node_budget, "branching node budget");

  auto* graph = app.add_subcommand("graph", "print the mixed graph");
  add_input(graph);
  graph->add_flag("--dot", dot, "Graphviz output");

  auto* verify = app.add_subcommand("verify", "check a cuts document");
  add_input(verify);
  verify->add_option("--cuts", cuts_path, "cuts JSON")->required();

  auto* gen = app.add_subcommand("gen", "write a generated instance");
  gen->add_option("--kind", kind, "triple | random | weave")->check(CLI::IsMember({"triple", "random", "weave"}));
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("-n,--count", spec.count, "number of rods (random)");
  gen->add_option("--rows", spec.rows, "weave rows");
  gen->add_option("--cols", spec.cols, "weave columns");
  gen->add_option("--range", range, "coordinates in [-range, range] (random)")->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "static SVG of the projection");
  add_input(render);
  render->add_option("--cuts", cuts_path, "cuts JSON to mark");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (check->parsed()) return cmd_check(input, out);
    if (solve->parsed()) {
      if (!k && !min) {
        err << "solve needs -k or --min\n";
        return usage;
      }
      return cmd_solve(input, k, options, out, err);
    }
    if (graph->parsed()) return cmd_graph(input, dot, out);
    if (verify->parsed()) return cmd_verify(input, cuts_path, out);
    if (gen->parsed()) {
      spec.kind = kind == "triple" ? GenKind::triple : kind == "weave" ? GenKind::weave : GenKind::random;
      spec.lo = -range, spec.hi = range;
      return cmd_gen(spec, out);
    }
    if (render->parsed()) return cmd_render(input, cuts_path, out);
  } catch (const DegenerateInput& e) {
    err << e.what() << "\n";
    return degenerate;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return resource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace rodcut::cli
