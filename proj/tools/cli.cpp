#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "aqsp/baseline.hpp"
#include "aqsp/bench.hpp"
#include "aqsp/generators.hpp"
#include "aqsp/graph_io.hpp"
#include "aqsp/solvers.hpp"

namespace aqsp::cli {

namespace {

struct GenerateArgs {
  std::string family = "erdos";
  NodeId nodes = 100;
  double p = 0.8;
  std::uint32_t degree = 8;
  std::size_t rows = 100;
  std::size_t cols = 100;
  int neighbors = 8;
  bool wrap = false;
  std::string elevation;
  double cell_size = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double relief = 4.0;
  std::string quad = "turn";
  double turn_weight = 1.0;
  double lambda = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

struct SolveArgs {
  std::string graph;
  std::optional<NodeId> source;
  std::optional<NodeId> target;
  std::string algo = "aqastar";
  double lambda = 1.0;
  bool exhaustive = false;
  bool check_alpha = false;
  std::size_t max_print = 50;
};

struct BenchArgs {
  std::string family = "erdos";
  std::vector<std::uint64_t> sizes;
  double p = 0.8;
  std::uint32_t degree = 8;
  int neighbors = 8;
  std::string quad = "turn";
  double turn_weight = 1.0;
  double relief = 4.0;
  bool materialize = false;
  std::vector<double> lambdas{1.0};
  std::uint32_t reps = 1;
  std::vector<std::string> algos{"aqd", "aqastar", "lin"};
  std::uint64_t seed = 1;
  std::string out = "bench_out";
  double mem_limit_gb = 4.0;
  bool quiet = false;
};

struct CheckArgs {
  std::string graph;
  std::optional<NodeId> source;
  std::optional<NodeId> target;
  double lambda = 1.0;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GridQuad parse_grid_quad(const std::string& name) {
  if (name == "zero") return GridQuad::kZero;
  if (name == "turn") return GridQuad::kTurnPenalty;
  if (name == "table") return GridQuad::kTable;
  throw InputError("unknown --quad '" + name + "' (expected zero, turn or table)");
}

std::string print_walk(const Walk& w, std::size_t max_print) {
  std::ostringstream os;
  const std::size_t shown = std::min(w.size(), max_print == 0 ? w.size() : max_print);
  for (std::size_t i = 0; i < shown; ++i) os << (i ? " " : "") << w[i];
  if (shown < w.size()) os << " ... (" << w.size() - shown << " more) " << w.back();
  return os.str();
}

std::pair<NodeId, NodeId> endpoints(const QuadGraph& g, std::optional<NodeId> s, std::optional<NodeId> t) {
  if (g.node_count() < 2) throw InputError("graph has fewer than two nodes");
  const NodeId src = s.value_or(0);
  const NodeId dst = t.value_or(g.node_count() - 1);
  if (src >= g.node_count() || dst >= g.node_count()) throw InputError("source or target outside the graph");
  if (src == dst) throw InputError("source and target must differ");
  return {src, dst};
}

QuadGraph load_graph(const std::string& path, double lambda) {
  QuadGraph g = read_aqg_file(path);
  if (lambda != 1.0) g = g.scale_quadratic(lambda);
  return g;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GenSpec spec;
  spec.cost_seed = a.seed;
  spec.lambda = a.lambda;
  const auto family = parse_family(a.family);
  if (!family) throw InputError("unknown --family '" + a.family + "'");
  switch (*family) {
    case Family::kErdos:
      spec.kind = ErdosRenyiSpec{a.nodes, a.p};
      break;
    case Family::kConfigModel:
      spec.kind = ConfigurationSpec{a.nodes, a.degree};
      break;
    case Family::kGrid:
    case Family::kGridStress: {
      GridSpec grid;
      grid.elevation = a.elevation.empty()
                           ? synthetic_elevation(a.rows, a.cols, a.seed, a.relief, a.cell_size)
                           : read_elevation_csv_file(a.elevation, a.cell_size, a.origin_x, a.origin_y);
      grid.options.neighbors = a.neighbors;
      grid.options.wrap = a.wrap || *family == Family::kGridStress;
      grid.options.quad = parse_grid_quad(a.quad);
      grid.options.turn_weight = a.turn_weight;
      spec.kind = std::move(grid);
      break;
    }
  }
  const QuadGraph g = generate(spec);
  write_aqg_file(a.out, g);
  out << "wrote " << a.out << ": nodes " << g.node_count() << " arcs " << g.arc_count();
  if (auto undirected = g.undirected_edge_count()) out << " undirected_edges " << *undirected;
  out << " quad_arcs " << g.quad_arc_count() << "\n";
  return kExitOk;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const auto algo = parse_algorithm(a.algo);
  if (!algo) throw InputError("unknown --algo '" + a.algo + "' (expected aqd, aqastar or lin)");
  const QuadGraph g = load_graph(a.graph, a.lambda);
  const auto [s, t] = endpoints(g, a.source, a.target);
  const PathResult r = solve(g, s, t, *algo, SolveOptions{.exhaustive = a.exhaustive});

  out << "algorithm " << algorithm_name(*algo) << (a.exhaustive && *algo == Algorithm::kAqAStar ? " (exhaustive)" : "")
      << "\n";
  out << "source " << s << " target " << t << "\n";
  if (!r.found()) {
    out << "result no-walk\n";
    return kExitNoWalk;
  }
  out << "cost " << format_cost(r.cost) << "\n";
  out << "walk " << print_walk(r.walk, a.max_print) << "\n";
  out << "arcs " << r.walk.size() - 1 << "\n";
  out << "is_simple " << (r.is_simple ? "true" : "false") << "\n";
  if (a.check_alpha) {
    if (!r.alpha_report) {
      out << "alpha_cycle none\n";
    } else {
      out << "alpha_cycle present simplified_cost " << format_cost(r.alpha_report->simplified_cost) << " improving "
          << (r.alpha_report->improving ? "true" : "false") << "\n";
      out << "simplified_walk " << print_walk(r.alpha_report->simplified, a.max_print) << "\n";
    }
  }
  out << "popped " << r.stats.popped << " relaxations " << r.stats.relaxations << " updated " << r.stats.updated
      << "\n";
  out << "build_time_s " << r.build_seconds << " search_time_s " << r.search_seconds << "\n";
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  ExperimentConfig config;
  const auto family = parse_family(a.family);
  if (!family) throw InputError("unknown --family '" + a.family + "'");
  config.family = *family;
  config.sizes = a.sizes;
  config.p = a.p;
  config.degree = a.degree;
  config.neighbors = a.neighbors;
  config.grid_quad = parse_grid_quad(a.quad);
  config.turn_weight = a.turn_weight;
  config.relief = a.relief;
  config.materialize = a.materialize;
  config.lambdas = a.lambdas;
  config.repetitions = a.reps;
  config.seed = a.seed;
  config.memory_limit_gb = a.mem_limit_gb;
  for (const std::string& name : a.algos) {
    const auto algo = parse_algorithm(name);
    if (!algo) throw InputError("unknown algorithm '" + name + "'");
    config.algorithms.push_back(*algo);
  }
  config.validate();

  const std::filesystem::path dir(a.out);
  std::filesystem::create_directories(dir);
  const auto rows = run_bench(config, a.quiet ? nullptr : &out);

  const std::string stem = family_name(config.family);
  std::ofstream results(dir / (stem + "_results.csv"));
  write_results_csv(results, rows);
  std::ofstream summary(dir / (stem + "_summary.csv"));
  write_summary_csv(summary, rows);
  std::ofstream plot(dir / (stem + "_plot.gp"));
  write_plot_script(plot, stem + "_summary.csv", config);
  if (!results || !summary || !plot) throw std::runtime_error("failed writing benchmark output to " + dir.string());

  std::size_t disagreements = 0;
  for (const ResultRow& r : rows) disagreements += r.agreement ? 0 : 1;
  out << "rows " << rows.size() << " disagreements " << disagreements << " -> " << (dir / (stem + "_results.csv")).string()
      << "\n";
  return disagreements == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const QuadGraph g = load_graph(a.graph, a.lambda);
  const auto [s, t] = endpoints(g, a.source, a.target);

  struct Entry {
    std::string name;
    Cost cost;
  };
  std::vector<Entry> entries;
  const PathResult aqd = solve(g, s, t, Algorithm::kAqDijkstra);
  entries.push_back({"aqd", aqd.cost});
  entries.push_back({"aqastar", solve(g, s, t, Algorithm::kAqAStar).cost});
  entries.push_back({"aqastar-exhaustive", solve(g, s, t, Algorithm::kAqAStar, SolveOptions{.exhaustive = true}).cost});
  entries.push_back({"lin", solve(g, s, t, Algorithm::kLin).cost});
  if (g.node_count() <= 10) {
    entries.push_back({"brute_force", brute_force(g, s, t, 2 * static_cast<std::size_t>(g.node_count())).cost});
  }

  for (const Entry& e : entries) out << e.name << " " << format_cost(e.cost) << "\n";
  bool all_pass = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const bool pass = costs_agree(entries[i].cost, entries[j].cost);
      all_pass = all_pass && pass;
      out << (pass ? "PASS " : "FAIL ") << entries[i].name << " vs " << entries[j].name << "\n";
    }
  }
  if (auto ub = linear_path_upper_bound(g, s, t)) {
    out << "linear_upper_bound " << format_cost(ub->cost) << (costs_agree(ub->cost, aqd.cost) ? " (tight)" : "")
        << "\n";
  }
  if (aqd.found()) {
    out << "is_simple " << (aqd.is_simple ? "true" : "false");
    if (aqd.alpha_report) {
      out << " improving_alpha_cycle " << (aqd.alpha_report->improving ? "true" : "false");
    }
    out << "\n";
  } else {
    out << "result no-walk\n";
  }
  out << (all_pass ? "CHECK PASS" : "CHECK FAIL") << "\n";
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adjacent quadratic shortest path toolkit"};
  app.name("aqsp");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate an instance and write it as .aqg");
  generate_cmd->add_option("--family", gen.family, "erdos | config_model | grid | grid_stress");
  generate_cmd->add_option("--nodes", gen.nodes, "Node count (random families)");
  generate_cmd->add_option("--p", gen.p, "Arc probability (erdos)");
  generate_cmd->add_option("--degree", gen.degree, "Node degree (config_model)");
  generate_cmd->add_option("--rows", gen.rows, "Grid rows");
  generate_cmd->add_option("--cols", gen.cols, "Grid columns");
  generate_cmd->add_option("--neighbors", gen.neighbors, "Grid neighbourhood: 2, 4 or 8");
  generate_cmd->add_flag("--wrap", gen.wrap, "Torus grid");
  generate_cmd->add_option("--elevation", gen.elevation, "Elevation CSV (rows x cols)");
  generate_cmd->add_option("--cell-size", gen.cell_size, "Ground units per grid step");
  generate_cmd->add_option("--origin-x", gen.origin_x, "Grid origin x");
  generate_cmd->add_option("--origin-y", gen.origin_y, "Grid origin y");
  generate_cmd->add_option("--relief", gen.relief, "Synthetic terrain amplitude when no CSV is given");
  generate_cmd->add_option("--quad", gen.quad, "Grid quadratic model: zero | turn | table");
  generate_cmd->add_option("--turn-weight", gen.turn_weight, "Turn penalty for a U-turn");
  generate_cmd->add_option("--lambda", gen.lambda, "Quadratic cost scale");
  generate_cmd->add_option("--seed", gen.seed, "Random seed");
  generate_cmd->add_option("--out", gen.out, "Output .aqg path")->required();

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one s-t query");
  solve_cmd->add_option("graph", sol.graph, "Input .aqg file")->required();
  solve_cmd->add_option("--source", sol.source, "Source node (default 0)");
  solve_cmd->add_option("--target", sol.target, "Target node (default last node)");
  solve_cmd->add_option("--algo", sol.algo, "aqd | aqastar | lin");
  solve_cmd->add_option("--lambda", sol.lambda, "Quadratic cost scale");
  solve_cmd->add_flag("--exhaustive", sol.exhaustive, "aqastar: run until the queue is empty");
  solve_cmd->add_flag("--check-alpha", sol.check_alpha, "Report alpha-cycles in the returned walk");
  solve_cmd->add_option("--max-print", sol.max_print, "Walk nodes to print (0 = all)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment grid and write CSV plus a gnuplot script");
  bench_cmd->add_option("--family", bench.family, "erdos | config_model | grid | grid_stress");
  bench_cmd->add_option("--nodes,--sizes", bench.sizes, "Node counts, or grid side lengths")->required();
  bench_cmd->add_option("--p", bench.p, "Arc probability (erdos)");
  bench_cmd->add_option("--degree", bench.degree, "Node degree (config_model)");
  bench_cmd->add_option("--neighbors", bench.neighbors, "Grid neighbourhood: 2, 4 or 8");
  bench_cmd->add_option("--quad", bench.quad, "Grid quadratic model: zero | turn | table");
  bench_cmd->add_option("--turn-weight", bench.turn_weight, "Turn penalty for a U-turn");
  bench_cmd->add_option("--relief", bench.relief, "Synthetic terrain amplitude");
  bench_cmd->add_flag("--materialize", bench.materialize, "Store the turn penalties instead of computing them");
  bench_cmd->add_option("--lambda", bench.lambdas, "Quadratic cost scales");
  bench_cmd->add_option("--reps", bench.reps, "Instances per size");
  bench_cmd->add_option("--algo", bench.algos, "Algorithms: aqd aqastar lin");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_option("--mem-limit-gb", bench.mem_limit_gb, "Skip runs estimated above this footprint");
  bench_cmd->add_flag("--quiet", bench.quiet, "No per-row progress");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Cross-check every algorithm on one query");
  check_cmd->add_option("graph", chk.graph, "Input .aqg file")->required();
  check_cmd->add_option("--source", chk.source, "Source node (default 0)");
  check_cmd->add_option("--target", chk.target, "Target node (default last node)");
  check_cmd->add_option("--lambda", chk.lambda, "Quadratic cost scale");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("aqsp");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(gen, out);
    if (solve_cmd->parsed()) return cmd_solve(sol, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    if (check_cmd->parsed()) return cmd_check(chk, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace aqsp::cli
