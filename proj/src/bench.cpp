#include "aqsp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <new>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "aqsp/baseline.hpp"
#include "aqsp/graph_io.hpp"

namespace aqsp {

namespace {

constexpr double kBytesPerGb = 1024.0 * 1024.0 * 1024.0;

struct Footprint {
  std::uint64_t arcs = 0;
  std::uint64_t quad_arcs = 0;
  bool stored_quad = false;
};

Footprint expected_footprint(const ExperimentConfig& config, std::uint64_t size) {
  Footprint fp;
  switch (config.family) {
    case Family::kErdos: {
      const double arcs = config.p * static_cast<double>(size) * static_cast<double>(size - 1);
      fp.arcs = static_cast<std::uint64_t>(arcs);
      fp.quad_arcs = static_cast<std::uint64_t>(arcs * config.p * static_cast<double>(size - 1));
      fp.stored_quad = true;
      break;
    }
    case Family::kConfigModel:
      fp.arcs = size * config.degree;
      fp.quad_arcs = size * config.degree * config.degree;
      fp.stored_quad = true;
      break;
    case Family::kGrid:
    case Family::kGridStress: {
      const bool wrap = config.family == Family::kGridStress;
      const std::uint64_t edges = grid_undirected_edges(size, size, config.neighbors, wrap);
      fp.arcs = config.neighbors == 2 ? edges : 2 * edges;
      fp.quad_arcs = grid_quad_arcs(size, size, config.neighbors, wrap);
      fp.stored_quad = config.grid_quad == GridQuad::kTable ||
                       (config.grid_quad == GridQuad::kTurnPenalty && config.materialize);
      break;
    }
  }
  return fp;
}

std::uint64_t instance_bytes(const Footprint& fp) {
  // tail, head, cost, out/in lists, out slot, quad offset
  std::uint64_t bytes = fp.arcs * (4 + 4 + 8 + 4 + 4 + 4 + 8);
  if (fp.stored_quad) bytes += fp.quad_arcs * sizeof(Cost);
  return bytes;
}

std::uint64_t solver_bytes(const Footprint& fp, Algorithm algo) {
  // labels, predecessors, settled flags and a queue bounded by the updates
  const std::uint64_t search = fp.arcs * (8 + 4 + 1 + 16);
  if (algo != Algorithm::kLin) return search;
  return search + fp.quad_arcs * (sizeof(ArcId) + sizeof(Cost)) + fp.arcs * 8;
}

std::string format_seconds(double s) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << s;
  return os.str();
}

}  // namespace

const char* family_name(Family family) {
  switch (family) {
    case Family::kErdos:
      return "erdos";
    case Family::kConfigModel:
      return "config_model";
    case Family::kGrid:
      return "grid";
    case Family::kGridStress:
      return "grid_stress";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "erdos") return Family::kErdos;
  if (name == "config_model") return Family::kConfigModel;
  if (name == "grid") return Family::kGrid;
  if (name == "grid_stress") return Family::kGridStress;
  return std::nullopt;
}

const char* status_name(RowStatus status) {
  switch (status) {
    case RowStatus::kOk:
      return "ok";
    case RowStatus::kNoWalk:
      return "no-walk";
    case RowStatus::kOomSkipped:
      return "OOM-skipped";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("no instance sizes given");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  if (lambdas.empty()) throw std::invalid_argument("no lambda values given");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  for (double l : lambdas) {
    if (!(l >= 0.0) || std::isinf(l)) throw std::invalid_argument("lambda values must be finite and >= 0");
  }
  for (std::uint64_t s : sizes) {
    if (s < 2) throw std::invalid_argument("sizes must be at least 2");
  }
  if (!(memory_limit_gb > 0.0)) throw std::invalid_argument("memory limit must be positive");
  if (family == Family::kErdos && !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

bool costs_agree(Cost a, Cost b, double tol) {
  if (a == kInfinity || b == kInfinity) return a == b;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t size_index, std::uint64_t rep) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (size_index + 1) + 0xD1B54A32D192ED03ULL * (rep + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

QuadGraph make_instance(const ExperimentConfig& config, std::uint64_t size, std::uint32_t rep) {
  const auto it = std::find(config.sizes.begin(), config.sizes.end(), size);
  const std::uint64_t size_index = static_cast<std::uint64_t>(it - config.sizes.begin());
  const std::uint64_t seed = derive_seed(config.seed, size_index, rep);
  switch (config.family) {
    case Family::kErdos:
      return gen_erdos_renyi(static_cast<NodeId>(size), config.p, seed);
    case Family::kConfigModel:
      return gen_configuration(static_cast<NodeId>(size), config.degree, seed);
    case Family::kGrid:
    case Family::kGridStress: {
      GridOptions options;
      options.neighbors = config.neighbors;
      options.wrap = config.family == Family::kGridStress;
      options.quad = config.grid_quad;
      options.turn_weight = config.turn_weight;
      options.seed = seed;
      QuadGraph g = gen_grid(synthetic_elevation(size, size, seed, config.relief), options);
      if (config.materialize) g = g.materialize();
      return g;
    }
  }
  throw std::invalid_argument("unknown family");
}

NodeId bench_target(const ExperimentConfig& config, std::uint64_t size, const QuadGraph& g) {
  if (config.family != Family::kGridStress) return g.node_count() - 1;
  // on a torus the last cell neighbours the first; use the antipode instead
  const auto half = static_cast<NodeId>(size / 2);
  return half * static_cast<NodeId>(size) + half;
}

std::vector<ResultRow> run_bench(const ExperimentConfig& config, std::ostream* progress) {
  config.validate();
  const double limit_bytes = config.memory_limit_gb * kBytesPerGb;
  std::vector<ResultRow> rows;

  for (std::uint64_t size : config.sizes) {
    const Footprint fp = expected_footprint(config, size);
    const bool grid = config.family == Family::kGrid || config.family == Family::kGridStress;
    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
      const std::string base_id = std::string(family_name(config.family)) + "-" + std::to_string(size) + "-r" +
                                  std::to_string(rep);
      std::optional<QuadGraph> base;
      if (static_cast<double>(instance_bytes(fp)) <= limit_bytes) {
        try {
          base = make_instance(config, size, rep);
        } catch (const std::bad_alloc&) {
          base.reset();
        }
      }

      for (double lambda : config.lambdas) {
        std::ostringstream id;
        id << base_id << "-l" << format_cost(lambda);
        const std::size_t first_row = rows.size();
        std::optional<QuadGraph> g;
        if (base) g = lambda == 1.0 ? *base : base->scale_quadratic(lambda);

        for (Algorithm algo : config.algorithms) {
          ResultRow row;
          row.instance_id = id.str();
          row.family = config.family;
          row.size = size;
          row.lambda = lambda;
          row.rep = rep;
          row.algorithm = algo;
          if (g) {
            row.nodes = g->node_count();
            row.arcs = g->arc_count();
            row.undirected_edges = g->undirected_edge_count().value_or(0);
            row.quad_arcs = g->quad_arc_count();
          } else {
            row.nodes = grid ? size * size : size;
            row.arcs = fp.arcs;
            row.quad_arcs = fp.quad_arcs;
          }

          const double need = static_cast<double>(instance_bytes(fp) + solver_bytes(fp, algo));
          if (!g || need > limit_bytes) {
            row.status = RowStatus::kOomSkipped;
          } else {
            try {
              const NodeId s = 0;
              const NodeId t = bench_target(config, size, *g);
              PathResult r = solve(*g, s, t, algo);
              row.build_time_s = r.build_seconds;
              row.search_time_s = r.search_seconds;
              row.popped = r.stats.popped;
              row.cost = r.cost;
              row.status = r.found() ? RowStatus::kOk : RowStatus::kNoWalk;
            } catch (const std::bad_alloc&) {
              row.status = RowStatus::kOomSkipped;
            }
          }
          if (progress) {
            *progress << row.instance_id << " " << algorithm_name(algo) << " " << status_name(row.status)
                      << " cost=" << format_cost(row.cost) << " search_s=" << format_seconds(row.search_time_s)
                      << "\n";
          }
          rows.push_back(std::move(row));
        }

        bool agree = true;
        std::optional<Cost> reference;
        for (std::size_t i = first_row; i < rows.size(); ++i) {
          if (rows[i].status == RowStatus::kOomSkipped) continue;
          if (!reference) {
            reference = rows[i].cost;
          } else if (!costs_agree(*reference, rows[i].cost)) {
            agree = false;
          }
        }
        for (std::size_t i = first_row; i < rows.size(); ++i) rows[i].agreement = agree;
      }
    }
  }
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "instance,family,size,lambda,rep,nodes,arcs,undirected_edges,quad_arcs,algorithm,status,"
         "build_time_s,search_time_s,popped,cost,agreement\n";
  for (const ResultRow& r : rows) {
    out << r.instance_id << ',' << family_name(r.family) << ',' << r.size << ',' << format_cost(r.lambda) << ','
        << r.rep << ',' << r.nodes << ',' << r.arcs << ',' << r.undirected_edges << ',' << r.quad_arcs << ','
        << algorithm_name(r.algorithm) << ',' << status_name(r.status) << ',' << format_seconds(r.build_time_s) << ','
        << format_seconds(r.search_time_s) << ',' << r.popped << ','
        << (r.cost == kInfinity ? std::string("inf") : format_cost(r.cost)) << ',' << (r.agreement ? "true" : "false")
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  struct Agg {
    double min = kInfinity;
    double max = 0.0;
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::tuple<std::uint64_t, double, int>, Agg> cells;
  for (const ResultRow& r : rows) {
    if (r.status != RowStatus::kOk) continue;
    const double total = r.build_time_s + r.search_time_s;
    Agg& a = cells[{r.size, r.lambda, static_cast<int>(r.algorithm)}];
    a.min = std::min(a.min, total);
    a.max = std::max(a.max, total);
    a.sum += total;
    ++a.n;
  }
  out << "size,lambda,algorithm,min_s,avg_s,max_s,runs\n";
  for (const auto& [key, a] : cells) {
    const auto& [size, lambda, algo] = key;
    out << size << ',' << format_cost(lambda) << ',' << algorithm_name(static_cast<Algorithm>(algo)) << ','
        << format_seconds(a.min) << ',' << format_seconds(a.sum / static_cast<double>(a.n)) << ','
        << format_seconds(a.max) << ',' << a.n << '\n';
  }
}

void write_plot_script(std::ostream& out, const std::string& summary_csv, const ExperimentConfig& config) {
  const bool lambda_sweep = config.lambdas.size() > 1 && config.sizes.size() == 1;
  out << "# gnuplot script: min/avg/max total time (build + search) per algorithm\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 1000,600\n"
      << "set output '" << family_name(config.family) << "_times.png'\n"
      << "set title 'Time (build + search), " << family_name(config.family) << " instances'\n"
      << "set xlabel '" << (lambda_sweep ? "lambda" : "size") << "'\n"
      << "set ylabel 'seconds'\n"
      << "set logscale y\n"
      << "set key top left\n"
      << "set grid\n";
  const int xcol = lambda_sweep ? 2 : 1;
  // One curve per algorithm, or per (algorithm, lambda) when lambda is not on the x axis.
  std::vector<std::optional<double>> curves_lambda{std::nullopt};
  if (!lambda_sweep && config.lambdas.size() > 1) curves_lambda.assign(config.lambdas.begin(), config.lambdas.end());
  out << "plot ";
  bool first = true;
  for (Algorithm algo : config.algorithms) {
    for (const std::optional<double>& lambda : curves_lambda) {
      if (!first) out << ", \\\n     ";
      first = false;
      const char* name = algorithm_name(algo);
      std::string filter = "strcol(3) eq '" + std::string(name) + "'";
      std::string title = name;
      if (lambda) {
        filter += " && $2 == " + format_cost(*lambda);
        title += " lambda=" + format_cost(*lambda);
      }
      out << "'" << summary_csv << "' using " << xcol << ":(" << filter << " ? $5 : 1/0):4:6"
          << " every ::1 with yerrorlines title '" << title << "'";
    }
  }
  out << "\n";
}

}  // namespace aqsp
