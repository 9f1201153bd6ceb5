// Command-line front end: generate | detect | eval | project | sweep.
//
// Exit codes: 0 success, 2 usage error (bad flags/config), 1 runtime error
// (unreadable inputs, generation failure, I/O).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bipart/evalmetrics.hpp"
#include "bipart/graph.hpp"
#include "bipart/io.hpp"
#include "bipart/louvain.hpp"
#include "bipart/modularity.hpp"
#include "bipart/partition.hpp"
#include "bipart/rng.hpp"
#include "bipart/synthgen.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace bipart;

namespace {

// Seed-stream salts for the sweep's independent randomness consumers.
constexpr std::uint64_t kSaltCell = 0x63656c6cu;      // per (p, realisation)
constexpr std::uint64_t kSaltDetect = 0x64657463u;    // per detector run
constexpr std::uint64_t kSaltBootstrap = 0x626f6f74u; // per summary row

const std::vector<std::string> kAlgorithmNames{"naive", "bilouvain", "dual",
                                               "standard", "projected"};

using DetectFn = DetectionResult (*)(const BipartiteGraph&,
                                     const LouvainConfig&);

DetectFn detector_for(const std::string& name) {
  if (name == "naive") return &detect_naive;
  if (name == "bilouvain") return &detect_bilouvain;
  if (name == "dual") return &detect_dual_projection;
  if (name == "standard") return &detect_standard;
  if (name == "projected") return &detect_projected;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

EdgeListFormat format_for(const std::string& name) {
  return name == "konect" ? EdgeListFormat::konect : EdgeListFormat::plain;
}

LoadedBipartite load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_edge_list(in, format_for(format));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// Bottom-restriction scores on the self-loop-free bottom projection; empty
// when the stripped projection has no edges.
struct BottomScores {
  std::optional<double> q, q_p;
};

BottomScores bottom_scores(const WeightedGraph& loopless_projection,
                           const std::vector<Label>& labels,
                           double resolution) {
  BottomScores s;
  if (loopless_projection.total_weight() == 0) return s;
  Partition p{labels};
  s.q = modularity_standard(loopless_projection, p, resolution);
  s.q_p = modularity_projected(loopless_projection, p, resolution);
  return s;
}

// Independent Q_P recomputation straight from the definition (pairwise over
// the projection, diagonal excluded), used to spot-check sweep rows.
double dense_projected_modularity(const BipartiteGraph& g,
                                  const std::vector<Label>& labels,
                                  double resolution) {
  const NodeId n = g.n_bottom();
  std::vector<std::vector<Weight>> a(n, std::vector<Weight>(n, 0));
  for (NodeId j = 0; j < g.n_top(); ++j) {
    const auto& adj = g.top_adj(j);
    for (const Edge& x : adj)
      for (const Edge& y : adj) a[x.to][y.to] += x.w * y.w;
  }
  Weight two_e = 0;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (i != j) two_e += a[i][j];
  const double f = static_cast<double>(g.total_weight());
  double q = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (labels[i] != labels[j]) continue;
      const double null_term = resolution *
                               static_cast<double>(g.bottom_degree(i)) *
                               static_cast<double>(g.bottom_degree(j)) /
                               (f * f);
      const double edge_term =
          i == j ? 0.0
                 : static_cast<double>(a[i][j]) / static_cast<double>(two_e);
      q += edge_term - null_term;
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  BenchmarkSpec spec;
  std::string bottom = "poisson:5", top = "poisson:5";
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  BenchmarkSpec spec = args.spec;
  spec.bottom = DegreeSpec::parse(args.bottom);
  spec.top = DegreeSpec::parse(args.top);
  spec.validate();

  Benchmark bench = generate(spec);

  {
    std::ofstream out = open_out(args.out + ".edges");
    write_edge_list(out, bench.graph);
  }
  {
    std::ofstream out = open_out(args.out + ".target.tsv");
    write_partition(out, bench.target);
  }
  json meta{
      {"command", "generate"},
      {"spec",
       {{"communities", spec.communities},
        {"n_bottom", spec.n_bottom},
        {"n_top", spec.n_top},
        {"bottom", spec.bottom.to_string()},
        {"top", spec.top.to_string()},
        {"p", spec.p},
        {"seed", spec.seed}}},
      {"graph",
       {{"n_bottom", bench.graph.n_bottom()},
        {"n_top", bench.graph.n_top()},
        {"edges", bench.graph.total_weight()}}},
  };
  std::ofstream out = open_out(args.out + ".json");
  out << meta.dump(2) << '\n';
  std::cout << meta.dump(2) << std::endl;
  return 0;
}

// ---------------------------------------------------------------------------
// detect

struct DetectArgs {
  std::string input, format = "plain", algorithm, out;
  int restarts = 10;
  std::uint64_t seed = 0;
  double resolution = 1.0;
};

int run_detect(const DetectArgs& args) {
  LoadedBipartite lb = load_graph(args.input, args.format);
  if (lb.graph.total_weight() == 0)
    throw std::runtime_error("graph '" + args.input + "' has no edges");

  LouvainConfig cfg;
  cfg.restarts = args.restarts;
  cfg.seed = args.seed;
  cfg.objective.resolution = args.resolution;
  DetectionResult result = detector_for(args.algorithm)(lb.graph, cfg);

  {
    std::ofstream out = open_out(args.out + ".partition.tsv");
    if (result.joint)
      write_partition(out, *result.joint, &lb.bottom_ids, &lb.top_ids);
    else
      write_partition(out, result.partition, &lb.bottom_ids);
  }

  BottomScores scores =
      bottom_scores(strip_self_loops(project(lb.graph, Side::bottom)),
                    result.partition.labels(), args.resolution);
  std::optional<double> q_b;
  if (result.joint)
    q_b = modularity_barber(lb.graph, *result.joint, args.resolution);

  json report{
      {"command", "detect"},
      {"algorithm", result.algorithm},
      {"objective_value", result.objective_value},
      {"q_p_bottom", opt_json(scores.q_p)},
      {"q_bottom", opt_json(scores.q)},
      {"q_b", opt_json(q_b)},
      {"communities", result.community_count()},
      {"levels", result.levels},
      {"restarts", args.restarts},
      {"seed", args.seed},
  };
  std::ofstream out = open_out(args.out + ".json");
  out << report.dump(2) << '\n';
  std::cout << report.dump(2) << std::endl;
  return 0;
}

// ---------------------------------------------------------------------------
// eval

// Aligns two partition files over one node universe (matching keys) and
// scores them in both directions.
int run_eval(const std::string& target_path, const std::string& found_path) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    LoadedPartition lp = read_partition(in);
    std::map<std::string, Label> by_key;
    for (const auto& [key, label] : lp.entries) {
      if (!by_key.emplace(key, label).second)
        throw std::runtime_error("duplicate node '" + key + "' in " + path);
    }
    return by_key;
  };
  const auto target = load(target_path);
  const auto found = load(found_path);
  if (target.size() != found.size())
    throw std::runtime_error("partitions cover different node universes");
  std::vector<Label> t, f;
  t.reserve(target.size());
  f.reserve(found.size());
  for (const auto& [key, label] : target) {
    const auto it = found.find(key);
    if (it == found.end())
      throw std::runtime_error("node '" + key +
                               "' missing from the found partition");
    t.push_back(label);
    f.push_back(it->second);
  }
  if (t.empty()) throw std::runtime_error("empty partitions");

  const SimilarityScores fwd = v_measure(t, f);
  json report{
      {"command", "eval"},
      {"n", t.size()},
      {"homogeneity", fwd.homogeneity},
      {"completeness", fwd.completeness},
      {"v_measure", fwd.v_measure},
      // swapped roles: how the target scores against the found clustering
      {"homogeneity_reverse", fwd.completeness},
      {"completeness_reverse", fwd.homogeneity},
  };
  std::cout << report.dump(2) << std::endl;
  return 0;
}

// ---------------------------------------------------------------------------
// project

int run_project(const std::string& input, const std::string& format,
                const std::string& side, const std::string& out_path) {
  LoadedBipartite lb = load_graph(input, format);
  WeightedGraph p =
      project(lb.graph, side == "top" ? Side::top : Side::bottom);
  if (out_path.empty()) {
    write_projection(std::cout, p);
  } else {
    std::ofstream out = open_out(out_path);
    write_projection(out, p);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  BenchmarkSpec spec;  // p is overridden per grid point
  std::vector<double> p_values;
  int realisations = 100;
  int restarts = 10;
  std::vector<std::string> algorithms = kAlgorithmNames;
  std::uint64_t seed = 0;
  double resolution = 1.0;
  int bootstrap_resamples = 10000;
};

SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config is not valid JSON: " +
                                std::string(e.what()));
  }

  static const std::vector<std::string> known{
      "communities", "n_bottom",   "n_top",     "bottom",
      "top",         "p_values",   "realisations", "restarts",
      "algorithms",  "seed",       "resolution",   "bootstrap_resamples"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  }

  SweepConfig cfg;
  cfg.spec.communities = j.value("communities", 4);
  cfg.spec.n_bottom = j.value("n_bottom", 250);
  cfg.spec.n_top = j.value("n_top", 250);
  cfg.spec.bottom = DegreeSpec::parse(j.value("bottom", "poisson:5"));
  cfg.spec.top = DegreeSpec::parse(j.value("top", "poisson:5"));
  cfg.realisations = j.value("realisations", 100);
  cfg.restarts = j.value("restarts", 10);
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.resolution = j.value("resolution", 1.0);
  cfg.bootstrap_resamples = j.value("bootstrap_resamples", 10000);

  if (j.contains("p_values")) {
    cfg.p_values = j["p_values"].get<std::vector<double>>();
    if (cfg.p_values.empty())
      throw std::invalid_argument("config: p_values must not be empty");
  } else {
    for (int i = 0; i <= 12; ++i) cfg.p_values.push_back(i / 20.0);
  }
  for (double p : cfg.p_values)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("config: p outside [0,1]");

  if (j.contains("algorithms")) {
    cfg.algorithms = j["algorithms"].get<std::vector<std::string>>();
    if (cfg.algorithms.empty())
      throw std::invalid_argument("config: algorithms must not be empty");
    for (const auto& a : cfg.algorithms) detector_for(a);  // validates
  }
  if (cfg.realisations < 1)
    throw std::invalid_argument("config: realisations < 1");
  if (cfg.restarts < 1) throw std::invalid_argument("config: restarts < 1");
  if (cfg.bootstrap_resamples < 1)
    throw std::invalid_argument("config: bootstrap_resamples < 1");
  cfg.spec.p = 0.0;
  cfg.spec.seed = cfg.seed;
  cfg.spec.validate();
  return cfg;
}

struct SweepRow {
  std::string algorithm;
  std::optional<double> q, q_b, q_p;
  std::size_t communities = 0;
  double h = 0, c = 0, v = 0;
  double wall_ms = 0;
};

struct SweepCell {
  std::vector<SweepRow> rows;  // target first, then cfg.algorithms order
};

SweepCell run_cell(const SweepConfig& cfg, std::size_t pi, int realisation) {
  BenchmarkSpec spec = cfg.spec;
  spec.p = cfg.p_values[pi];
  spec.seed = seed_stream(cfg.seed, kSaltCell, pi,
                          static_cast<std::uint64_t>(realisation));
  const Benchmark bench = generate(spec);
  const WeightedGraph loopless =
      strip_self_loops(project(bench.graph, Side::bottom));
  const std::vector<Label>& target_bottom = bench.target.bottom_labels();

  SweepCell cell;
  {
    SweepRow row;
    row.algorithm = "target";
    BottomScores s = bottom_scores(loopless, target_bottom, cfg.resolution);
    row.q = s.q;
    row.q_p = s.q_p;
    row.q_b = modularity_barber(bench.graph, bench.target, cfg.resolution);
    row.communities = bench.target.community_count();
    row.h = row.c = row.v = 1.0;
    cell.rows.push_back(std::move(row));
  }

  for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
    LouvainConfig lcfg;
    lcfg.restarts = cfg.restarts;
    lcfg.objective.resolution = cfg.resolution;
    lcfg.seed = seed_stream(cfg.seed, kSaltDetect, pi,
                            static_cast<std::uint64_t>(realisation), ai);
    const auto start = std::chrono::steady_clock::now();
    const DetectionResult result =
        detector_for(cfg.algorithms[ai])(bench.graph, lcfg);
    const auto stop = std::chrono::steady_clock::now();

    SweepRow row;
    row.algorithm = cfg.algorithms[ai];
    BottomScores s =
        bottom_scores(loopless, result.partition.labels(), cfg.resolution);
    row.q = s.q;
    row.q_p = s.q_p;
    if (result.joint)
      row.q_b = modularity_barber(bench.graph, *result.joint, cfg.resolution);
    row.communities = result.community_count();
    const SimilarityScores sim =
        v_measure(target_bottom, result.partition.labels());
    row.h = sim.homogeneity;
    row.c = sim.completeness;
    row.v = sim.v_measure;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();

    // ~1% deterministic spot check of the reported Q_P against a direct
    // pairwise evaluation
    if (row.q_p &&
        mix_seed(seed_stream(cfg.seed, 0x7370u, pi,
                             static_cast<std::uint64_t>(realisation), ai)) %
                128 ==
            0) {
      const double direct = dense_projected_modularity(
          bench.graph, result.partition.labels(), cfg.resolution);
      if (std::abs(direct - *row.q_p) > 1e-9)
        throw std::runtime_error("sweep: Q_P spot check failed (" +
                                 fmt_double(direct) + " vs " +
                                 fmt_double(*row.q_p) + ")");
    }
    cell.rows.push_back(std::move(row));
  }
  return cell;
}

std::string csv_opt(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

int run_sweep(const std::string& config_path, const std::string& out_path,
              int threads) {
  const SweepConfig cfg = parse_sweep_config(config_path);

  const std::size_t n_cells =
      cfg.p_values.size() * static_cast<std::size_t>(cfg.realisations);
  std::vector<SweepCell> cells(n_cells);

  unsigned n_threads = threads > 0
                           ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_cells));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= n_cells) return;
      const std::size_t pi = idx / static_cast<std::size_t>(cfg.realisations);
      const int r = static_cast<int>(idx % cfg.realisations);
      try {
        cells[idx] = run_cell(cfg, pi, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  const std::string bottom_spec = cfg.spec.bottom.to_string();
  const std::string top_spec = cfg.spec.top.to_string();

  const std::string stem = out_path.size() > 4 && out_path.ends_with(".csv")
                               ? out_path.substr(0, out_path.size() - 4)
                               : out_path;
  std::ofstream main_out = open_out(out_path);
  std::ofstream timings_out = open_out(stem + "_timings.csv");
  main_out << "bottom_spec,top_spec,p,realisation,algorithm,q,q_b,q_p,"
              "communities,h,c,v\n";
  timings_out << "p,realisation,algorithm,wall_ms\n";

  // per (p, algorithm, metric): one value per realisation, for the summary
  std::map<std::pair<std::size_t, std::string>,
           std::map<std::string, std::vector<double>>>
      series;

  for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
    const std::string p_txt = fmt_double(cfg.p_values[pi]);
    for (int r = 0; r < cfg.realisations; ++r) {
      const SweepCell& cell =
          cells[pi * static_cast<std::size_t>(cfg.realisations) +
                static_cast<std::size_t>(r)];
      for (const SweepRow& row : cell.rows) {
        main_out << bottom_spec << ',' << top_spec << ',' << p_txt << ',' << r
                 << ',' << row.algorithm << ',' << csv_opt(row.q) << ','
                 << csv_opt(row.q_b) << ',' << csv_opt(row.q_p) << ','
                 << row.communities << ',' << fmt_double(row.h) << ','
                 << fmt_double(row.c) << ',' << fmt_double(row.v) << '\n';
        if (row.algorithm != "target")
          timings_out << p_txt << ',' << r << ',' << row.algorithm << ','
                      << fmt_double(row.wall_ms) << '\n';
        auto& dest = series[{pi, row.algorithm}];
        if (row.q) dest["q"].push_back(*row.q);
        if (row.q_b) dest["q_b"].push_back(*row.q_b);
        if (row.q_p) dest["q_p"].push_back(*row.q_p);
        dest["h"].push_back(row.h);
        dest["c"].push_back(row.c);
        dest["v"].push_back(row.v);
      }
    }
    std::cerr << "sweep: p=" << p_txt << " done (" << (pi + 1) << '/'
              << cfg.p_values.size() << ")\n";
  }

  std::ofstream summary_out = open_out(stem + "_summary.csv");
  summary_out << "p,algorithm,metric,n,mean,ci_low,ci_high\n";
  std::vector<std::string> ordered_algorithms{"target"};
  ordered_algorithms.insert(ordered_algorithms.end(), cfg.algorithms.begin(),
                            cfg.algorithms.end());
  const std::vector<std::string> metrics{"q", "q_b", "q_p", "h", "c", "v"};
  for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
    for (std::size_t ai = 0; ai < ordered_algorithms.size(); ++ai) {
      const auto it = series.find({pi, ordered_algorithms[ai]});
      if (it == series.end()) continue;
      for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        const auto vit = it->second.find(metrics[mi]);
        if (vit == it->second.end()) continue;
        const std::vector<double>& vals = vit->second;
        const double mean =
            std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
        double lo = mean, hi = mean;
        if (vals.size() >= 2) {
          Rng rng = make_rng(seed_stream(cfg.seed, kSaltBootstrap, pi, ai, mi));
          std::tie(lo, hi) =
              bootstrap_ci(vals, 0.95, cfg.bootstrap_resamples, rng);
        }
        summary_out << fmt_double(cfg.p_values[pi]) << ','
                    << ordered_algorithms[ai] << ',' << metrics[mi] << ','
                    << vals.size() << ',' << fmt_double(mean) << ','
                    << fmt_double(lo) << ',' << fmt_double(hi) << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite community detection toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "Write a planted-partition benchmark");
  cmd_generate->add_option("--communities", gen.spec.communities,
                           "Number of planted blocks")
      ->check(CLI::PositiveNumber);
  cmd_generate->add_option("--n", gen.spec.n_bottom,
                           "Bottom nodes per block before balancing")
      ->check(CLI::PositiveNumber);
  cmd_generate->add_option("--m", gen.spec.n_top,
                           "Top nodes per block before balancing")
      ->check(CLI::PositiveNumber);
  cmd_generate->add_option("--bottom", gen.bottom,
                           "Bottom degree spec, e.g. poisson:5 or power:3:1:100");
  cmd_generate->add_option("--top", gen.top, "Top degree spec");
  cmd_generate->add_option("--p", gen.spec.p, "Mixing parameter")
      ->check(CLI::Range(0.0, 1.0));
  cmd_generate->add_option("--seed", gen.spec.seed, "Master seed");
  cmd_generate->add_option("--out", gen.out, "Output stem")->required();

  DetectArgs det;
  CLI::App* cmd_detect =
      app.add_subcommand("detect", "Run one detection algorithm on a graph");
  cmd_detect->add_option("--input", det.input, "Edge-list file")->required();
  cmd_detect->add_option("--format", det.format, "Edge-list format")
      ->check(CLI::IsMember({"plain", "konect"}));
  cmd_detect->add_option("--algorithm", det.algorithm, "Detection algorithm")
      ->required()
      ->check(CLI::IsMember(kAlgorithmNames));
  cmd_detect->add_option("--restarts", det.restarts, "Independent restarts")
      ->check(CLI::PositiveNumber);
  cmd_detect->add_option("--seed", det.seed, "Seed");
  cmd_detect->add_option("--resolution", det.resolution,
                         "Resolution parameter")
      ->check(CLI::PositiveNumber);
  cmd_detect->add_option("--out", det.out, "Output stem")->required();

  std::string eval_target, eval_found;
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "Score a partition against a reference");
  cmd_eval->add_option("--target", eval_target, "Reference partition TSV")
      ->required();
  cmd_eval->add_option("--found", eval_found, "Detected partition TSV")
      ->required();

  std::string proj_input, proj_format = "plain", proj_side = "bottom",
              proj_out;
  CLI::App* cmd_project =
      app.add_subcommand("project", "Write a one-mode weighted projection");
  cmd_project->add_option("--input", proj_input, "Edge-list file")->required();
  cmd_project->add_option("--format", proj_format, "Edge-list format")
      ->check(CLI::IsMember({"plain", "konect"}));
  cmd_project->add_option("--side", proj_side, "Side to project onto")
      ->check(CLI::IsMember({"bottom", "top"}));
  cmd_project->add_option("--out", proj_out,
                          "Output file (stdout when omitted)");

  std::string sweep_config, sweep_out;
  int sweep_threads = 0;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Run the benchmark experiment grid from a JSON config");
  cmd_sweep->add_option("--config", sweep_config, "JSON config file")
      ->required();
  cmd_sweep->add_option("--out", sweep_out, "Main CSV path")->required();
  cmd_sweep->add_option("--threads", sweep_threads,
                        "Worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_generate->parsed()) return run_generate(gen);
    if (cmd_detect->parsed()) return run_detect(det);
    if (cmd_eval->parsed()) return run_eval(eval_target, eval_found);
    if (cmd_project->parsed())
      return run_project(proj_input, proj_format, proj_side, proj_out);
    if (cmd_sweep->parsed())
      return run_sweep(sweep_config, sweep_out, sweep_threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
