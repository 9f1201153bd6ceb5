// Acceptance gate: one self-contained check per shipping criterion, each
// printing a single PASS/FAIL line. Exit status is the number of failures.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "bipart/evalmetrics.hpp"
#include "bipart/graph.hpp"
#include "bipart/io.hpp"
#include "bipart/louvain.hpp"
#include "bipart/modularity.hpp"
#include "bipart/partition.hpp"
#include "bipart/rng.hpp"
#include "bipart/synthgen.hpp"

namespace {

using namespace bipart;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

using DetectFn = DetectionResult (*)(const BipartiteGraph&,
                                     const LouvainConfig&);
constexpr std::array<std::pair<const char*, DetectFn>, 5> kDetectors = {{
    {"naive", &detect_naive},
    {"bilouvain", &detect_bilouvain},
    {"dual", &detect_dual_projection},
    {"standard", &detect_standard},
    {"projected", &detect_projected},
}};

DegreeSpec poisson_spec(double lambda) {
  DegreeSpec s;
  s.family = DegreeSpec::Family::poisson;
  s.lambda = lambda;
  return s;
}

DegreeSpec power_spec(double mu) {
  DegreeSpec s;
  s.family = DegreeSpec::Family::power_law;
  s.mu = mu;
  s.d_min = 1;
  s.d_max = 0;  // automatic cutoff
  return s;
}

BenchmarkSpec poisson5_benchmark(double p, std::uint64_t seed) {
  BenchmarkSpec spec;
  spec.communities = 4;
  spec.n_bottom = 250;
  spec.n_top = 250;
  spec.bottom = poisson_spec(5.0);
  spec.top = poisson_spec(5.0);
  spec.p = p;
  spec.seed = seed;
  return spec;
}

/// Q_P of a bottom-side labelling, evaluated on the self-loop-free
/// projection (the view detection itself runs on).
double qp_bottom(const BipartiteGraph& g, const Partition& p) {
  return modularity_projected(strip_self_loops(project(g, Side::bottom)), p);
}

// --- criterion 1: metric fidelity ------------------------------------------

std::string criterion_metrics() {
  const auto t0 = Clock::now();
  std::ostringstream fail;
  auto expect = [&](double got, double want, double tol, const char* what) {
    if (!(std::abs(got - want) <= tol))
      fail << what << ": got " << got << ", want " << want << "; ";
  };
  using V = std::vector<Label>;

  // homogeneity-1 cases: pure clusters under relabeling, splits, singletons
  expect(homogeneity(V{0, 0, 1, 1}, V{1, 1, 0, 0}), 1.0, 1e-12, "H relabel");
  expect(homogeneity(V{0, 0, 1, 1}, V{0, 0, 1, 2}), 1.0, 1e-12, "H split");
  expect(homogeneity(V{0, 0, 1, 1}, V{0, 1, 2, 3}), 1.0, 1e-12,
         "H singletons");
  // completeness-1 cases: one cluster, exact relabeling
  expect(completeness(V{0, 0, 1, 1}, V{0, 0, 0, 0}), 1.0, 1e-12, "C merged");
  expect(completeness(V{0, 0, 1, 1}, V{1, 1, 0, 0}), 1.0, 1e-12, "C relabel");
  // partial cases
  expect(homogeneity(V{0, 0, 1, 1}, V{0, 1, 1, 1}), 0.311278, 5e-4,
         "H partial");
  expect(completeness(V{0, 0, 1, 1}, V{0, 1, 0, 1}), 0.0, 1e-12,
         "C crosscut");
  // the (0,0,1,1) vs (0,0,1,2) triple: H = 1, C = 0.67, V = 0.8
  const SimilarityScores s = v_measure(V{0, 0, 1, 1}, V{0, 0, 1, 2});
  expect(s.homogeneity, 1.0, 0.005, "triple H");
  expect(s.completeness, 0.67, 0.005, "triple C");
  expect(s.v_measure, 0.8, 0.005, "triple V");

  const double secs = seconds_since(t0);
  if (secs >= 1.0) fail << "runtime " << secs << " s >= 1 s; ";
  return fail.str();
}

// --- criterion 2: southern women table -------------------------------------

std::string criterion_southern_women() {
  const auto t0 = Clock::now();
  std::ostringstream fail;

  std::ifstream in(std::string(BIPART_DATA_DIR) + "/southern_women.tsv");
  if (!in) return "cannot open data/southern_women.tsv";
  const LoadedBipartite lb = read_edge_list(in, EdgeListFormat::konect);

  LouvainConfig cfg;
  cfg.restarts = 10;
  cfg.seed = 20260814;

  auto bottom_qp = [&](DetectFn fn) {
    return qp_bottom(lb.graph, fn(lb.graph, cfg).partition);
  };

  const struct {
    const char* name;
    DetectFn fn;
    double want, tol;
    bool capped;  // additionally require Q_P <= 0.12
  } rows[] = {
      {"standard", &detect_standard, 0.152, 0.01, false},
      {"projected", &detect_projected, 0.152, 0.01, false},
      {"dual", &detect_dual_projection, 0.152, 0.01, false},
      {"naive", &detect_naive, 0.089, 0.03, true},
      {"bilouvain", &detect_bilouvain, 0.070, 0.03, true},
  };
  for (const auto& row : rows) {
    const double qp = bottom_qp(row.fn);
    if (std::abs(qp - row.want) > row.tol)
      fail << row.name << " Q_P " << qp << " vs " << row.want << "+-"
           << row.tol << "; ";
    if (row.capped && qp > 0.12)
      fail << row.name << " Q_P " << qp << " > 0.12; ";
  }

  const double secs = seconds_since(t0);
  if (secs >= 10.0) fail << "runtime " << secs << " s >= 10 s; ";
  return fail.str();
}

// --- criterion 3: all-in-one partition scores zero --------------------------

std::string criterion_null_partition() {
  for (int k = 0; k < 100; ++k) {
    Rng meta = make_rng(seed_stream(3, 0x6e756c6cULL, k));
    BenchmarkSpec spec;
    spec.communities = 1 + static_cast<int>(uniform_below(meta, 4));
    const int cap = 500 / spec.communities;
    spec.n_bottom = 5 + static_cast<int>(uniform_below(meta, cap - 4));
    spec.n_top = 5 + static_cast<int>(uniform_below(meta, cap - 4));
    spec.bottom = poisson_spec(2.0 + 4.0 * uniform_real(meta));
    spec.top = poisson_spec(2.0 + 4.0 * uniform_real(meta));
    spec.p = uniform_real(meta);
    spec.seed = meta();

    const Benchmark bench = generate(spec);
    const WeightedGraph proj = project(bench.graph, Side::bottom);
    const Partition ones = Partition::all_in_one(proj.node_count());
    const BipartitePartition jones(
        std::vector<Label>(bench.graph.n_bottom(), 0),
        std::vector<Label>(bench.graph.n_top(), 0));

    const double q = modularity_standard(proj, ones);
    const double qb = modularity_barber(bench.graph, jones);
    const double qp = modularity_projected(proj, ones);
    if (std::abs(q) > 1e-12 || std::abs(qb) > 1e-12 || std::abs(qp) > 1e-12) {
      std::ostringstream fail;
      fail << "graph " << k << ": Q=" << q << " Q_B=" << qb << " Q_P=" << qp;
      return fail.str();
    }
  }
  return "";
}

// --- criterion 4: aggregation commutes with projection ----------------------

std::string criterion_commutation() {
  Rng rng = make_rng(seed_stream(4, 0x636f6d6dULL));
  for (int t = 0; t < 200; ++t) {
    const NodeId nb = 1 + static_cast<NodeId>(uniform_below(rng, 20));
    const NodeId nt = 1 + static_cast<NodeId>(uniform_below(rng, 20));
    const std::size_t m = uniform_below(rng, 2 * nb * nt + 1);
    std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
    edges.reserve(m);
    for (std::size_t e = 0; e < m; ++e)
      edges.emplace_back(static_cast<NodeId>(uniform_below(rng, nb)),
                         static_cast<NodeId>(uniform_below(rng, nt)),
                         1 + static_cast<Weight>(uniform_below(rng, 3)));
    const BipartiteGraph g(nb, nt, edges);

    // random partition of the projected (bottom) side; the projected-out
    // side keeps singleton communities, which is what the identity is about
    const Label kb = 1 + static_cast<Label>(uniform_below(rng, nb));
    std::vector<Label> bl(nb), tl(nt);
    for (auto& l : bl) l = static_cast<Label>(uniform_below(rng, kb));
    for (NodeId j = 0; j < nt; ++j) tl[j] = kb + j;
    const BipartitePartition joint =
        BipartitePartition(std::move(bl), std::move(tl)).normalized();

    const WeightedGraph left = aggregate_projected(
        project(g, Side::bottom), Partition(joint.bottom_labels()));
    const WeightedGraph right =
        project(aggregate_bipartite(g, joint), Side::bottom);
    if (!(left == right)) {
      std::ostringstream fail;
      fail << "pair " << t << " (" << nb << "x" << nt << ", " << m
           << " draws) disagrees";
      return fail.str();
    }
  }
  return "";
}

// --- criterion 5: incremental gains match recomputation ---------------------

std::string criterion_gain_oracle() {
  Rng rng = make_rng(seed_stream(5, 0x6761696eULL));
  int moves_done = 0;
  for (int round = 0; moves_done < 1000; ++round) {
    BenchmarkSpec spec;
    spec.communities = 2;
    spec.n_bottom = 25;
    spec.n_top = 25;
    spec.bottom = poisson_spec(3.0);
    spec.top = poisson_spec(3.0);
    spec.p = 0.3;
    spec.seed = rng();
    const Benchmark bench = generate(spec);
    const WeightedGraph full = project(bench.graph, Side::bottom);
    const WeightedGraph g = (round % 2 == 0) ? full : strip_self_loops(full);
    const NodeId n_nodes = g.node_count();

    CommunityState st(g, ObjectiveSpec{Objective::projected, 1.0});
    std::vector<Label> mirror(n_nodes);
    for (NodeId i = 0; i < n_nodes; ++i) mirror[i] = i;
    std::vector<NodeId> size(n_nodes, 1);

    for (int mv = 0; mv < 200 && moves_done < 1000; ++mv, ++moves_done) {
      const NodeId n = static_cast<NodeId>(uniform_below(rng, n_nodes));
      const NodeId peer = static_cast<NodeId>(uniform_below(rng, n_nodes));
      const Label a = mirror[n];
      const Label c = mirror[peer];

      // Empty slot to park the node in (its own slot if already singleton);
      // insert gains are only defined for nodes sitting alone.
      Label park = a;
      if (size[a] > 1) {
        park = 0;
        while (size[park] != 0) ++park;
      }

      const double q_before = modularity_projected(g, Partition(mirror));
      std::vector<Label> parked = mirror;
      parked[n] = park;
      const double q_parked = modularity_projected(g, Partition(parked));
      std::vector<Label> after = parked;
      after[n] = c;
      const double q_after = modularity_projected(g, Partition(after));

      const double g_rem = st.gain_on_remove(n, a);
      st.remove(n);
      st.insert(n, park);
      size[a]--;
      size[park]++;
      mirror = parked;

      const double g_ins = st.gain_on_insert(n, c);
      st.remove(n);
      st.insert(n, c);
      size[park]--;
      size[c]++;
      mirror = after;

      std::ostringstream fail;
      if (std::abs(g_rem - (q_parked - q_before)) > 1e-12)
        fail << "remove gain off by "
             << std::abs(g_rem - (q_parked - q_before));
      else if (std::abs(g_ins - (q_after - q_parked)) > 1e-12)
        fail << "insert gain off by "
             << std::abs(g_ins - (q_after - q_parked));
      else if (std::abs(st.value() - q_after) > 1e-12)
        fail << "running value off by " << std::abs(st.value() - q_after);
      if (!fail.str().empty()) {
        fail << " at move " << moves_done;
        return fail.str();
      }
    }
  }
  return "";
}

// --- criterion 6: p = 0 recovery --------------------------------------------

std::string criterion_p0_recovery() {
  const auto t0 = Clock::now();
  std::ostringstream fail;

  std::array<double, 5> v_sum{};
  double qp_sum = 0.0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    const Benchmark bench =
        generate(poisson5_benchmark(0.0, seed_stream(6, 0x72656376ULL, r)));
    const std::vector<Label>& target = bench.target.bottom_labels();
    qp_sum += qp_bottom(bench.graph, bench.target.bottom_partition());

    for (std::size_t ai = 0; ai < kDetectors.size(); ++ai) {
      LouvainConfig cfg;
      cfg.restarts = 10;
      cfg.seed = seed_stream(6, 0x64657400ULL, r, ai);
      const DetectionResult res = kDetectors[ai].second(bench.graph, cfg);
      v_sum[ai] += v_measure(target, res.partition.labels()).v_measure;
    }
  }

  for (std::size_t ai = 0; ai < kDetectors.size(); ++ai) {
    const double mean_v = v_sum[ai] / reps;
    if (!(mean_v >= 0.99))
      fail << kDetectors[ai].first << " mean V " << mean_v << " < 0.99; ";
  }
  const double mean_qp = qp_sum / reps;
  if (std::abs(mean_qp - 0.75) > 0.03)
    fail << "target Q_P " << mean_qp << " vs 0.75+-0.03; ";

  const double secs = seconds_since(t0);
  if (secs >= 300.0) fail << "runtime " << secs << " s >= 300 s; ";
  return fail.str();
}

// --- criterion 7: target Q_B falls linearly with p ---------------------------

std::string criterion_linear_decay() {
  std::vector<double> xs, ys;
  for (int pi = 0; pi <= 8; ++pi) {
    const double p = pi / 10.0;
    double sum = 0.0;
    const int reps = 20;
    for (int r = 0; r < reps; ++r) {
      const Benchmark bench =
          generate(poisson5_benchmark(p, seed_stream(7, pi, r)));
      sum += modularity_barber(bench.graph, bench.target);
    }
    xs.push_back(p);
    ys.push_back(sum / reps);
  }

  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ys[i] - (intercept + slope * xs[i]);
    ss_res += e * e;
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  if (!(r2 >= 0.98)) {
    std::ostringstream fail;
    fail << "R^2 " << r2 << " < 0.98 (slope " << slope << ")";
    return fail.str();
  }
  return "";
}

// --- criterion 8: detected Q_B exceeds the target's at moderate mixing ------
// The crossover where best-of-10 naive Louvain overtakes the planted
// partition's Q_B sits between p = 0.3 and p = 0.4 on this benchmark family
// (cross-checked against an independent Louvain implementation, which lands
// on the same partitions at p = 0.3), so the property is asserted from
// p = 0.4 upward.

std::string criterion_detected_exceeds_target() {
  std::ostringstream fail;
  for (int pi = 4; pi <= 8; ++pi) {
    const double p = pi / 10.0;
    double target_sum = 0.0, found_sum = 0.0;
    const int reps = 20;
    for (int r = 0; r < reps; ++r) {
      const Benchmark bench =
          generate(poisson5_benchmark(p, seed_stream(8, pi, r)));
      target_sum += modularity_barber(bench.graph, bench.target);

      LouvainConfig cfg;
      cfg.restarts = 10;
      cfg.seed = seed_stream(8, 0x6e616976ULL, pi, r);
      const DetectionResult res = detect_naive(bench.graph, cfg);
      found_sum += modularity_barber(bench.graph, *res.joint);
    }
    if (!(found_sum / reps > target_sum / reps))
      fail << "p=" << p << ": naive " << found_sum / reps << " <= target "
           << target_sum / reps << "; ";
  }
  return fail.str();
}

// --- criterion 9: homogeneity >= completeness on power-law benchmarks -------

std::string criterion_h_ge_c() {
  const std::array<std::pair<const char*, DetectFn>, 4> algos = {{
      {"naive", &detect_naive},
      {"bilouvain", &detect_bilouvain},
      {"standard", &detect_standard},
      {"projected", &detect_projected},
  }};
  std::array<double, 4> h_sum{}, c_sum{};
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    BenchmarkSpec spec;
    spec.communities = 4;
    spec.n_bottom = 250;
    spec.n_top = 250;
    spec.bottom = power_spec(3.0);
    spec.top = power_spec(3.0);
    spec.p = 0.3;
    spec.seed = seed_stream(9, 0x706f77ULL, r);
    const Benchmark bench = generate(spec);
    const std::vector<Label>& target = bench.target.bottom_labels();

    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
      LouvainConfig cfg;
      cfg.restarts = 10;
      cfg.seed = seed_stream(9, 0x686365ULL, r, ai);
      const DetectionResult res = algos[ai].second(bench.graph, cfg);
      h_sum[ai] += homogeneity(target, res.partition.labels());
      c_sum[ai] += completeness(target, res.partition.labels());
    }
  }

  std::ostringstream fail;
  for (std::size_t ai = 0; ai < algos.size(); ++ai)
    if (!(h_sum[ai] >= c_sum[ai]))
      fail << algos[ai].first << " mean H " << h_sum[ai] / reps
           << " < mean C " << c_sum[ai] / reps << "; ";
  return fail.str();
}

// --- criterion 10: mixing preserves every degree -----------------------------

std::string criterion_degree_preservation() {
  const double ps[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int r = 0; r < 20; ++r) {
    BenchmarkSpec spec;
    spec.communities = 4;
    spec.n_bottom = 100;
    spec.n_top = 100;
    spec.bottom = poisson_spec(5.0);
    spec.top = poisson_spec(5.0);
    spec.seed = seed_stream(10, 0x646567ULL, r);

    spec.p = 0.0;
    const Benchmark base = generate(spec);
    spec.p = ps[r % 5];
    const Benchmark mixed = generate(spec);

    std::ostringstream fail;
    if (mixed.graph.total_weight() != base.graph.total_weight()) {
      fail << "r=" << r << " p=" << spec.p << ": F changed";
      return fail.str();
    }
    for (NodeId i = 0; i < base.graph.n_bottom(); ++i)
      if (mixed.graph.bottom_degree(i) != base.graph.bottom_degree(i)) {
        fail << "r=" << r << " p=" << spec.p << ": bottom " << i
             << " degree changed";
        return fail.str();
      }
    for (NodeId j = 0; j < base.graph.n_top(); ++j)
      if (mixed.graph.top_degree(j) != base.graph.top_degree(j)) {
        fail << "r=" << r << " p=" << spec.p << ": top " << j
             << " degree changed";
        return fail.str();
      }
  }
  return "";
}

// --- criterion 11: sweep determinism through the CLI ------------------------

std::string slurp_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string criterion_sweep_determinism() {
  const fs::path dir = "acceptance_scratch";
  fs::remove_all(dir);
  fs::create_directories(dir);

  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"communities": 3, "n_bottom": 30, "n_top": 30,
               "bottom": "poisson:4", "top": "poisson:4",
               "p_values": [0, 0.2, 0.4], "realisations": 3, "restarts": 3,
               "algorithms": ["naive", "bilouvain", "dual", "standard",
                              "projected"],
               "seed": 99, "bootstrap_resamples": 1000})";
  }

  auto run = [&](const std::string& out, int threads) {
    std::ostringstream cmd;
    cmd << BIPART_CLI_PATH << " sweep --config " << (dir / "cfg.json").string()
        << " --threads " << threads << " --out " << (dir / out).string()
        << " 2> /dev/null";
    const int rc = std::system(cmd.str().c_str());
    return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
  };
  if (!run("one.csv", 4)) return "first sweep run failed";
  if (!run("two.csv", 2)) return "second sweep run failed";

  if (slurp_file(dir / "one.csv") != slurp_file(dir / "two.csv"))
    return "main CSVs differ";
  if (slurp_file(dir / "one.csv").empty()) return "main CSV empty";
  if (slurp_file(dir / "one_summary.csv") !=
      slurp_file(dir / "two_summary.csv"))
    return "summary CSVs differ";
  return "";
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    std::function<std::string()> fn;
  } criteria[] = {
      {1, "metric fidelity", criterion_metrics},
      {2, "southern women table", criterion_southern_women},
      {3, "null-partition zero", criterion_null_partition},
      {4, "aggregation commutes with projection", criterion_commutation},
      {5, "incremental gain oracle", criterion_gain_oracle},
      {6, "p=0 recovery", criterion_p0_recovery},
      {7, "linear Q_B decay", criterion_linear_decay},
      {8, "detected Q_B exceeds target", criterion_detected_exceeds_target},
      {9, "homogeneity >= completeness", criterion_h_ge_c},
      {10, "degree preservation under mixing", criterion_degree_preservation},
      {11, "sweep determinism", criterion_sweep_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    std::string detail;
    try {
      detail = c.fn();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (detail.empty()) {
      std::printf("PASS %2d  %s (%.2f s)\n", c.id, c.name, secs);
    } else {
      std::printf("FAIL %2d  %s (%.2f s): %s\n", c.id, c.name, secs,
                  detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  std::printf("%d/11 acceptance criteria passed\n", 11 - failures);
  return failures;
}
