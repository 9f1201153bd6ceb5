#include "bipart/louvain.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "bipart/rng.hpp"

namespace bipart {

namespace {

// Seed-stream salts, one per independent randomness consumer.
constexpr std::uint64_t kSaltRestart = 0x4c76u;
constexpr std::uint64_t kSaltBiRestart = 0x424cu;
constexpr std::uint64_t kSaltDualBottom = 0x4442u;
constexpr std::uint64_t kSaltDualTop = 0x4454u;

// Community merges (dual-projection agglomeration, singleton joins in the
// Barber sweep) are accepted down to an exact-zero gain: Q_B is unchanged
// and the finer split carries no extra information. True gains are quantized
// in units of 1/F^2, far above this band for any realistic F.
constexpr double kZeroMergeTolerance = 1e-9;

std::vector<NodeId> visit_order(NodeId n, NodeOrder order, Rng& rng) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), 0u);
  if (order == NodeOrder::shuffled) shuffle_vec(v, rng);
  return v;
}

void check_config(const LouvainConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("louvain: restarts < 1");
  if (cfg.min_gain < 0) throw std::invalid_argument("louvain: min_gain < 0");
}

// Phase 1: sweep single-node moves until a full sweep makes none. Returns
// whether any node changed community.
bool one_level(const WeightedGraph& g, CommunityState& st,
               const LouvainConfig& cfg, Rng& rng) {
  const NodeId n = g.node_count();
  std::vector<NodeId> order = visit_order(n, cfg.node_order, rng);
  std::vector<Weight> w2c(n, 0);
  std::vector<Label> touched;
  bool any = false;
  bool moved;
  do {
    moved = false;
    for (NodeId u : order) {
      const Label cu = st.community_of(u);
      touched.clear();
      for (const Edge& e : g.neighbors(u)) {
        const Label c = st.community_of(e.to);
        if (w2c[c] == 0) touched.push_back(c);
        w2c[c] += e.w;
      }
      const Weight w_own = w2c[cu];
      st.remove(u, w_own);
      const double stay = st.insert_gain(u, cu, w_own);
      Label best = cu;
      double best_gain = stay;
      std::sort(touched.begin(), touched.end());
      for (Label c : touched) {
        if (c == cu) continue;
        const double gain = st.insert_gain(u, c, w2c[c]);
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      // Accept only strict improvement over staying put.
      if (best != cu && best_gain - stay <= cfg.min_gain) best = cu;
      st.insert(u, best, w2c[best]);
      if (best != cu) {
        moved = true;
        any = true;
      }
      for (Label c : touched) w2c[c] = 0;
      w2c[cu] = 0;
    }
  } while (moved);
  return any;
}

struct FlatRun {
  std::vector<Label> flat;
  int levels = 0;
};

FlatRun louvain_run(const WeightedGraph& g0, const LouvainConfig& cfg,
                    Rng& rng) {
  FlatRun run;
  run.flat.resize(g0.node_count());
  std::iota(run.flat.begin(), run.flat.end(), 0u);

  WeightedGraph store;
  const WeightedGraph* cur = &g0;
  while (true) {
    CommunityState st(*cur, cfg.objective);
    if (!one_level(*cur, st, cfg, rng)) break;
    const Partition comm = Partition(st.labels()).normalized();
    for (Label& f : run.flat) f = comm.label(f);
    ++run.levels;
    const std::size_t nc = comm.community_count();
    if (nc == cur->node_count() || nc == 1) break;
    if (cfg.max_levels > 0 && run.levels >= cfg.max_levels) break;
    store = aggregate_projected(*cur, comm);
    cur = &store;
  }
  return run;
}

DetectionResult singleton_result(std::size_t n_bottom, std::size_t n_top,
                                 bool joint, const char* algorithm) {
  DetectionResult r;
  r.partition = Partition::identity(n_bottom);
  if (joint) {
    std::vector<Label> bl(n_bottom), tl(n_top);
    std::iota(bl.begin(), bl.end(), 0u);
    std::iota(tl.begin(), tl.end(), static_cast<Label>(n_bottom));
    r.joint = BipartitePartition(std::move(bl), std::move(tl));
  }
  r.objective_value = 0.0;
  r.algorithm = algorithm;
  return r;
}

}  // namespace

DetectionResult louvain(const WeightedGraph& g, const LouvainConfig& cfg) {
  check_config(cfg);
  if (cfg.objective.kind == Objective::barber)
    throw std::invalid_argument(
        "louvain: Barber objective requires detect_bilouvain");
  if (cfg.objective.kind == Objective::projected && !g.has_bipartite_sidecar())
    throw std::invalid_argument("louvain: Projected objective needs sidecar");
  if (g.node_count() == 0) throw std::invalid_argument("louvain: empty graph");
  if (g.total_weight() == 0)
    return singleton_result(g.node_count(), 0, false, "louvain");

  std::vector<DetectionResult> runs;
  runs.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = make_rng(seed_stream(cfg.seed, kSaltRestart, r));
    FlatRun run = louvain_run(g, cfg, rng);
    DetectionResult res;
    res.partition = Partition(std::move(run.flat));
    res.objective_value = modularity(g, res.partition, cfg.objective);
    res.levels = run.levels;
    res.algorithm = "louvain";
    runs.push_back(std::move(res));
  }
  return best_of(runs);
}

DetectionResult best_of(const std::vector<DetectionResult>& results) {
  if (results.empty()) throw std::invalid_argument("best_of: empty list");
  const DetectionResult* best = &results.front();
  std::size_t best_count = best->community_count();
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].algorithm != best->algorithm)
      throw std::invalid_argument("best_of: mixed algorithms");
    const std::size_t count = results[i].community_count();
    if (results[i].objective_value > best->objective_value ||
        (results[i].objective_value == best->objective_value &&
         count < best_count)) {
      best = &results[i];
      best_count = count;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// naive / standard / projected: thin wrappers over the unipartite engine

DetectionResult detect_naive(const BipartiteGraph& g,
                             const LouvainConfig& cfg) {
  const NodeId nb = g.n_bottom(), nt = g.n_top();
  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  for (const auto& [i, j, w] : g.edge_list()) edges.emplace_back(i, nb + j, w);
  WeightedGraph joined(nb + nt, edges);

  LouvainConfig c2 = cfg;
  c2.objective.kind = Objective::standard;
  DetectionResult r = louvain(joined, c2);
  const std::vector<Label>& all = r.partition.labels();
  BipartitePartition bp(std::vector<Label>(all.begin(), all.begin() + nb),
                        std::vector<Label>(all.begin() + nb, all.end()));
  bp = bp.normalized();
  r.partition = bp.bottom_partition();
  r.joint = std::move(bp);
  r.algorithm = "naive";
  return r;
}

DetectionResult detect_standard(const BipartiteGraph& g,
                                const LouvainConfig& cfg) {
  LouvainConfig c2 = cfg;
  c2.objective.kind = Objective::standard;
  DetectionResult r = louvain(strip_self_loops(project(g, Side::bottom)), c2);
  r.algorithm = "standard";
  return r;
}

DetectionResult detect_projected(const BipartiteGraph& g,
                                 const LouvainConfig& cfg) {
  LouvainConfig c2 = cfg;
  c2.objective.kind = Objective::projected;
  DetectionResult r = louvain(strip_self_loops(project(g, Side::bottom)), c2);
  r.algorithm = "projected";
  return r;
}

// ---------------------------------------------------------------------------
// bilouvain

namespace {

// Defined with the dual-projection pipeline below; also used by the Barber
// sweep's community-move phase.
BipartitePartition agglomerate_by_qb(const BipartiteGraph& g,
                                     std::vector<Label> bl,
                                     std::vector<Label> tl, double lambda);

bool bilouvain_sweep_side(const BipartiteGraph& g, BarberState& st,
                          const LouvainConfig& cfg,
                          const std::vector<NodeId>& order, bool bottom,
                          std::vector<Weight>& w2c,
                          std::vector<Label>& touched) {
  const NodeId nb = g.n_bottom();
  bool moved = false;
  for (NodeId idx : order) {
    const NodeId u = bottom ? idx : nb + idx;
    const auto& adj = bottom ? g.bottom_adj(idx) : g.top_adj(idx);
    const Label cu = st.community_of(u);
    const bool alone = st.is_isolated(u);
    touched.clear();
    for (const Edge& e : adj) {
      const NodeId v = bottom ? nb + e.to : e.to;
      const Label c = st.community_of(v);
      if (w2c[c] == 0) touched.push_back(c);
      w2c[c] += e.w;
    }
    const Weight w_own = w2c[cu];
    st.remove(u, w_own);
    const double stay = st.insert_gain(u, cu, w_own);
    Label best = cu;
    // A node alone in its community also joins on an exact tie: the split is
    // strictly finer at the same Q_B. Ties are admitted only there — a node
    // inside a larger community must strictly improve, so sweeps cannot
    // oscillate (every tie-join lowers the live community count).
    double best_gain = alone ? stay - kZeroMergeTolerance : stay;
    std::sort(touched.begin(), touched.end());
    for (Label c : touched) {
      if (c == cu) continue;
      const double gain = st.insert_gain(u, c, w2c[c]);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best != cu && !alone && best_gain - stay <= cfg.min_gain) best = cu;
    st.insert(u, best, w2c[best]);
    if (best != cu) moved = true;
    for (Label c : touched) w2c[c] = 0;
    w2c[cu] = 0;
  }
  return moved;
}

bool bilouvain_one_level(const BipartiteGraph& g, BarberState& st,
                         const LouvainConfig& cfg, Rng& rng) {
  std::vector<NodeId> border = visit_order(g.n_bottom(), cfg.node_order, rng);
  std::vector<NodeId> torder = visit_order(g.n_top(), cfg.node_order, rng);
  std::vector<Weight> w2c(st.slots(), 0);
  std::vector<Label> touched;
  bool any = false;
  bool moved;
  do {
    moved = bilouvain_sweep_side(g, st, cfg, border, true, w2c, touched);
    moved |= bilouvain_sweep_side(g, st, cfg, torder, false, w2c, touched);
    any |= moved;
  } while (moved);
  return any;
}

struct BiRun {
  std::vector<Label> bottom, top;  // joint labels of the original nodes
  int levels = 0;
};

BiRun bilouvain_run(const BipartiteGraph& g0, const LouvainConfig& cfg,
                    Rng& rng) {
  BiRun run;
  run.bottom.resize(g0.n_bottom());
  run.top.resize(g0.n_top());

  // Level-node id of each original node.
  std::vector<NodeId> bid(g0.n_bottom()), tid(g0.n_top());
  std::iota(bid.begin(), bid.end(), 0u);
  std::iota(tid.begin(), tid.end(), 0u);
  std::iota(run.bottom.begin(), run.bottom.end(), 0u);
  std::iota(run.top.begin(), run.top.end(),
            static_cast<Label>(g0.n_bottom()));

  // Initial joint labels of the current level's nodes. After aggregation the
  // bottom and top supernodes of one community share a label again, so merges
  // persist across levels.
  std::vector<Label> init(g0.n_bottom() + g0.n_top());
  std::iota(init.begin(), init.end(), 0u);

  BipartiteGraph store;
  const BipartiteGraph* cur = &g0;
  while (true) {
    BarberState st(*cur, cfg.objective.resolution, init);
    const bool node_moves = bilouvain_one_level(*cur, st, cfg, rng);

    const auto& labels = st.labels();
    BipartitePartition level_part(
        std::vector<Label>(labels.begin(), labels.begin() + cur->n_bottom()),
        std::vector<Label>(labels.begin() + cur->n_bottom(), labels.end()));
    level_part = level_part.normalized();

    // Community-level moves. Moving one side's supernode alone abandons the
    // community's internal edges, so a community only ever gains by moving
    // its bottom and top mass together — the bipartite counterpart of the
    // unipartite supernode move. Greedy delta-Q_B merging realizes exactly
    // those paired moves.
    const std::size_t fine = level_part.community_count();
    level_part =
        agglomerate_by_qb(*cur, level_part.bottom_labels(),
                          level_part.top_labels(), cfg.objective.resolution);
    if (!node_moves && level_part.community_count() == fine) break;

    for (NodeId i = 0; i < run.bottom.size(); ++i)
      run.bottom[i] = level_part.bottom_labels()[bid[i]];
    for (NodeId j = 0; j < run.top.size(); ++j)
      run.top[j] = level_part.top_labels()[tid[j]];
    ++run.levels;

    const std::size_t nc = level_part.community_count();
    if (nc == cur->n_bottom() + static_cast<std::size_t>(cur->n_top()) ||
        nc == 1)
      break;
    if (cfg.max_levels > 0 && run.levels >= cfg.max_levels) break;

    store = aggregate_bipartite(*cur, level_part);

    // aggregate_bipartite numbers supernodes by ascending label per side;
    // rebuild the id maps and the shared-label initial state accordingly.
    std::vector<Label> blabels(level_part.bottom_labels());
    std::sort(blabels.begin(), blabels.end());
    blabels.erase(std::unique(blabels.begin(), blabels.end()), blabels.end());
    std::vector<Label> tlabels(level_part.top_labels());
    std::sort(tlabels.begin(), tlabels.end());
    tlabels.erase(std::unique(tlabels.begin(), tlabels.end()), tlabels.end());

    std::unordered_map<Label, NodeId> brank, trank;
    for (NodeId k = 0; k < blabels.size(); ++k) brank[blabels[k]] = k;
    for (NodeId k = 0; k < tlabels.size(); ++k) trank[tlabels[k]] = k;
    for (NodeId i = 0; i < run.bottom.size(); ++i)
      bid[i] = brank.at(run.bottom[i]);
    for (NodeId j = 0; j < run.top.size(); ++j) tid[j] = trank.at(run.top[j]);

    init.resize(store.n_bottom() + store.n_top());
    for (NodeId k = 0; k < store.n_bottom(); ++k) init[k] = blabels[k];
    for (NodeId k = 0; k < store.n_top(); ++k)
      init[store.n_bottom() + k] = tlabels[k];
    cur = &store;
  }
  return run;
}

}  // namespace

DetectionResult detect_bilouvain(const BipartiteGraph& g,
                                 const LouvainConfig& cfg) {
  check_config(cfg);
  if (g.total_weight() == 0)
    return singleton_result(g.n_bottom(), g.n_top(), true, "bilouvain");

  std::vector<DetectionResult> runs;
  runs.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = make_rng(seed_stream(cfg.seed, kSaltBiRestart, r));
    BiRun run = bilouvain_run(g, cfg, rng);
    DetectionResult res;
    BipartitePartition bp(std::move(run.bottom), std::move(run.top));
    bp = bp.normalized();
    res.objective_value = modularity_barber(g, bp, cfg.objective.resolution);
    res.partition = bp.bottom_partition();
    res.joint = std::move(bp);
    res.levels = run.levels;
    res.algorithm = "bilouvain";
    runs.push_back(std::move(res));
  }
  return best_of(runs);
}

// ---------------------------------------------------------------------------
// dual projection

namespace {

Label uf_find(std::vector<Label>& parent, Label x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// CNM-style greedy merging of the community set by Barber-modularity gain:
// merge the best pair (ties: lexicographically smallest) until the best
// merge is negative. Only connected pairs (cross weight > 0) are candidates,
// and exact zero-gain merges are accepted: joining a community to a
// connected counterpart at no cost (e.g. the single-event clique, where the
// bottom-vs-top merge gain is exactly 0) yields the natural joint community.
BipartitePartition agglomerate_by_qb(const BipartiteGraph& g,
                                     std::vector<Label> bl,
                                     std::vector<Label> tl, double lambda) {
  const double inv_f = 1.0 / static_cast<double>(g.total_weight());
  const double null_scale = inv_f * inv_f;

  Label k = 0;
  for (Label l : bl) k = std::max(k, l + 1);
  for (Label l : tl) k = std::max(k, l + 1);

  std::vector<Weight> s_q(k, 0), s_d(k, 0);
  for (NodeId i = 0; i < g.n_bottom(); ++i) s_q[bl[i]] += g.bottom_degree(i);
  for (NodeId j = 0; j < g.n_top(); ++j) s_d[tl[j]] += g.top_degree(j);

  std::vector<std::unordered_map<Label, Weight>> cross(k);
  for (const auto& [i, j, w] : g.edge_list()) {
    const Label cb = bl[i], ct = tl[j];
    if (cb == ct) continue;
    cross[cb][ct] += w;
    cross[ct][cb] += w;
  }

  std::vector<Label> parent(k);
  std::iota(parent.begin(), parent.end(), 0u);
  std::vector<char> dead(k, 0);

  while (true) {
    bool found = false;
    double best_gain = 0.0;
    Label bc = 0, bd = 0;
    for (Label c = 0; c < k; ++c) {
      if (dead[c]) continue;
      for (const auto& [d, w] : cross[c]) {
        if (d <= c) continue;
        const double gain =
            static_cast<double>(w) * inv_f -
            lambda *
                (static_cast<double>(s_q[c]) * static_cast<double>(s_d[d]) +
                 static_cast<double>(s_q[d]) * static_cast<double>(s_d[c])) *
                null_scale;
        if (!found || gain > best_gain ||
            (gain == best_gain && (c < bc || (c == bc && d < bd)))) {
          found = true;
          best_gain = gain;
          bc = c;
          bd = d;
        }
      }
    }
    if (!found || best_gain < -kZeroMergeTolerance) break;

    s_q[bc] += s_q[bd];
    s_d[bc] += s_d[bd];
    dead[bd] = 1;
    parent[bd] = bc;
    for (const auto& [e, w] : cross[bd]) {
      cross[e].erase(bd);
      if (e == bc) continue;
      cross[bc][e] += w;
      cross[e][bc] += w;
    }
    cross[bd].clear();
  }

  for (Label& l : bl) l = uf_find(parent, l);
  for (Label& l : tl) l = uf_find(parent, l);
  return BipartitePartition(std::move(bl), std::move(tl)).normalized();
}

}  // namespace

DetectionResult detect_dual_projection(const BipartiteGraph& g,
                                       const LouvainConfig& cfg) {
  check_config(cfg);
  if (g.total_weight() == 0)
    return singleton_result(g.n_bottom(), g.n_top(), true, "dual");

  LouvainConfig cb = cfg;
  cb.objective.kind = Objective::projected;
  cb.seed = seed_stream(cfg.seed, kSaltDualBottom);
  LouvainConfig ct = cb;
  ct.seed = seed_stream(cfg.seed, kSaltDualTop);

  const DetectionResult rb =
      louvain(strip_self_loops(project(g, Side::bottom)), cb);
  const DetectionResult rt =
      louvain(strip_self_loops(project(g, Side::top)), ct);

  std::vector<Label> bl = rb.partition.normalized().labels();
  std::vector<Label> tl = rt.partition.normalized().labels();
  const Label offset = static_cast<Label>(rb.partition.community_count());
  for (Label& l : tl) l += offset;

  DetectionResult res;
  BipartitePartition bp =
      agglomerate_by_qb(g, std::move(bl), std::move(tl),
                        cfg.objective.resolution);
  res.objective_value = modularity_barber(g, bp, cfg.objective.resolution);
  res.partition = bp.bottom_partition();
  res.joint = std::move(bp);
  res.levels = std::max(rb.levels, rt.levels);
  res.algorithm = "dual";
  return res;
}

}  // namespace bipart
