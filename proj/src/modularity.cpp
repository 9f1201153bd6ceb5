#include "bipart/modularity.hpp"

#include <numeric>
#include <stdexcept>

namespace bipart {

namespace {

void check_cover(std::size_t have, std::size_t want, const char* who) {
  if (have != want)
    throw std::invalid_argument(std::string(who) +
                                ": partition does not cover the graph");
}

std::size_t slot_count(const std::vector<Label>& labels) {
  Label k = 0;
  for (Label l : labels) k = std::max(k, l + 1);
  return k;
}

}  // namespace

double modularity_standard(const WeightedGraph& g, const Partition& p,
                           double lambda) {
  check_cover(p.size(), g.node_count(), "modularity_standard");
  const Weight two_e = g.total_weight();
  if (two_e == 0)
    throw std::domain_error("modularity_standard: empty graph (2E = 0)");

  const std::size_t k = slot_count(p.labels());
  std::vector<Weight> w_in(k, 0), s_tot(k, 0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const Label c = p.label(i);
    w_in[c] += g.self_loop(i);
    s_tot[c] += g.strength(i);
    for (const Edge& e : g.neighbors(i))
      if (p.label(e.to) == c) w_in[c] += e.w;  // ordered pairs: both directions
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double frac = static_cast<double>(s_tot[c]) / two_e;
    q += static_cast<double>(w_in[c]) / two_e - lambda * frac * frac;
  }
  return q;
}

double modularity_projected(const WeightedGraph& g, const Partition& p,
                            double lambda) {
  check_cover(p.size(), g.node_count(), "modularity_projected");
  if (!g.has_bipartite_sidecar())
    throw std::invalid_argument(
        "modularity_projected: graph lacks the bipartite sidecar");
  const Weight two_e = g.total_weight();
  const Weight f = g.bipartite_total();
  if (two_e == 0 || f == 0)
    throw std::domain_error("modularity_projected: empty graph");

  const std::size_t k = slot_count(p.labels());
  std::vector<Weight> w_in(k, 0), s_bi(k, 0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const Label c = p.label(i);
    w_in[c] += g.self_loop(i);
    s_bi[c] += g.bipartite_degree(i);
    for (const Edge& e : g.neighbors(i))
      if (p.label(e.to) == c) w_in[c] += e.w;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double frac = static_cast<double>(s_bi[c]) / f;
    q += static_cast<double>(w_in[c]) / two_e - lambda * frac * frac;
  }
  return q;
}

double modularity_barber(const BipartiteGraph& g, const BipartitePartition& p,
                         double lambda) {
  check_cover(p.bottom_labels().size(), g.n_bottom(), "modularity_barber");
  check_cover(p.top_labels().size(), g.n_top(), "modularity_barber");
  const Weight f = g.total_weight();
  if (f == 0) throw std::domain_error("modularity_barber: empty graph (F = 0)");

  Label k = 0;
  for (Label l : p.bottom_labels()) k = std::max(k, l + 1);
  for (Label l : p.top_labels()) k = std::max(k, l + 1);

  std::vector<Weight> w_in(k, 0), s_q(k, 0), s_d(k, 0);
  for (NodeId i = 0; i < g.n_bottom(); ++i) {
    const Label c = p.bottom_labels()[i];
    s_q[c] += g.bottom_degree(i);
    for (const Edge& e : g.bottom_adj(i))
      if (p.top_labels()[e.to] == c) w_in[c] += e.w;
  }
  for (NodeId j = 0; j < g.n_top(); ++j) s_d[p.top_labels()[j]] += g.top_degree(j);

  double q = 0.0;
  for (Label c = 0; c < k; ++c) {
    const double null_term = (static_cast<double>(s_q[c]) / f) *
                             (static_cast<double>(s_d[c]) / f);
    q += static_cast<double>(w_in[c]) / f - lambda * null_term;
  }
  return q;
}

double modularity(const WeightedGraph& g, const Partition& p,
                  const ObjectiveSpec& obj) {
  switch (obj.kind) {
    case Objective::standard:
      return modularity_standard(g, p, obj.resolution);
    case Objective::projected:
      return modularity_projected(g, p, obj.resolution);
    default:
      throw std::invalid_argument(
          "modularity: barber objective needs a bipartite graph");
  }
}

// ---------------------------------------------------------------------------
// CommunityState

CommunityState::CommunityState(const WeightedGraph& g, const ObjectiveSpec& obj)
    : g_(g), kind_(obj.kind), lambda_(obj.resolution) {
  if (kind_ == Objective::barber)
    throw std::invalid_argument("CommunityState: barber objective unsupported");
  if (kind_ == Objective::projected && !g.has_bipartite_sidecar())
    throw std::invalid_argument("CommunityState: sidecar required");
  if (lambda_ <= 0) throw std::invalid_argument("CommunityState: lambda <= 0");
  const NodeId n = g.node_count();
  const Weight two_e = g.total_weight();
  inv_total_ = two_e > 0 ? 1.0 / static_cast<double>(two_e) : 0.0;
  if (kind_ == Objective::projected) {
    const double f = static_cast<double>(g.bipartite_total());
    null_scale_ = f > 0 ? 1.0 / (f * f) : 0.0;
  } else {
    null_scale_ = inv_total_ * inv_total_;
  }
  comm_.resize(n);
  w_in_.assign(n, 0);
  s_tot_.assign(n, 0);
  if (kind_ == Objective::projected) s_bi_.assign(n, 0);
  size_.assign(n, 1);
  live_ = n;
  for (NodeId i = 0; i < n; ++i) {
    comm_[i] = i;
    w_in_[i] = g.self_loop(i);
    s_tot_[i] = g.strength(i);
    if (kind_ == Objective::projected) s_bi_[i] = g.bipartite_degree(i);
  }
}

Weight CommunityState::node_null_weight(NodeId n) const {
  return kind_ == Objective::projected ? g_.bipartite_degree(n)
                                       : g_.strength(n);
}

Weight CommunityState::comm_null_sum(Label c) const {
  return kind_ == Objective::projected ? s_bi_[c] : s_tot_[c];
}

bool CommunityState::is_isolated(NodeId n) const {
  return comm_[n] != kFloating && size_[comm_[n]] == 1;
}

Weight CommunityState::weight_to(NodeId n, Label c) const {
  Weight w = 0;
  for (const Edge& e : g_.neighbors(n))
    if (comm_[e.to] == c) w += e.w;
  return w;
}

double CommunityState::insert_gain(NodeId n, Label c, Weight w_nc) const {
  const double edge_term = 2.0 * static_cast<double>(w_nc) * inv_total_;
  const double null_term = 2.0 * lambda_ *
                           static_cast<double>(comm_null_sum(c)) *
                           static_cast<double>(node_null_weight(n)) *
                           null_scale_;
  return edge_term - null_term;
}

double CommunityState::gain_on_insert(NodeId n, Label c) const {
  if (comm_[n] == kFloating || !is_isolated(n))
    throw std::logic_error("gain_on_insert: node is not an isolated singleton");
  if (c == comm_[n]) return 0.0;
  return insert_gain(n, c, weight_to(n, c));
}

double CommunityState::gain_on_remove(NodeId n, Label c) const {
  if (comm_[n] != c) throw std::logic_error("gain_on_remove: node not in c");
  const Weight w_nc = weight_to(n, c);
  const double edge_term = 2.0 * static_cast<double>(w_nc) * inv_total_;
  const double null_term =
      2.0 * lambda_ *
      static_cast<double>(comm_null_sum(c) - node_null_weight(n)) *
      static_cast<double>(node_null_weight(n)) * null_scale_;
  return -(edge_term - null_term);
}

void CommunityState::remove(NodeId n, Weight w_to_own) {
  const Label c = comm_[n];
  if (c == kFloating) throw std::logic_error("remove: node already floating");
  w_in_[c] -= 2 * w_to_own + g_.self_loop(n);
  s_tot_[c] -= g_.strength(n);
  if (kind_ == Objective::projected) s_bi_[c] -= g_.bipartite_degree(n);
  if (--size_[c] == 0) --live_;
  comm_[n] = kFloating;
}

void CommunityState::insert(NodeId n, Label c, Weight w_nc) {
  if (comm_[n] != kFloating) throw std::logic_error("insert: node not floating");
  w_in_[c] += 2 * w_nc + g_.self_loop(n);
  s_tot_[c] += g_.strength(n);
  if (kind_ == Objective::projected) s_bi_[c] += g_.bipartite_degree(n);
  if (size_[c]++ == 0) ++live_;
  comm_[n] = c;
}

void CommunityState::remove(NodeId n) { remove(n, weight_to(n, comm_[n])); }

void CommunityState::insert(NodeId n, Label c) { insert(n, c, weight_to(n, c)); }

double CommunityState::value() const {
  double q = 0.0;
  for (std::size_t c = 0; c < size_.size(); ++c) {
    if (size_[c] == 0) continue;
    const double null_sum = static_cast<double>(comm_null_sum(c));
    q += static_cast<double>(w_in_[c]) * inv_total_ -
         lambda_ * null_sum * null_sum * null_scale_;
  }
  return q;
}

// ---------------------------------------------------------------------------
// BarberState

BarberState::BarberState(const BipartiteGraph& g, double lambda,
                         const std::vector<Label>& initial)
    : g_(g), lambda_(lambda) {
  if (lambda_ <= 0) throw std::invalid_argument("BarberState: lambda <= 0");
  const std::size_t n = g.n_bottom() + static_cast<std::size_t>(g.n_top());
  if (initial.size() != n)
    throw std::invalid_argument("BarberState: initial label count mismatch");
  const double f = static_cast<double>(g.total_weight());
  inv_total_ = f > 0 ? 1.0 / f : 0.0;
  null_scale_ = inv_total_ * inv_total_;

  comm_ = initial;
  const std::size_t k = slot_count(initial);
  w_in_.assign(k, 0);
  s_q_.assign(k, 0);
  s_d_.assign(k, 0);
  size_.assign(k, 0);
  for (NodeId u = 0; u < n; ++u) {
    const Label c = comm_[u];
    if (size_[c]++ == 0) ++live_;
    if (is_bottom(u))
      s_q_[c] += g.bottom_degree(u);
    else
      s_d_[c] += g.top_degree(u - g.n_bottom());
  }
  for (NodeId i = 0; i < g.n_bottom(); ++i)
    for (const Edge& e : g.bottom_adj(i))
      if (comm_[i] == comm_[g.n_bottom() + e.to]) w_in_[comm_[i]] += e.w;
}

Weight BarberState::node_degree(NodeId u) const {
  return is_bottom(u) ? g_.bottom_degree(u) : g_.top_degree(u - g_.n_bottom());
}

bool BarberState::is_isolated(NodeId u) const {
  return comm_[u] != kFloating && size_[comm_[u]] == 1;
}

Weight BarberState::weight_to(NodeId u, Label c) const {
  Weight w = 0;
  if (is_bottom(u)) {
    for (const Edge& e : g_.bottom_adj(u))
      if (comm_[g_.n_bottom() + e.to] == c) w += e.w;
  } else {
    for (const Edge& e : g_.top_adj(u - g_.n_bottom()))
      if (comm_[e.to] == c) w += e.w;
  }
  return w;
}

double BarberState::insert_gain(NodeId u, Label c, Weight w_uc) const {
  const Weight opposite_sum = is_bottom(u) ? s_d_[c] : s_q_[c];
  return static_cast<double>(w_uc) * inv_total_ -
         lambda_ * static_cast<double>(node_degree(u)) *
             static_cast<double>(opposite_sum) * null_scale_;
}

double BarberState::gain_on_insert(NodeId u, Label c) const {
  if (comm_[u] == kFloating || !is_isolated(u))
    throw std::logic_error("gain_on_insert: node is not an isolated singleton");
  if (c == comm_[u]) return 0.0;
  return insert_gain(u, c, weight_to(u, c));
}

double BarberState::gain_on_remove(NodeId u, Label c) const {
  if (comm_[u] != c) throw std::logic_error("gain_on_remove: node not in c");
  // Opposite-side sums are unaffected by u itself, so the mirrored insert
  // gain needs no adjustment (unlike the unipartite case).
  return -insert_gain(u, c, weight_to(u, c));
}

void BarberState::remove(NodeId u, Weight w_to_own) {
  const Label c = comm_[u];
  if (c == kFloating) throw std::logic_error("remove: node already floating");
  w_in_[c] -= w_to_own;
  if (is_bottom(u))
    s_q_[c] -= g_.bottom_degree(u);
  else
    s_d_[c] -= g_.top_degree(u - g_.n_bottom());
  if (--size_[c] == 0) --live_;
  comm_[u] = kFloating;
}

void BarberState::insert(NodeId u, Label c, Weight w_uc) {
  if (comm_[u] != kFloating) throw std::logic_error("insert: node not floating");
  w_in_[c] += w_uc;
  if (is_bottom(u))
    s_q_[c] += g_.bottom_degree(u);
  else
    s_d_[c] += g_.top_degree(u - g_.n_bottom());
  if (size_[c]++ == 0) ++live_;
  comm_[u] = c;
}

void BarberState::remove(NodeId u) { remove(u, weight_to(u, comm_[u])); }

void BarberState::insert(NodeId u, Label c) { insert(u, c, weight_to(u, c)); }

double BarberState::value() const {
  double q = 0.0;
  for (std::size_t c = 0; c < size_.size(); ++c) {
    if (size_[c] == 0) continue;
    q += static_cast<double>(w_in_[c]) * inv_total_ -
         lambda_ * static_cast<double>(s_q_[c]) * static_cast<double>(s_d_[c]) *
             null_scale_;
  }
  return q;
}

}  // namespace bipart
