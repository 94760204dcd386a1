#include "spectralwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace spectralwalk {

namespace {

std::string pair_name(ExternalId a, ExternalId b) {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

const char* to_string(Violation::Kind kind) {
  switch (kind) {
  case Violation::Kind::DuplicateVertex: return "duplicate vertex";
  case Violation::Kind::NonPositiveVertexWeight: return "non-positive vertex weight";
  case Violation::Kind::UnknownVertex: return "edge references unknown vertex";
  case Violation::Kind::SelfEdge: return "self-edge";
  case Violation::Kind::DuplicateEdge: return "duplicate edge";
  case Violation::Kind::NonPositiveEdgeWeight: return "non-positive edge weight";
  case Violation::Kind::MissingReverseEdge: return "missing reverse edge";
  case Violation::Kind::Reversibility: return "reversibility W_E(x,y)W_V(x) = W_E(y,x)W_V(y) violated";
  case Violation::Kind::Disconnected: return "graph is disconnected";
  case Violation::Kind::BadOrientation: return "invalid orientation";
  case Violation::Kind::Empty: return "graph has no vertices";
  }
  return "unknown violation";
}

std::string Violation::message() const {
  std::ostringstream os;
  os << to_string(kind);
  if (!where.empty()) os << " at " << where;
  if (discrepancy != 0.0) os << " (discrepancy " << discrepancy << ")";
  return os.str();
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : InvalidInput([&] {
        std::ostringstream os;
        os << "graph validation failed:";
        for (const auto& v : violations) os << "\n  " << v.message();
        return os.str();
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> validate_weighting(const GraphSpec& spec) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  if (spec.vertices.empty()) {
    out.push_back({Kind::Empty, "", 0.0});
    return out;
  }

  std::map<ExternalId, double> weights;
  for (const auto& v : spec.vertices) {
    if (!weights.emplace(v.id, v.weight).second)
      out.push_back({Kind::DuplicateVertex, std::to_string(v.id), 0.0});
    if (!(v.weight > 0.0) || !std::isfinite(v.weight))
      out.push_back({Kind::NonPositiveVertexWeight, std::to_string(v.id), v.weight});
  }

  std::map<std::pair<ExternalId, ExternalId>, double> edges;
  for (const auto& e : spec.edges) {
    const auto name = pair_name(e.tail, e.head);
    if (!weights.count(e.tail) || !weights.count(e.head)) {
      out.push_back({Kind::UnknownVertex, name, 0.0});
      continue;
    }
    if (e.tail == e.head) {
      out.push_back({Kind::SelfEdge, name, 0.0});
      continue;
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      out.push_back({Kind::NonPositiveEdgeWeight, name, e.weight});
    if (!edges.emplace(std::pair{e.tail, e.head}, e.weight).second)
      out.push_back({Kind::DuplicateEdge, name, 0.0});
  }

  for (const auto& [key, w] : edges) {
    const auto [x, y] = key;
    const auto rev = edges.find({y, x});
    if (rev == edges.end()) {
      out.push_back({Kind::MissingReverseEdge, pair_name(y, x), 0.0});
      continue;
    }
    if (x > y) continue; // each pair once
    const double lhs = w * weights.at(x);
    const double rhs = rev->second * weights.at(y);
    const double gap = relative_gap(lhs, rhs);
    if (gap > kReversibilityTolerance)
      out.push_back({Kind::Reversibility, pair_name(x, y), gap});
  }

  // Connectivity of the underlying undirected graph.
  std::map<ExternalId, std::vector<ExternalId>> adj;
  for (const auto& [key, w] : edges) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  std::set<ExternalId> seen{weights.begin()->first};
  std::vector<ExternalId> stack{weights.begin()->first};
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (seen.insert(y).second) stack.push_back(y);
  }
  if (seen.size() != weights.size()) {
    std::ostringstream os;
    os << seen.size() << " of " << weights.size() << " vertices reachable from "
       << weights.begin()->first;
    out.push_back({Kind::Disconnected, os.str(), 0.0});
  }

  if (!spec.orientation.empty()) {
    std::set<std::pair<ExternalId, ExternalId>> chosen;
    for (const auto& [t, h] : spec.orientation) {
      if (!edges.count({t, h})) {
        out.push_back({Kind::BadOrientation, pair_name(t, h) + " is not an edge", 0.0});
        continue;
      }
      if (chosen.count({h, t}) || !chosen.insert({t, h}).second)
        out.push_back({Kind::BadOrientation,
                       pair_name(t, h) + " chosen more than once", 0.0});
    }
    for (const auto& [key, w] : edges) {
      if (key.first < key.second && !chosen.count(key) &&
          !chosen.count({key.second, key.first}))
        out.push_back({Kind::BadOrientation,
                       pair_name(key.first, key.second) + " has no direction", 0.0});
    }
  }
  return out;
}

GraphSpec symmetrized(GraphSpec spec) {
  std::map<ExternalId, double> weights;
  for (const auto& v : spec.vertices) weights.emplace(v.id, v.weight);
  std::set<std::pair<ExternalId, ExternalId>> present;
  for (const auto& e : spec.edges) present.insert({e.tail, e.head});

  const auto original = spec.edges;
  for (const auto& e : original) {
    if (present.count({e.head, e.tail})) continue;
    const auto wt = weights.find(e.tail);
    const auto wh = weights.find(e.head);
    if (wt == weights.end() || wh == weights.end() || e.tail == e.head) continue;
    spec.edges.push_back({e.head, e.tail, e.weight * wt->second / wh->second});
    present.insert({e.head, e.tail});
  }
  spec.mode = GraphSpec::Mode::Full;
  return spec;
}

GraphWithGeometry::GraphWithGeometry(const GraphSpec& input) {
  const GraphSpec spec =
      input.mode == GraphSpec::Mode::Symmetrize ? symmetrized(input) : input;
  if (auto violations = validate_weighting(spec); !violations.empty())
    throw ValidationError(std::move(violations));

  std::vector<const GraphSpec::VertexRecord*> order;
  for (const auto& v : spec.vertices) order.push_back(&v);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return a->id < b->id; });

  const Index n = static_cast<Index>(order.size());
  vertex_weights_.resize(n);
  external_ids_.resize(n);
  const std::size_t dim = order.front()->coords.size();
  bool coords = dim > 0;
  for (Index i = 0; i < n; ++i) {
    vertex_weights_[i] = order[i]->weight;
    external_ids_[i] = order[i]->id;
    index_.emplace(order[i]->id, i);
    coords = coords && order[i]->coords.size() == dim;
  }
  if (coords) {
    coordinates_.resize(n, static_cast<Index>(dim));
    for (Index i = 0; i < n; ++i)
      for (std::size_t c = 0; c < dim; ++c)
        coordinates_(i, static_cast<Index>(c)) = order[i]->coords[c];
  }

  std::vector<std::vector<Neighbor>> lists(n);
  for (const auto& e : spec.edges)
    lists[index_.at(e.tail)].push_back({index_.at(e.head), e.weight});
  offsets_.assign(n + 1, 0);
  aux_weights_ = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    auto& list = lists[i];
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    offsets_[i + 1] = offsets_[i] + static_cast<Index>(list.size());
    for (const auto& nb : list) aux_weights_[i] += nb.weight;
    adjacency_.insert(adjacency_.end(), list.begin(), list.end());
  }

  if (spec.orientation.empty()) {
    for (Index x = 0; x < n; ++x)
      for (const auto& nb : neighbors(x))
        if (x < nb.vertex) oriented_.push_back({x, nb.vertex});
  } else {
    for (const auto& [t, h] : spec.orientation)
      oriented_.push_back({index_.at(t), index_.at(h)});
    std::sort(oriented_.begin(), oriented_.end(), [](const auto& a, const auto& b) {
      return std::minmax(a.tail, a.head) < std::minmax(b.tail, b.head);
    });
  }
}

Index GraphWithGeometry::check(Index x) const {
  if (x < 0 || x >= num_vertices())
    throw InvalidInput("unknown vertex index " + std::to_string(x));
  return x;
}

std::span<const Neighbor> GraphWithGeometry::neighbors(Index x) const {
  check(x);
  return {adjacency_.data() + offsets_[x],
          static_cast<std::size_t>(offsets_[x + 1] - offsets_[x])};
}

double GraphWithGeometry::edge_weight(Index x, Index y) const {
  check(y);
  const auto nbs = neighbors(x);
  const auto it = std::lower_bound(
      nbs.begin(), nbs.end(), y,
      [](const Neighbor& nb, Index v) { return nb.vertex < v; });
  return (it != nbs.end() && it->vertex == y) ? it->weight : 0.0;
}

bool GraphWithGeometry::adjacent(Index x, Index y) const {
  return edge_weight(x, y) > 0.0;
}

std::optional<Index> GraphWithGeometry::find(ExternalId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index GraphWithGeometry::index_of(ExternalId id) const {
  if (auto i = find(id)) return *i;
  throw InvalidInput("unknown vertex id " + std::to_string(id));
}

GraphWithGeometry GraphWithGeometry::reoriented(
    const std::function<bool(const OrientedEdge&)>& flip) const {
  GraphWithGeometry out = *this;
  for (auto& e : out.oriented_)
    if (flip(e)) std::swap(e.tail, e.head);
  return out;
}

GraphSpec GraphWithGeometry::to_spec() const {
  GraphSpec spec;
  for (Index i = 0; i < num_vertices(); ++i) {
    GraphSpec::VertexRecord v{external_ids_[i], vertex_weights_[i], {}};
    if (has_coordinates())
      for (Index c = 0; c < coordinates_.cols(); ++c) v.coords.push_back(coordinates_(i, c));
    spec.vertices.push_back(std::move(v));
  }
  for (Index x = 0; x < num_vertices(); ++x)
    for (const auto& nb : neighbors(x))
      spec.edges.push_back({external_ids_[x], external_ids_[nb.vertex], nb.weight});
  for (const auto& e : oriented_)
    spec.orientation.emplace_back(external_ids_[e.tail], external_ids_[e.head]);
  return spec;
}

double auxiliary_weight(const GraphWithGeometry& g, Index x) {
  return g.aux_weight(x);
}

namespace {
void check_vertex_function(const GraphWithGeometry& g, const VertexFunction& f) {
  if (f.size() != g.num_vertices())
    throw InvalidInput("vertex function has " + std::to_string(f.size()) +
                       " entries, graph has " + std::to_string(g.num_vertices()));
}
void check_edge_function(const GraphWithGeometry& g, const EdgeFunction& F) {
  if (F.size() != g.num_edges())
    throw InvalidInput("edge function has " + std::to_string(F.size()) +
                       " entries, graph has " + std::to_string(g.num_edges()) +
                       " oriented edges");
}
} // namespace

double vertex_inner_product(const GraphWithGeometry& g, const VertexFunction& f,
                            const VertexFunction& h) {
  check_vertex_function(g, f);
  check_vertex_function(g, h);
  return (f.array() * h.array() * g.vertex_weights().array()).sum();
}

double edge_inner_product(const GraphWithGeometry& g, const EdgeFunction& F,
                          const EdgeFunction& H) {
  check_edge_function(g, F);
  check_edge_function(g, H);
  const auto edges = g.oriented_edges();
  double sum = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [x, y] = edges[e];
    const auto i = static_cast<Index>(e);
    sum += F[i] * H[i] * g.edge_weight(x, y) * g.vertex_weight(x);
  }
  return sum;
}

EdgeFunction coboundary(const GraphWithGeometry& g, const VertexFunction& f) {
  check_vertex_function(g, f);
  const auto edges = g.oriented_edges();
  EdgeFunction df(static_cast<Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e)
    df[static_cast<Index>(e)] = f[edges[e].head] - f[edges[e].tail];
  return df;
}

VertexFunction coboundary_adjoint(const GraphWithGeometry& g, const EdgeFunction& F) {
  check_edge_function(g, F);
  // <df,F>_E = sum_e (f(h) - f(t)) F(e) c(e) with c(e) = W_E(t,h) W_V(t);
  // collect the coefficient of each f(x) and divide by W_V(x).
  VertexFunction out = VertexFunction::Zero(g.num_vertices());
  const auto edges = g.oriented_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [t, h] = edges[e];
    const double flux = F[static_cast<Index>(e)] * g.edge_weight(t, h) * g.vertex_weight(t);
    out[h] += flux;
    out[t] -= flux;
  }
  return out.cwiseQuotient(g.vertex_weights());
}

double laplacian_apply(const GraphWithGeometry& g, const VertexFunction& f, Index x) {
  check_vertex_function(g, f);
  double sum = g.aux_weight(x) * f[x];
  for (const auto& nb : g.neighbors(x)) sum -= nb.weight * f[nb.vertex];
  return sum;
}

VertexFunction laplacian(const GraphWithGeometry& g, const VertexFunction& f) {
  check_vertex_function(g, f);
  VertexFunction out(g.num_vertices());
  for (Index x = 0; x < g.num_vertices(); ++x) out[x] = laplacian_apply(g, f, x);
  return out;
}

double transition_probability(const GraphWithGeometry& g, Index x, Index y) {
  return g.edge_weight(x, y) / g.aux_weight(x);
}

} // namespace spectralwalk
