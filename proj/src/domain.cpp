#include "spectralwalk/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spectralwalk {

Domain::Domain(std::shared_ptr<const GraphWithGeometry> parent, std::vector<Index> vertices)
    : parent_(std::move(parent)), vertices_(std::move(vertices)) {
  if (!parent_) throw InvalidInput("domain needs a parent graph");
  const auto& g = *parent_;
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  if (vertices_.empty()) throw InvalidInput("domain vertex set is empty");
  for (auto x : vertices_) g.check(x);

  std::vector<char> member(static_cast<std::size_t>(g.num_vertices()), 0);
  for (auto x : vertices_) member[static_cast<std::size_t>(x)] = 1;

  // Induced subgraph must be connected.
  std::vector<char> seen(member.size(), 0);
  std::vector<Index> stack{vertices_.front()};
  seen[static_cast<std::size_t>(vertices_.front())] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Index x = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(x)) {
      const auto y = static_cast<std::size_t>(nb.vertex);
      if (member[y] && !seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  if (reached != vertices_.size()) {
    std::ostringstream os;
    os << "domain induces a disconnected subgraph (" << reached << " of "
       << vertices_.size() << " vertices reachable)";
    throw InvalidInput(os.str());
  }

  position_.assign(member.size(), -1);
  for (auto x : vertices_) {
    const auto nbs = g.neighbors(x);
    const bool inside = std::all_of(nbs.begin(), nbs.end(), [&](const Neighbor& nb) {
      return member[static_cast<std::size_t>(nb.vertex)] != 0;
    });
    if (inside) {
      position_[static_cast<std::size_t>(x)] = static_cast<Index>(interior_.size());
      interior_.push_back(x);
    } else {
      boundary_.push_back(x);
    }
  }
  if (interior_.empty()) throw InvalidInput("domain has an empty interior");
}

void Domain::require_boundary() const {
  if (!has_boundary()) throw EmptyBoundary();
}

bool Domain::contains(Index x) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), x);
}

Index Domain::interior_position(Index x) const {
  if (x < 0 || x >= static_cast<Index>(position_.size())) return -1;
  return position_[static_cast<std::size_t>(x)];
}

InteriorVector Domain::restrict(const VertexFunction& f) const {
  if (f.size() != parent_->num_vertices())
    throw InvalidInput("vertex function size does not match the parent graph");
  InteriorVector v(interior_size());
  for (Index i = 0; i < interior_size(); ++i) v[i] = f[interior_[static_cast<std::size_t>(i)]];
  return v;
}

VertexFunction Domain::extend(const InteriorVector& v) const {
  if (v.size() != interior_size())
    throw InvalidInput("interior vector size does not match the domain interior");
  VertexFunction f = VertexFunction::Zero(parent_->num_vertices());
  for (Index i = 0; i < interior_size(); ++i) f[interior_[static_cast<std::size_t>(i)]] = v[i];
  return f;
}

Vector Domain::interior_vertex_weights() const {
  Vector w(interior_size());
  for (Index i = 0; i < interior_size(); ++i)
    w[i] = parent_->vertex_weight(interior_[static_cast<std::size_t>(i)]);
  return w;
}

Vector Domain::interior_aux_weights() const {
  Vector w(interior_size());
  for (Index i = 0; i < interior_size(); ++i)
    w[i] = parent_->aux_weight(interior_[static_cast<std::size_t>(i)]);
  return w;
}

Domain make_domain(std::shared_ptr<const GraphWithGeometry> parent, std::vector<Index> vertices) {
  return Domain(std::move(parent), std::move(vertices));
}

Domain make_domain_by_id(std::shared_ptr<const GraphWithGeometry> parent,
                         const std::vector<ExternalId>& ids) {
  if (!parent) throw InvalidInput("domain needs a parent graph");
  std::vector<Index> vertices;
  vertices.reserve(ids.size());
  for (auto id : ids) vertices.push_back(parent->index_of(id));
  return Domain(std::move(parent), std::move(vertices));
}

Domain make_box_domain(std::shared_ptr<const GraphWithGeometry> parent,
                       const std::vector<double>& lo, const std::vector<double>& hi) {
  if (!parent) throw InvalidInput("domain needs a parent graph");
  if (!parent->has_coordinates())
    throw InvalidInput("box domains need a parent graph with coordinates");
  const Matrix& xy = parent->coordinates();
  const auto dim = static_cast<std::size_t>(xy.cols());
  if (lo.size() != dim || hi.size() != dim)
    throw InvalidInput("box corners must match the coordinate dimension");
  constexpr double slack = 1e-9;
  std::vector<Index> vertices;
  for (Index x = 0; x < xy.rows(); ++x) {
    bool in = true;
    for (std::size_t a = 0; a < dim && in; ++a) {
      const double c = xy(x, static_cast<Index>(a));
      in = c >= lo[a] - slack && c <= hi[a] + slack;
    }
    if (in) vertices.push_back(x);
  }
  return Domain(std::move(parent), std::move(vertices));
}

RegularityReport regularity(const Domain& d) {
  RegularityReport report;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (auto x : d.interior()) {
    const double w = d.parent().aux_weight(x);
    report.per_vertex.emplace_back(x, w);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  report.is_regular = (hi - lo) <= kRegularityTolerance * hi;
  if (report.is_regular) {
    double sum = 0.0;
    for (const auto& [x, w] : report.per_vertex) sum += w;
    report.alpha = sum / static_cast<double>(report.per_vertex.size());
  }
  return report;
}

VertexFunction indicator(const Domain& d) {
  VertexFunction f = VertexFunction::Zero(d.parent().num_vertices());
  for (auto x : d.interior()) f[x] = 1.0;
  return f;
}

} // namespace spectralwalk
