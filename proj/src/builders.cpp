#include "spectralwalk/builders.hpp"

#include <cmath>
#include <map>
#include <string>

namespace spectralwalk {

GraphWithGeometry build_lattice(const LatticeSpec& spec) {
  const auto dim = static_cast<std::size_t>(spec.dimension);
  if (spec.dimension < 1) throw InvalidInput("lattice dimension must be >= 1");
  if (spec.lo.size() != dim || spec.hi.size() != dim)
    throw InvalidInput("lattice extents must have one lo/hi per axis");
  if (!(spec.spacing > 0.0)) throw InvalidInput("lattice spacing must be positive");

  std::vector<Index> extent(dim);
  Index total = 1;
  for (std::size_t a = 0; a < dim; ++a) {
    if (spec.hi[a] < spec.lo[a])
      throw InvalidInput("empty lattice extent on axis " + std::to_string(a));
    extent[a] = spec.hi[a] - spec.lo[a] + 1;
    total *= extent[a];
  }

  // Row-major strides: the last axis varies fastest.
  std::vector<Index> stride(dim, 1);
  for (std::size_t a = dim - 1; a > 0; --a) stride[a - 1] = stride[a] * extent[a];

  const double w = 1.0 / (spec.spacing * spec.spacing);
  GraphSpec g;
  g.vertices.reserve(static_cast<std::size_t>(total));
  for (Index id = 0; id < total; ++id) {
    GraphSpec::VertexRecord v{id, 1.0, {}};
    Index rest = id;
    for (std::size_t a = 0; a < dim; ++a) {
      const Index offset = rest / stride[a];
      rest %= stride[a];
      v.coords.push_back(static_cast<double>(spec.lo[a] + offset) * spec.spacing);
      if (offset + 1 < extent[a]) {
        g.edges.push_back({id, id + stride[a], w});
        g.edges.push_back({id + stride[a], id, w});
      }
    }
    g.vertices.push_back(std::move(v));
  }
  return GraphWithGeometry(g);
}

GraphWithGeometry build_point_cloud(const PointCloudSpec& spec) {
  if (!(spec.cutoff > 0.0)) throw InvalidInput("point-cloud cutoff must be positive");
  const Index n = spec.points.rows();
  if (n == 0) throw InvalidInput("point cloud is empty");

  GraphSpec g;
  for (Index i = 0; i < n; ++i) {
    GraphSpec::VertexRecord v{i, 1.0, {}};
    for (Index c = 0; c < spec.points.cols(); ++c) v.coords.push_back(spec.points(i, c));
    g.vertices.push_back(std::move(v));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dist = (spec.points.row(i) - spec.points.row(j)).norm();
      if (dist == 0.0)
        throw InvalidInput("coincident points " + std::to_string(i) + " and " +
                           std::to_string(j));
      if (dist < spec.cutoff) {
        const double w = 1.0 / (dist * dist);
        g.edges.push_back({i, j, w});
        g.edges.push_back({j, i, w});
      }
    }
  }
  try {
    return GraphWithGeometry(g);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations())
      if (v.kind == Violation::Kind::Disconnected)
        throw InvalidInput("point cloud graph is disconnected at cutoff " +
                           std::to_string(spec.cutoff) + ": " + v.where);
    throw;
  }
}

GraphWithGeometry build_path(Index n, double spacing) {
  if (n < 1) throw InvalidInput("path needs at least one vertex");
  return build_lattice({1, {0}, {static_cast<int>(n - 1)}, spacing});
}

GraphWithGeometry build_cycle(Index n) {
  if (n < 3) throw InvalidInput("cycle needs at least three vertices");
  GraphSpec g;
  for (Index i = 0; i < n; ++i) {
    g.vertices.push_back({i, 1.0, {}});
    const Index j = (i + 1) % n;
    g.edges.push_back({i, j, 1.0});
    g.edges.push_back({j, i, 1.0});
  }
  return GraphWithGeometry(g);
}

GraphWithGeometry build_regular_tree(int degree, int depth) {
  if (degree < 2) throw InvalidInput("tree degree must be >= 2");
  if (depth < 0) throw InvalidInput("tree depth must be >= 0");
  GraphSpec g;
  g.vertices.push_back({0, 1.0, {}});
  std::vector<ExternalId> level{0};
  ExternalId next = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<ExternalId> children;
    for (auto parent : level) {
      const int count = parent == 0 ? degree : degree - 1;
      for (int c = 0; c < count; ++c) {
        const ExternalId child = next++;
        g.vertices.push_back({child, 1.0, {}});
        g.edges.push_back({parent, child, 1.0});
        g.edges.push_back({child, parent, 1.0});
        children.push_back(child);
      }
    }
    level = std::move(children);
  }
  return GraphWithGeometry(g);
}

GraphWithGeometry regular_reweighting(
    const GraphWithGeometry& g, double alpha,
    const std::function<double(Index, Index)>& conductance) {
  if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
  std::map<std::pair<Index, Index>, double> c;
  Vector total = Vector::Zero(g.num_vertices());
  for (const auto& e : g.oriented_edges()) {
    const double value = conductance(std::min(e.tail, e.head), std::max(e.tail, e.head));
    if (!(value > 0.0)) throw InvalidInput("conductances must be positive");
    c[std::minmax(e.tail, e.head)] = value;
    total[e.tail] += value;
    total[e.head] += value;
  }

  GraphSpec spec = g.to_spec();
  for (Index x = 0; x < g.num_vertices(); ++x)
    spec.vertices[static_cast<std::size_t>(x)].weight = total[x] / alpha;
  for (auto& e : spec.edges) {
    const Index x = g.index_of(e.tail);
    const Index y = g.index_of(e.head);
    e.weight = c.at(std::minmax(x, y)) / (total[x] / alpha);
  }
  return GraphWithGeometry(spec);
}

} // namespace spectralwalk
