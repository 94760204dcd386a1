#ifndef SPECTRALWALK_DOMAIN_HPP
#define SPECTRALWALK_DOMAIN_HPP

#include "spectralwalk/graph.hpp"

#include <memory>
#include <vector>

namespace spectralwalk {

/// Finite connected induced subgraph of a parent graph, split into interior
/// vertices (whose whole parent neighbourhood lies in the subgraph) and
/// boundary vertices. Immutable.
class Domain {
public:
  Domain(std::shared_ptr<const GraphWithGeometry> parent, std::vector<Index> vertices);

  const GraphWithGeometry& parent() const { return *parent_; }
  const std::shared_ptr<const GraphWithGeometry>& parent_ptr() const { return parent_; }

  /// All vertices, ascending parent index.
  const std::vector<Index>& vertices() const { return vertices_; }
  const std::vector<Index>& interior() const { return interior_; }
  const std::vector<Index>& boundary() const { return boundary_; }

  Index interior_size() const { return static_cast<Index>(interior_.size()); }
  bool has_boundary() const { return !boundary_.empty(); }
  /// Throws EmptyBoundary when the boundary is empty.
  void require_boundary() const;

  bool contains(Index x) const;
  bool is_interior(Index x) const { return interior_position(x) >= 0; }
  /// Position of x in interior(), or -1.
  Index interior_position(Index x) const;

  /// Interior values of a parent vertex function.
  InteriorVector restrict(const VertexFunction& f) const;
  /// Parent vertex function equal to v on the interior and zero elsewhere.
  VertexFunction extend(const InteriorVector& v) const;

  /// W_V and w_V restricted to the interior, in interior order.
  Vector interior_vertex_weights() const;
  Vector interior_aux_weights() const;
  /// sum over the interior of W_V, i.e. <1_iD, 1_iD>_V.
  double volume() const { return interior_vertex_weights().sum(); }

private:
  std::shared_ptr<const GraphWithGeometry> parent_;
  std::vector<Index> vertices_;
  std::vector<Index> interior_;
  std::vector<Index> boundary_;
  std::vector<Index> position_; // parent index -> interior position or -1
};

/// Builds the domain induced by `vertices` (parent indices). Throws
/// InvalidInput if the set is empty, out of range, induces a disconnected
/// subgraph, or has no interior vertex.
Domain make_domain(std::shared_ptr<const GraphWithGeometry> parent,
                   std::vector<Index> vertices);

/// Same, with vertices given by external id.
Domain make_domain_by_id(std::shared_ptr<const GraphWithGeometry> parent,
                         const std::vector<ExternalId>& ids);

/// Domain of all parent vertices whose coordinates lie in the closed box
/// [lo, hi]. Requires a parent with coordinates.
Domain make_box_domain(std::shared_ptr<const GraphWithGeometry> parent,
                       const std::vector<double>& lo, const std::vector<double>& hi);

struct RegularityReport {
  bool is_regular = false;
  double alpha = 0.0; // meaningful only when is_regular
  std::vector<std::pair<Index, double>> per_vertex; // interior vertex -> w_V
};

/// Relative tolerance for treating interior auxiliary weights as equal.
inline constexpr double kRegularityTolerance = 1e-12;

RegularityReport regularity(const Domain& d);

/// Indicator of the interior as a parent vertex function.
VertexFunction indicator(const Domain& d);

} // namespace spectralwalk

#endif // SPECTRALWALK_DOMAIN_HPP
