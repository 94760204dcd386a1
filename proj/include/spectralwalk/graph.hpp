#ifndef SPECTRALWALK_GRAPH_HPP
#define SPECTRALWALK_GRAPH_HPP

#include "spectralwalk/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spectralwalk {

using ExternalId = std::int64_t;

/// Raw, unvalidated description of a weighted bidirected graph, as read from
/// disk or assembled by a builder. Vertex ids are arbitrary integers here.
struct GraphSpec {
  enum class Mode { Full, Symmetrize };

  struct VertexRecord {
    ExternalId id = 0;
    double weight = 1.0;
    std::vector<double> coords; // optional embedding, empty if absent
  };
  struct EdgeRecord {
    ExternalId tail = 0;
    ExternalId head = 0;
    double weight = 1.0;
  };

  std::vector<VertexRecord> vertices;
  std::vector<EdgeRecord> edges;
  /// Chosen direction per adjacent pair; empty means "tail id < head id".
  std::vector<std::pair<ExternalId, ExternalId>> orientation;
  Mode mode = Mode::Full;
};

/// One failed structural or weighting condition found by validate_weighting.
struct Violation {
  enum class Kind {
    DuplicateVertex,
    NonPositiveVertexWeight,
    UnknownVertex,
    SelfEdge,
    DuplicateEdge,
    NonPositiveEdgeWeight,
    MissingReverseEdge,
    Reversibility,
    Disconnected,
    BadOrientation,
    Empty,
  };

  Kind kind;
  std::string where;
  double discrepancy = 0.0;

  std::string message() const;
};

const char* to_string(Violation::Kind kind);

/// Relative tolerance for W_E(x,y) W_V(x) == W_E(y,x) W_V(y).
inline constexpr double kReversibilityTolerance = 1e-12;

/// Checks every graph-with-geometry condition and reports each failure;
/// never throws.
std::vector<Violation> validate_weighting(const GraphSpec& spec);

/// Fills in each missing reverse edge (y,x) from (x,y) via the reversibility
/// condition W_E(y,x) = W_E(x,y) W_V(x) / W_V(y). Existing edges are kept.
GraphSpec symmetrized(GraphSpec spec);

/// Thrown when a GraphSpec fails validation; carries every violation.
class ValidationError : public InvalidInput {
public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

private:
  std::vector<Violation> violations_;
};

struct Neighbor {
  Index vertex;
  double weight; // W_E(x, vertex)
};

struct OrientedEdge {
  Index tail;
  Index head;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Connected bidirected graph with an orientation and a reversible weighting.
/// Vertices are renumbered densely 0..n-1 in ascending external-id order;
/// the external ids are kept for reporting. Immutable after construction.
class GraphWithGeometry {
public:
  /// Validates (after symmetrizing when spec.mode says so) and throws
  /// ValidationError on any violation.
  explicit GraphWithGeometry(const GraphSpec& spec);

  Index num_vertices() const { return vertex_weights_.size(); }
  /// Number of adjacent pairs, i.e. half the number of directed edges.
  Index num_edges() const { return static_cast<Index>(oriented_.size()); }

  double vertex_weight(Index x) const { return vertex_weights_[check(x)]; }
  double aux_weight(Index x) const { return aux_weights_[check(x)]; }
  const Vector& vertex_weights() const { return vertex_weights_; }
  const Vector& aux_weights() const { return aux_weights_; }

  std::span<const Neighbor> neighbors(Index x) const;
  /// W_E(x,y), zero when x and y are not adjacent.
  double edge_weight(Index x, Index y) const;
  bool adjacent(Index x, Index y) const;

  std::span<const OrientedEdge> oriented_edges() const { return oriented_; }

  ExternalId external_id(Index x) const { return external_ids_[check(x)]; }
  /// Dense index of an external id; throws InvalidInput when unknown.
  Index index_of(ExternalId id) const;
  std::optional<Index> find(ExternalId id) const;

  /// Embedding coordinates (one row per vertex) when every vertex has them.
  bool has_coordinates() const { return coordinates_.rows() > 0; }
  const Matrix& coordinates() const { return coordinates_; }

  /// Copy with the direction of every oriented edge for which `flip` returns
  /// true reversed. Weights are untouched.
  GraphWithGeometry reoriented(
      const std::function<bool(const OrientedEdge&)>& flip) const;

  /// Inverse of construction: a spec with full edges and explicit orientation.
  GraphSpec to_spec() const;

  Index check(Index x) const;

private:
  GraphWithGeometry() = default;

  Vector vertex_weights_;
  Vector aux_weights_;
  std::vector<Index> offsets_;
  std::vector<Neighbor> adjacency_; // sorted by neighbour within each vertex
  std::vector<OrientedEdge> oriented_;
  std::vector<ExternalId> external_ids_;
  std::unordered_map<ExternalId, Index> index_;
  Matrix coordinates_;
};

/// w_V(x): total outgoing edge weight at x.
double auxiliary_weight(const GraphWithGeometry& g, Index x);

/// <f,h>_V = sum_x f(x) h(x) W_V(x).
double vertex_inner_product(const GraphWithGeometry& g, const VertexFunction& f,
                            const VertexFunction& h);

/// <F,H>_E = sum over oriented (x,y) of F H W_E(x,y) W_V(x).
double edge_inner_product(const GraphWithGeometry& g, const EdgeFunction& F,
                          const EdgeFunction& H);

/// df(e) = f(head e) - f(tail e) on every oriented edge.
EdgeFunction coboundary(const GraphWithGeometry& g, const VertexFunction& f);

/// Adjoint of the coboundary with respect to <.,.>_E and <.,.>_V.
VertexFunction coboundary_adjoint(const GraphWithGeometry& g,
                                  const EdgeFunction& F);

/// (Lf)(x) = w_V(x) f(x) - sum_y W_E(x,y) f(y). Positive semidefinite
/// convention; the negative of this is the weighted-average form.
double laplacian_apply(const GraphWithGeometry& g, const VertexFunction& f,
                       Index x);
VertexFunction laplacian(const GraphWithGeometry& g, const VertexFunction& f);

/// p(x,y) = W_E(x,y) / w_V(x).
double transition_probability(const GraphWithGeometry& g, Index x, Index y);

} // namespace spectralwalk

#endif // SPECTRALWALK_GRAPH_HPP
