#ifndef SPECTRALWALK_BUILDERS_HPP
#define SPECTRALWALK_BUILDERS_HPP

#include "spectralwalk/graph.hpp"

#include <functional>
#include <vector>

namespace spectralwalk {

/// Box of integer lattice points lo[i]..hi[i] (inclusive) on each axis,
/// embedded with the given spacing.
struct LatticeSpec {
  int dimension = 1;
  std::vector<int> lo;
  std::vector<int> hi;
  double spacing = 1.0;
};

struct PointCloudSpec {
  Matrix points; // one point per row
  double cutoff = 1.0;
};

/// Nearest-neighbour lattice: edges join points at distance <= spacing,
/// W_E = 1/dist^2 and W_V = 1. Vertex ids are row-major positions in the
/// box; coordinates are the embedded positions.
GraphWithGeometry build_lattice(const LatticeSpec& spec);

/// Points joined when strictly closer than the cutoff; W_E = 1/dist^2,
/// W_V = 1. Throws InvalidInput on coincident points or a disconnected result.
GraphWithGeometry build_point_cloud(const PointCloudSpec& spec);

/// Unit-weight path on vertices 0..n-1.
GraphWithGeometry build_path(Index n, double spacing = 1.0);

/// Unit-weight cycle on vertices 0..n-1 (n >= 3).
GraphWithGeometry build_cycle(Index n);

/// Regular tree of the given degree truncated at `depth` levels below the
/// root (root has `degree` children, every other internal vertex
/// degree - 1). Vertex ids in breadth-first order, unit weights.
GraphWithGeometry build_regular_tree(int degree, int depth);

/// Reweights g so that every vertex has auxiliary weight alpha. Each
/// adjacent pair {x,y} gets a symmetric conductance c(x,y) > 0; then
/// W_V(x) = sum_y c(x,y) / alpha and W_E(x,y) = c(x,y) / W_V(x), which is
/// reversible by construction. Orientation and ids are preserved.
GraphWithGeometry regular_reweighting(
    const GraphWithGeometry& g, double alpha,
    const std::function<double(Index, Index)>& conductance);

} // namespace spectralwalk

#endif // SPECTRALWALK_BUILDERS_HPP
