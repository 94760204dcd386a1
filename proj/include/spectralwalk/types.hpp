#ifndef SPECTRALWALK_TYPES_HPP
#define SPECTRALWALK_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace spectralwalk {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

/// Function on the vertices of a graph, indexed by dense vertex index.
using VertexFunction = Vector;
/// Function on the oriented edges of a graph, indexed by oriented-edge index.
using EdgeFunction = Vector;
/// Function on the interior vertices of a domain, indexed by interior index.
using InteriorVector = Vector;

/// Bad input or violated precondition. The CLI maps this to exit code 2.
class InvalidInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A domain with no boundary vertex was used where invertibility is required.
class EmptyBoundary : public InvalidInput {
public:
  EmptyBoundary()
      : InvalidInput("domain has no boundary vertices; the interior "
                     "Laplacian is not invertible") {}
};

/// Numerical failure (factorization, eigensolver, ill-conditioned pencil).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Largest moment/Taylor order accepted anywhere factorials are formed.
inline constexpr int kMaxOrder = 20;

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

} // namespace spectralwalk

#endif // SPECTRALWALK_TYPES_HPP
