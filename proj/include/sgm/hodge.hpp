#pragma once

#include <Eigen/Dense>

#include "sgm/complex.hpp"

namespace sgm {

/// Orthogonal split of an edge signal x_E = B1^T x_V + B2 x_T + h.
struct HodgeDecomposition {
  Eigen::VectorXd gradient;            // in im(B1^T)
  Eigen::VectorXd solenoidal;          // in im(B2)
  Eigen::VectorXd harmonic;            // in ker(L1)
  Eigen::VectorXd vertex_potential;    // minimum-norm x_V
  Eigen::VectorXd triangle_potential;  // minimum-norm x_T
};

/**
 * Project an edge signal onto the gradient and curl spaces.
 *
 * Both potentials are minimum-norm least-squares solutions computed with a
 * complete orthogonal decomposition of the incidence maps, so rank-deficient
 * B1^T (one null direction per connected component) and B2 are handled
 * without forming Laplacian pseudoinverses. Throws kDimensionMismatch.
 */
HodgeDecomposition hodge_decompose(const SimplicialComplex& complex, const Eigen::VectorXd& x_e);

}  // namespace sgm
