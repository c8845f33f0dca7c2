#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sgm/complex.hpp"

namespace sgm {

/**
 * Parameters of the simplicial Gaussian model with homogeneous edge noise.
 *
 * d_v holds the diagonal of D_V (one entry per vertex), d_t the diagonal of
 * D_T (one entry per candidate triangle, zero meaning "not filled") and k the
 * common edge precision, D_E^{-1} = k I.
 */
struct SgmParams {
  Eigen::VectorXd d_v;
  Eigen::VectorXd d_t;
  double k = 1.0;
};

/// Checks lengths against the complex and d_v > 0, d_t >= 0, k > 0.
/// Throws kDimensionMismatch or kInvalidArgument. Does not check definiteness.
void validate_params(const SimplicialComplex& complex, const SgmParams& params);

enum class PrecisionKind { kFull, kEdge, kGeneric };

/// Describes how the rows of a full precision matrix map onto simplices.
struct BlockLayout {
  int n_vertices = 0;
  int n_edges = 0;
  std::vector<int> triangles;  // candidate-triangle index for each latent triangle row

  int dim() const { return n_vertices + n_edges + static_cast<int>(triangles.size()); }
  std::vector<std::string> column_names() const;
};

struct PrecisionMatrix {
  Eigen::MatrixXd values;
  PrecisionKind kind = PrecisionKind::kGeneric;
  BlockLayout layout;

  int dim() const { return static_cast<int>(values.rows()); }
};

/**
 * Cholesky-based definiteness test. A matrix passes only when every pivot
 * L_ii^2 exceeds 1e-12 * trace / dim, so nearly singular matrices fail.
 */
bool is_positive_definite(const Eigen::MatrixXd& m);

/**
 * Joint precision over (X_V, X_E, X_T):
 *
 *   [ D_V^{-1}   -B1      0       ]
 *   [ -B1^T      k I      -B2     ]
 *   [ 0          -B2^T    D_T^{-1}]
 *
 * Candidate triangles with d_t = 0 carry no latent variable and are left out
 * of the third block. Throws kNotPositiveDefinite.
 */
PrecisionMatrix assemble_full_precision(const SimplicialComplex& complex, const SgmParams& params);

/// Precision of the Gaussian marginal over keep_indices:
/// O_YY - O_YW O_WW^{-1} O_WY. Throws kSingularBlock, kIndexOutOfRange.
PrecisionMatrix schur_complement(const PrecisionMatrix& omega, std::span<const int> keep_indices);

/// Closed-form edge marginal k I - B1^T D_V B1 - B2 D_T B2^T.
/// Throws kNotPositiveDefinite.
PrecisionMatrix edge_marginal_precision(const SimplicialComplex& complex, const SgmParams& params);

/**
 * k (I - B1^T diag(dv_scaled) B1)(I - B2 diag(dt_scaled) B2^T), with
 * dv_scaled = d_v / k and dt_scaled = d_t / k. Both factors must be positive
 * definite; otherwise throws kConstraintViolated.
 */
PrecisionMatrix factorized_edge_precision(const SimplicialComplex& complex,
                                          const Eigen::VectorXd& dv_scaled,
                                          const Eigen::VectorXd& dt_scaled, double k);

/**
 * The conditional-regression view of the joint model:
 *
 *   X_V = D_V B1 X_E + Z_V,                Z_V ~ N(0, D_V)
 *   X_E = D_E B1^T X_V + D_E B2 X_T + Z_E, Z_E ~ N(0, D_E)
 *   X_T = D_T B2^T X_E + Z_T,              Z_T ~ N(0, D_T)
 *
 * Triangle quantities cover the latent triangles only (d_t > 0), matching the
 * layout of assemble_full_precision().
 */
struct RegressionDecomposition {
  Eigen::MatrixXd vertex_on_edge;      // D_V B1
  Eigen::MatrixXd edge_on_vertex;      // D_E B1^T
  Eigen::MatrixXd edge_on_triangle;    // D_E B2
  Eigen::MatrixXd triangle_on_edge;    // D_T B2^T
  Eigen::VectorXd vertex_noise;        // diag(D_V)
  Eigen::VectorXd edge_noise;          // diag(D_E)
  Eigen::VectorXd triangle_noise;      // diag(D_T)
  std::vector<int> triangles;          // candidate index of each latent triangle

  bool has_triangle_equation() const { return !triangles.empty(); }
};

RegressionDecomposition regression_decomposition(const SimplicialComplex& complex,
                                                 const SgmParams& params);

/**
 * True when (k, d_v, d_t) -> Omega_E is injective, i.e. the matrices I,
 * b_v b_v^T (rows of B1) and c_t c_t^T (columns of B2) are linearly
 * independent. Isolated vertices, isolated single edges and similar
 * configurations make some parameters unobservable from edge data.
 */
bool parameters_identifiable(const SimplicialComplex& complex);

}  // namespace sgm
