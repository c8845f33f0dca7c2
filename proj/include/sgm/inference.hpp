#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sgm/complex.hpp"
#include "sgm/logdet_block.hpp"
#include "sgm/model.hpp"
#include "sgm/sampling.hpp"

namespace sgm {

/// C = (1/m) sum_i x_i x_i^T (no centering; the model is zero-mean).
struct SampleCovariance {
  Eigen::MatrixXd c;
  int m = 0;
};

/// Rows of `edge_samples` are observations. Throws kEmptySample.
SampleCovariance sample_covariance(const Eigen::MatrixXd& edge_samples);
SampleCovariance sample_covariance(const SampleMatrix& samples);

struct InferenceOptions {
  int max_outer_iterations = 500;
  double objective_tolerance = 1e-8;  // relative change over one sweep
  double kkt_tolerance = 1e-7;        // projected-gradient residual of each block
  int max_inner_iterations = 200;
  std::vector<double> thresholds{0.01, 0.05, 0.1};
  double init_scale = 1e-3;  // initial scaled d_V and d_T entries
  double d_v_floor = 1e-8;   // lower bound on scaled d_V

  /// Throws kInvalidArgument unless everything is positive and thresholds ascend.
  void validate() const;
};

/**
 * Edge log-likelihood in the scale-separated parameterization
 * (k, dv = d_V / k, dt = d_T / k):
 *
 *   N_E log k - k tr(C) + f_V(dv, k) + f_T(dt, k)
 *   f_V = log det(I - B1^T diag(dv) B1) + k tr(C B1^T diag(dv) B1)
 *   f_T = log det(I - B2 diag(dt) B2^T) + k tr(C B2 diag(dt) B2^T)
 *
 * which equals log det(Omega_E) - tr(C Omega_E) because B1 B2 = 0 makes
 * Omega_E = k (I - B1^T diag(dv) B1)(I - B2 diag(dt) B2^T).
 */
class EdgeLikelihood {
 public:
  EdgeLikelihood(const SimplicialComplex& complex, const SampleCovariance& covariance);

  int n_edges() const { return n_edges_; }
  double trace_c() const { return trace_c_; }
  const LogDetBlock& vertex_block() const { return vertex_; }
  const LogDetBlock& triangle_block() const { return triangle_; }

  /// Throws kConstraintViolated when (a) or (b) fails, kInvalidArgument for k <= 0.
  double objective(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt, double k) const;

  /// tr(C (I - A - B)): the coefficient of -k in the objective.
  double curvature_trace(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt) const;

  Eigen::VectorXd vertex_gradient(const Eigen::VectorXd& dv, double k) const;
  Eigen::VectorXd triangle_gradient(const Eigen::VectorXd& dt, double k) const;
  double k_derivative(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt, double k) const;

  /// argmax_k N_E log k - k s = N_E / s. Throws kNonpositiveCurvatureTrace if s <= 0.
  double optimal_k(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt) const;

 private:
  int n_edges_;
  double trace_c_;
  LogDetBlock vertex_;
  LogDetBlock triangle_;
};

double objective(const SampleCovariance& c, const SimplicialComplex& complex,
                 const Eigen::VectorXd& dv, const Eigen::VectorXd& dt, double k);

double update_k(const SampleCovariance& c, const SimplicialComplex& complex,
                const Eigen::VectorXd& dv, const Eigen::VectorXd& dt);

/// Maximize f_V over dv >= d_v_floor with (a) kept. Non-convergence is
/// reported through BlockSolution::converged. Throws kInfeasibleStart.
BlockSolution solve_vertex_subproblem(const SampleCovariance& c, const SimplicialComplex& complex,
                                      double k, const Eigen::VectorXd& init,
                                      const InferenceOptions& options);

/// Maximize f_T over dt >= 0 with (b) kept. Throws kInfeasibleStart.
BlockSolution solve_triangle_subproblem(const SampleCovariance& c,
                                        const SimplicialComplex& complex, double k,
                                        const Eigen::VectorXd& init,
                                        const InferenceOptions& options);

/// Indices with d_t_hat > threshold.
std::vector<int> prune_triangles(const Eigen::VectorXd& d_t_hat, double threshold);

struct ThresholdSelection {
  double threshold = 0.0;
  std::vector<int> triangles;
};

struct InferenceResult {
  double k_hat = 0.0;
  Eigen::VectorXd d_v_hat;
  Eigen::VectorXd d_t_hat;
  Eigen::VectorXd d_v_scaled;
  Eigen::VectorXd d_t_scaled;
  std::vector<double> objective_trace;  // initial point, then one value per sweep
  bool converged = false;
  bool subproblems_converged = true;
  int iterations = 0;
  std::vector<ThresholdSelection> active_triangles;

  SgmParams params() const { return {d_v_hat, d_t_hat, k_hat}; }
};

/**
 * Block-coordinate maximum likelihood: repeat the closed-form k update, the
 * vertex block and the triangle block until the objective changes by less
 * than objective_tolerance (relative) over a sweep.
 *
 * The triangles of `candidates` are the candidate set; callers normally pass
 * clique_complex() of the observed graph. Throws kDegenerateCovariance when
 * tr(C) = 0 and kDimensionMismatch when C does not match the edge count.
 */
InferenceResult infer(const SampleCovariance& c, const SimplicialComplex& candidates,
                      const InferenceOptions& options = {});

}  // namespace sgm
