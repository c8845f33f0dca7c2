#pragma once

#include <optional>

#include <Eigen/Dense>

namespace sgm {

/**
 * Concave function of a nonnegative weight vector x:
 *
 *   f(x) = log det(I - sum_i x_i r_i r_i^T) + k * sum_i x_i (r_i^T C r_i)
 *
 * where r_i are the rows of `atoms`. With atoms = B1 this is the vertex block
 * f_V of the edge likelihood, with atoms = B2^T the triangle block f_T.
 *
 * Derivatives, with S = (I - R^T diag(x) R)^{-1} and G = R S R^T:
 *   grad_i   = -G_ii + k (R C R^T)_ii
 *   hess_ij  = -G_ij^2
 */
class LogDetBlock {
 public:
  LogDetBlock(Eigen::MatrixXd atoms, const Eigen::MatrixXd& covariance);

  int size() const { return static_cast<int>(atoms_.rows()); }
  const Eigen::MatrixXd& atoms() const { return atoms_; }
  /// (R C R^T)_ii, the coefficient of x_i in tr(C R^T diag(x) R).
  const Eigen::VectorXd& trace_weights() const { return trace_weights_; }

  struct Evaluation {
    double value = 0.0;
    double log_det = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;  // empty unless requested
  };

  /// nullopt when I - R^T diag(x) R is not safely positive definite
  /// (some Cholesky pivot <= 1e-10).
  std::optional<Evaluation> evaluate(const Eigen::VectorXd& x, double k, bool with_derivatives,
                                     bool with_hessian = false) const;

  std::optional<double> value(const Eigen::VectorXd& x, double k) const;

  /// tr(C R^T diag(x) R).
  double trace_term(const Eigen::VectorXd& x) const { return trace_weights_.dot(x); }

 private:
  Eigen::MatrixXd atoms_;
  Eigen::VectorXd trace_weights_;
};

struct BoxSolverOptions {
  double kkt_tolerance = 1e-7;
  int max_iterations = 200;
  double armijo = 1e-4;
  double backtrack = 0.5;
};

struct BlockSolution {
  Eigen::VectorXd x;
  double value = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/**
 * Maximize block.value(x, k) subject to x >= lower_bound and the implicit
 * definiteness constraint, starting from a strictly feasible `init`.
 *
 * Two-metric projected Newton: coordinates pinned at the bound with an
 * outward gradient move along the gradient, the rest along the (lightly
 * regularized) Newton direction; steps are projected onto the bound and
 * backtracked until feasible and Armijo-sufficient. Falls back to a projected
 * gradient step when the Newton direction cannot make progress.
 *
 * Stops when the projected-gradient residual max_i |P(x + g)_i - x_i| drops
 * to kkt_tolerance. On iteration exhaustion the last (best) iterate is
 * returned with converged = false. Throws kInfeasibleStart.
 */
BlockSolution maximize_block(const LogDetBlock& block, double k, double lower_bound,
                             const Eigen::VectorXd& init, const BoxSolverOptions& options);

}  // namespace sgm
