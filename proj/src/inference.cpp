#include "sgm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgm/error.hpp"

namespace sgm {

namespace {

Eigen::MatrixXd vertex_atoms(const SimplicialComplex& complex) {
  return incidence_matrices(complex).b1.cast<double>();
}

Eigen::MatrixXd triangle_atoms(const SimplicialComplex& complex) {
  return incidence_matrices(complex).b2.cast<double>().transpose();
}

const Eigen::MatrixXd& check_covariance(const SampleCovariance& c,
                                        const SimplicialComplex& complex) {
  if (c.c.rows() != complex.n_edges() || c.c.cols() != complex.n_edges()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "covariance is " + std::to_string(c.c.rows()) + "x" + std::to_string(c.c.cols()) +
                    " but the complex has " + std::to_string(complex.n_edges()) + " edges");
  }
  return c.c;
}

BoxSolverOptions box_options(const InferenceOptions& options) {
  BoxSolverOptions out;
  out.kkt_tolerance = options.kkt_tolerance;
  out.max_iterations = options.max_inner_iterations;
  return out;
}

}  // namespace

SampleCovariance sample_covariance(const Eigen::MatrixXd& edge_samples) {
  if (edge_samples.rows() < 1) throw Error(ErrorCode::kEmptySample, "no samples");
  const int n = static_cast<int>(edge_samples.cols());
  SampleCovariance out;
  out.m = static_cast<int>(edge_samples.rows());
  out.c = Eigen::MatrixXd::Zero(n, n);
  out.c.selfadjointView<Eigen::Lower>().rankUpdate(edge_samples.transpose());
  out.c.triangularView<Eigen::StrictlyUpper>() = out.c.transpose();
  out.c /= static_cast<double>(out.m);
  return out;
}

SampleCovariance sample_covariance(const SampleMatrix& samples) {
  return sample_covariance(edge_block(samples));
}

void InferenceOptions::validate() const {
  const bool ok = max_outer_iterations > 0 && objective_tolerance > 0.0 && kkt_tolerance > 0.0 &&
                  max_inner_iterations > 0 && init_scale > 0.0 && d_v_floor > 0.0 &&
                  d_v_floor <= init_scale &&
                  std::all_of(thresholds.begin(), thresholds.end(),
                              [](double t) { return t >= 0.0; }) &&
                  std::is_sorted(thresholds.begin(), thresholds.end());
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid inference options");
}

EdgeLikelihood::EdgeLikelihood(const SimplicialComplex& complex,
                               const SampleCovariance& covariance)
    : n_edges_(complex.n_edges()),
      trace_c_(covariance.c.trace()),
      vertex_(vertex_atoms(complex), check_covariance(covariance, complex)),
      triangle_(triangle_atoms(complex), covariance.c) {}

double EdgeLikelihood::objective(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt,
                                 double k) const {
  if (!(k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (dv.size() != vertex_.size() || dt.size() != triangle_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "parameter lengths do not match complex");
  }
  const auto fv = vertex_.value(dv, k);
  if (!fv) throw Error(ErrorCode::kConstraintViolated, "(a) I - B1^T diag(dv) B1 is not PD");
  const auto ft = triangle_.value(dt, k);
  if (!ft) throw Error(ErrorCode::kConstraintViolated, "(b) I - B2 diag(dt) B2^T is not PD");
  return n_edges_ * std::log(k) - k * trace_c_ + *fv + *ft;
}

double EdgeLikelihood::curvature_trace(const Eigen::VectorXd& dv,
                                       const Eigen::VectorXd& dt) const {
  return trace_c_ - vertex_.trace_term(dv) - triangle_.trace_term(dt);
}

Eigen::VectorXd EdgeLikelihood::vertex_gradient(const Eigen::VectorXd& dv, double k) const {
  auto e = vertex_.evaluate(dv, k, true);
  if (!e) throw Error(ErrorCode::kConstraintViolated, "(a) I - B1^T diag(dv) B1 is not PD");
  return e->gradient;
}

Eigen::VectorXd EdgeLikelihood::triangle_gradient(const Eigen::VectorXd& dt, double k) const {
  auto e = triangle_.evaluate(dt, k, true);
  if (!e) throw Error(ErrorCode::kConstraintViolated, "(b) I - B2 diag(dt) B2^T is not PD");
  return e->gradient;
}

double EdgeLikelihood::k_derivative(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt,
                                    double k) const {
  return n_edges_ / k - curvature_trace(dv, dt);
}

double EdgeLikelihood::optimal_k(const Eigen::VectorXd& dv, const Eigen::VectorXd& dt) const {
  const double s = curvature_trace(dv, dt);
  if (!(s > 0.0)) {
    throw Error(ErrorCode::kNonpositiveCurvatureTrace,
                "tr(C (I - A - B)) = " + std::to_string(s) + " is not positive");
  }
  return n_edges_ / s;
}

double objective(const SampleCovariance& c, const SimplicialComplex& complex,
                 const Eigen::VectorXd& dv, const Eigen::VectorXd& dt, double k) {
  return EdgeLikelihood(complex, c).objective(dv, dt, k);
}

double update_k(const SampleCovariance& c, const SimplicialComplex& complex,
                const Eigen::VectorXd& dv, const Eigen::VectorXd& dt) {
  return EdgeLikelihood(complex, c).optimal_k(dv, dt);
}

BlockSolution solve_vertex_subproblem(const SampleCovariance& c, const SimplicialComplex& complex,
                                      double k, const Eigen::VectorXd& init,
                                      const InferenceOptions& options) {
  LogDetBlock block(vertex_atoms(complex), check_covariance(c, complex));
  return maximize_block(block, k, options.d_v_floor, init, box_options(options));
}

BlockSolution solve_triangle_subproblem(const SampleCovariance& c,
                                        const SimplicialComplex& complex, double k,
                                        const Eigen::VectorXd& init,
                                        const InferenceOptions& options) {
  LogDetBlock block(triangle_atoms(complex), check_covariance(c, complex));
  return maximize_block(block, k, 0.0, init, box_options(options));
}

std::vector<int> prune_triangles(const Eigen::VectorXd& d_t_hat, double threshold) {
  if (!(threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be nonnegative");
  }
  std::vector<int> out;
  for (int t = 0; t < d_t_hat.size(); ++t) {
    if (d_t_hat[t] > threshold) out.push_back(t);
  }
  return out;
}

InferenceResult infer(const SampleCovariance& c, const SimplicialComplex& candidates,
                      const InferenceOptions& options) {
  options.validate();
  if (candidates.n_edges() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "inference needs at least one edge");
  }
  const EdgeLikelihood likelihood(candidates, c);
  if (!(likelihood.trace_c() > 0.0)) {
    throw Error(ErrorCode::kDegenerateCovariance, "sample covariance has zero trace");
  }
  const auto& vertex = likelihood.vertex_block();
  const auto& triangle = likelihood.triangle_block();
  const auto inner = box_options(options);

  // Uniform small start; shrink until both factors are safely definite.
  double scale = options.init_scale;
  Eigen::VectorXd dv, dt;
  for (int attempt = 0;; ++attempt) {
    dv = Eigen::VectorXd::Constant(vertex.size(), std::max(scale, options.d_v_floor));
    dt = Eigen::VectorXd::Constant(triangle.size(), scale);
    if (vertex.value(dv, 1.0) && triangle.value(dt, 1.0)) break;
    if (attempt > 60) throw Error(ErrorCode::kInfeasibleStart, "no feasible initial point");
    scale *= 0.5;
  }

  InferenceResult result;
  double k = likelihood.n_edges() / likelihood.trace_c();
  double current = likelihood.objective(dv, dt, k);
  result.objective_trace.push_back(current);

  for (result.iterations = 0; result.iterations < options.max_outer_iterations;) {
    k = likelihood.optimal_k(dv, dt);
    const auto vs = maximize_block(vertex, k, options.d_v_floor, dv, inner);
    const auto ts = maximize_block(triangle, k, 0.0, dt, inner);
    dv = vs.x;
    dt = ts.x;
    result.subproblems_converged = vs.converged && ts.converged;
    ++result.iterations;

    const double next = likelihood.objective(dv, dt, k);
    result.objective_trace.push_back(next);
    const double change = std::abs(next - current);
    current = next;
    if (change < options.objective_tolerance * std::max(1.0, std::abs(current))) {
      result.converged = true;
      break;
    }
  }

  result.k_hat = k;
  result.d_v_scaled = dv;
  result.d_t_scaled = dt;
  result.d_v_hat = k * dv;
  result.d_t_hat = k * dt;
  for (double threshold : options.thresholds) {
    result.active_triangles.push_back({threshold, prune_triangles(result.d_t_hat, threshold)});
  }
  return result;
}

}  // namespace sgm
