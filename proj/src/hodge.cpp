#include "sgm/hodge.hpp"

#include <string>

#include "sgm/error.hpp"

namespace sgm {

namespace {

Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.cols() == 0) return Eigen::VectorXd(0);
  return a.completeOrthogonalDecomposition().solve(b);
}

}  // namespace

HodgeDecomposition hodge_decompose(const SimplicialComplex& complex, const Eigen::VectorXd& x_e) {
  if (x_e.size() != complex.n_edges()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "edge signal has length " + std::to_string(x_e.size()) + ", complex has " +
                    std::to_string(complex.n_edges()) + " edges");
  }
  const auto inc = incidence_matrices(complex);
  const Eigen::MatrixXd grad_op = inc.b1.cast<double>().transpose();
  const Eigen::MatrixXd curl_op = inc.b2.cast<double>();

  HodgeDecomposition out;
  out.vertex_potential = least_squares(grad_op, x_e);
  out.triangle_potential = least_squares(curl_op, x_e);
  out.gradient = out.vertex_potential.size() > 0 ? Eigen::VectorXd(grad_op * out.vertex_potential)
                                                 : Eigen::VectorXd::Zero(x_e.size());
  out.solenoidal = out.triangle_potential.size() > 0
                       ? Eigen::VectorXd(curl_op * out.triangle_potential)
                       : Eigen::VectorXd::Zero(x_e.size());
  out.harmonic = x_e - out.gradient - out.solenoidal;
  return out;
}

}  // namespace sgm
