#include "sgm/logdet_block.hpp"

#include <algorithm>
#include <cmath>

#include "sgm/error.hpp"

namespace sgm {

namespace {

constexpr double kMinPivot = 1e-10;
constexpr int kMaxBacktracks = 60;

double projected_residual(const Eigen::VectorXd& x, const Eigen::VectorXd& g, double lb) {
  double r = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(std::max(lb, x[i] + g[i]) - x[i]));
  }
  return r;
}

}  // namespace

LogDetBlock::LogDetBlock(Eigen::MatrixXd atoms, const Eigen::MatrixXd& covariance)
    : atoms_(std::move(atoms)) {
  trace_weights_ = (atoms_ * covariance).cwiseProduct(atoms_).rowwise().sum();
}

std::optional<LogDetBlock::Evaluation> LogDetBlock::evaluate(const Eigen::VectorXd& x, double k,
                                                             bool with_derivatives,
                                                             bool with_hessian) const {
  const int ne = static_cast<int>(atoms_.cols());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(ne, ne);
  if (atoms_.rows() > 0) m.noalias() -= atoms_.transpose() * x.asDiagonal() * atoms_;

  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
  if (ne > 0 && diag.array().square().minCoeff() <= kMinPivot) return std::nullopt;

  Evaluation out;
  out.log_det = 2.0 * diag.array().log().sum();
  out.value = out.log_det + k * trace_term(x);
  if (!with_derivatives) return out;

  // W = L^{-1} R^T, so W^T W = R S R^T.
  Eigen::MatrixXd w = atoms_.transpose();
  llt.matrixL().solveInPlace(w);
  out.gradient = k * trace_weights_ - w.colwise().squaredNorm().transpose();
  if (with_hessian) {
    Eigen::MatrixXd g(w.cols(), w.cols());
    g.setZero();
    g.selfadjointView<Eigen::Lower>().rankUpdate(w.transpose());
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    out.hessian = -g.cwiseProduct(g);
  }
  return out;
}

std::optional<double> LogDetBlock::value(const Eigen::VectorXd& x, double k) const {
  auto e = evaluate(x, k, false);
  if (!e) return std::nullopt;
  return e->value;
}

BlockSolution maximize_block(const LogDetBlock& block, double k, double lower_bound,
                             const Eigen::VectorXd& init, const BoxSolverOptions& options) {
  const int n = block.size();
  if (init.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "initial point has wrong length");
  }
  if (n > 0 && init.minCoeff() < lower_bound) {
    throw Error(ErrorCode::kInfeasibleStart, "initial point violates the lower bound");
  }
  auto current = block.evaluate(init, k, true, true);
  if (!current) {
    throw Error(ErrorCode::kInfeasibleStart, "initial point violates the definiteness constraint");
  }

  BlockSolution sol;
  sol.x = init;
  sol.value = current->value;
  if (n == 0) {
    sol.converged = true;
    return sol;
  }

  // Tries x(alpha) = P(x + alpha d); returns true and updates state on success.
  auto line_search = [&](const Eigen::VectorXd& dir, const std::vector<bool>& pinned) {
    const Eigen::VectorXd& g = current->gradient;
    double alpha = 1.0;
    for (int attempt = 0; attempt < kMaxBacktracks; ++attempt, alpha *= options.backtrack) {
      Eigen::VectorXd trial = (sol.x + alpha * dir).cwiseMax(lower_bound);
      double predicted = 0.0;
      for (int i = 0; i < n; ++i) {
        predicted += pinned[i] ? g[i] * (trial[i] - sol.x[i]) : alpha * g[i] * dir[i];
      }
      if (!(predicted > 0.0)) return false;
      auto next = block.evaluate(trial, k, false);
      if (!next) continue;
      if (next->value >= sol.value + options.armijo * predicted) {
        sol.x = std::move(trial);
        current = block.evaluate(sol.x, k, true, true);
        sol.value = current->value;
        return true;
      }
    }
    return false;
  };

  for (sol.iterations = 0; sol.iterations < options.max_iterations; ++sol.iterations) {
    const Eigen::VectorXd& g = current->gradient;
    sol.kkt_residual = projected_residual(sol.x, g, lower_bound);
    if (sol.kkt_residual <= options.kkt_tolerance) {
      sol.converged = true;
      return sol;
    }

    // Coordinates at (or within eps of) the bound whose gradient points outward.
    const double eps = std::min(1e-6, sol.kkt_residual);
    std::vector<bool> pinned(n, false);
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      pinned[i] = sol.x[i] - lower_bound <= eps && g[i] < 0.0;
      if (!pinned[i]) free.push_back(i);
    }

    Eigen::VectorXd dir = g;
    if (!free.empty()) {
      Eigen::MatrixXd neg_h = -current->hessian(free, free);
      const double mu = 1e-12 * std::max(1.0, neg_h.diagonal().maxCoeff());
      neg_h.diagonal().array() += mu;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(neg_h);
      if (ldlt.info() == Eigen::Success) {
        const Eigen::VectorXd step = ldlt.solve(g(free));
        if (step.allFinite()) dir(free) = step;
      }
    }

    if (line_search(dir, pinned)) continue;
    // Projected-gradient fallback; Armijo measured along the projection arc.
    const std::vector<bool> arc(n, true);
    if (line_search(g, arc)) continue;
    break;  // no ascent possible at working precision
  }
  sol.kkt_residual = projected_residual(sol.x, current->gradient, lower_bound);
  sol.converged = sol.kkt_residual <= options.kkt_tolerance;
  return sol;
}

}  // namespace sgm
