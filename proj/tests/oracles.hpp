// Independent reference computations used only by the test suites. Nothing
// here calls into the inference or model code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sgm/complex.hpp"
#include "sgm/model.hpp"

namespace sgm::oracle {

inline Eigen::MatrixXd b1_of(const SimplicialComplex& c) {
  return incidence_matrices(c).b1.cast<double>();
}
inline Eigen::MatrixXd b2_of(const SimplicialComplex& c) {
  return incidence_matrices(c).b2.cast<double>();
}

/// Erdos-Renyi graph on n vertices with every 3-clique filled.
inline SimplicialComplex random_clique_complex(int n, double q, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(q);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  return clique_complex(build_complex(n, edges));
}

/// O(n^3) scan over all vertex triples.
inline std::vector<Triangle> brute_force_cliques(const SimplicialComplex& c) {
  std::vector<Triangle> out;
  const int n = c.n_vertices();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (c.edge_index(i, j) >= 0 && c.edge_index(i, k) >= 0 && c.edge_index(j, k) >= 0) {
          out.push_back({i, j, k});
        }
      }
    }
  }
  return out;
}

/**
 * Random parameters with d_V ~ U[lo, hi], a random subset of triangles with
 * d_T ~ U[lo, hi] (rest 0) and k = margin * lambda_max of the coupling.
 */
inline SgmParams random_params(const SimplicialComplex& c, std::mt19937_64& rng,
                               double fill = 0.5, double margin = 1.5, double lo = 0.2,
                               double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::bernoulli_distribution coin(fill);
  SgmParams p;
  p.d_v.resize(c.n_vertices());
  for (auto& x : p.d_v) x = u(rng);
  p.d_t = Eigen::VectorXd::Zero(c.n_triangles());
  for (auto& x : p.d_t) {
    if (coin(rng)) x = u(rng);
  }
  const Eigen::MatrixXd b1 = b1_of(c), b2 = b2_of(c);
  const Eigen::MatrixXd coupling =
      b1.transpose() * p.d_v.asDiagonal() * b1 + b2 * p.d_t.asDiagonal() * b2.transpose();
  double top = 1.0;
  if (coupling.rows() > 0) {
    top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(coupling).eigenvalues().maxCoeff();
  }
  p.k = margin * std::max(top, 1e-3);
  return p;
}

/// Marginal precision by inverting the full matrix: (Sigma_YY)^{-1}.
inline Eigen::MatrixXd marginal_by_inversion(const Eigen::MatrixXd& omega,
                                             const std::vector<int>& keep) {
  const Eigen::MatrixXd sigma = omega.inverse();
  return Eigen::MatrixXd(sigma(keep, keep)).inverse();
}

/**
 * Log-space golden-section maximization of a unimodal f on [lo, hi], carried
 * out in extended precision so the maximizer is resolved well below the
 * sqrt(epsilon) limit of double-valued comparisons.
 */
inline double golden_section_max(const std::function<long double(long double)>& f, double lo,
                                 double hi, int iterations = 400) {
  const long double ratio = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double a = std::log(static_cast<long double>(lo)), b = std::log(static_cast<long double>(hi));
  long double c = b - ratio * (b - a), d = a + ratio * (b - a);
  long double fc = f(std::exp(c)), fd = f(std::exp(d));
  for (int i = 0; i < iterations && b - a > 1e-18L; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(std::exp(d));
    }
  }
  return static_cast<double>(std::exp(0.5L * (a + b)));
}

/// tr(C (I - B1^T diag(dv) B1 - B2 diag(dt) B2^T)) from dense matrices.
inline double dense_curvature_trace(const SimplicialComplex& cx, const Eigen::MatrixXd& c,
                                    const Eigen::VectorXd& dv, const Eigen::VectorXd& dt) {
  const Eigen::MatrixXd b1 = b1_of(cx), b2 = b2_of(cx);
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(cx.n_edges(), cx.n_edges()) -
                            b1.transpose() * dv.asDiagonal() * b1 -
                            b2 * dt.asDiagonal() * b2.transpose();
  return (c * m).trace();
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// log det(Omega) - tr(C Omega) evaluated on the dense matrix.
inline double dense_likelihood(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& c) {
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) return -INFINITY;
  const Eigen::VectorXd d = llt.matrixLLT().diagonal();
  if (d.minCoeff() <= 0.0) return -INFINITY;
  return 2.0 * d.array().log().sum() - (c * omega).trace();
}

struct MonolithicResult {
  double k = 0.0;
  Eigen::VectorXd d_v, d_t;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/**
 * Projected-gradient ascent of log det(Omega_E) - tr(C Omega_E) jointly over
 * (k, d_V, d_T) with Omega_E = k I - B1^T D_V B1 - B2 D_T B2^T, d >= 0.
 * Barzilai-Borwein step lengths, backtracking along the projection arc.
 * Derivatives come from Sigma = Omega_E^{-1}: d/dk = tr(Sigma - C),
 * d/dd_i = -r_i^T (Sigma - C) r_i.
 */
inline MonolithicResult monolithic_ascent(const SimplicialComplex& cx, const Eigen::MatrixXd& c,
                                          double tolerance = 1e-10,
                                          int max_iterations = 200000) {
  const Eigen::MatrixXd b1 = b1_of(cx), b2 = b2_of(cx);
  const int nv = cx.n_vertices(), nt = cx.n_triangles(), ne = cx.n_edges();
  Eigen::MatrixXd atoms(nv + nt, ne);  // rows r_i
  atoms << b1, b2.transpose();
  const int n = 1 + nv + nt;

  auto omega_of = [&](const Eigen::VectorXd& th) {
    Eigen::MatrixXd om = th[0] * Eigen::MatrixXd::Identity(ne, ne);
    om -= atoms.transpose() * th.tail(n - 1).asDiagonal() * atoms;
    return om;
  };
  auto value_of = [&](const Eigen::VectorXd& th) { return dense_likelihood(omega_of(th), c); };
  auto grad_of = [&](const Eigen::VectorXd& th) {
    const Eigen::MatrixXd diff = omega_of(th).inverse() - c;
    Eigen::VectorXd g(n);
    g[0] = diff.trace();
    g.tail(n - 1) = -(atoms * diff).cwiseProduct(atoms).rowwise().sum();
    return g;
  };
  auto project = [&](Eigen::VectorXd th) {
    th[0] = std::max(th[0], 1e-12);
    th.tail(n - 1) = th.tail(n - 1).cwiseMax(0.0);
    return th;
  };
  auto residual_of = [&](const Eigen::VectorXd& th, const Eigen::VectorXd& g) {
    return (project(th + g) - th).cwiseAbs().maxCoeff();
  };

  Eigen::VectorXd th = Eigen::VectorXd::Zero(n);
  th[0] = ne / c.trace();
  double f = value_of(th);
  Eigen::VectorXd g = grad_of(th);
  double step = 1.0 / std::max(1.0, g.cwiseAbs().maxCoeff());

  MonolithicResult out;
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    if (residual_of(th, g) <= tolerance) break;
    bool moved = false;
    for (int bt = 0; bt < 80; ++bt, step *= 0.5) {
      const Eigen::VectorXd trial = project(th + step * g);
      const double ft = value_of(trial);
      if (std::isfinite(ft) && ft >= f + 1e-4 * g.dot(trial - th)) {
        const Eigen::VectorXd gt = grad_of(trial);
        const Eigen::VectorXd s = trial - th, y = gt - g;
        const double sy = s.dot(y);
        step = sy < 0.0 ? std::min(1e6, s.squaredNorm() / -sy) : 2.0 * step;
        th = trial;
        f = ft;
        g = gt;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  out.k = th[0];
  out.d_v = th.segment(1, nv);
  out.d_t = th.tail(nt);
  out.value = f;
  out.residual = residual_of(th, g);
  return out;
}

}  // namespace sgm::oracle
