#include "sgm/model.hpp"

#include <algorithm>
#include <string>

#include "sgm/error.hpp"

namespace sgm {

namespace {

std::vector<int> latent_triangles(const SgmParams& params) {
  std::vector<int> out;
  for (int t = 0; t < params.d_t.size(); ++t) {
    if (params.d_t[t] > 0.0) out.push_back(t);
  }
  return out;
}

void require_positive_definite(const Eigen::MatrixXd& m, const char* what) {
  if (!is_positive_definite(m)) {
    throw Error(ErrorCode::kNotPositiveDefinite, std::string(what) + " is not positive definite");
  }
}

}  // namespace

std::vector<std::string> BlockLayout::column_names() const {
  std::vector<std::string> names;
  names.reserve(dim());
  for (int v = 0; v < n_vertices; ++v) names.push_back("v" + std::to_string(v));
  for (int e = 0; e < n_edges; ++e) names.push_back("e" + std::to_string(e));
  for (int t : triangles) names.push_back("t" + std::to_string(t));
  return names;
}

void validate_params(const SimplicialComplex& complex, const SgmParams& params) {
  if (params.d_v.size() != complex.n_vertices() || params.d_t.size() != complex.n_triangles()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "params have " + std::to_string(params.d_v.size()) + " vertex and " +
                    std::to_string(params.d_t.size()) + " triangle entries; complex has " +
                    std::to_string(complex.n_vertices()) + " and " +
                    std::to_string(complex.n_triangles()));
  }
  if (!(params.k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (params.d_v.size() > 0 && !(params.d_v.minCoeff() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "d_V entries must be positive");
  }
  if (params.d_t.size() > 0 && !(params.d_t.minCoeff() >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "d_T entries must be nonnegative");
  }
}

bool is_positive_definite(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return false;
  const double floor = 1e-12 * m.trace() / static_cast<double>(m.rows());
  const Eigen::VectorXd pivots = llt.matrixLLT().diagonal().array().square();
  return floor > 0.0 && pivots.minCoeff() > floor;
}

PrecisionMatrix assemble_full_precision(const SimplicialComplex& complex,
                                        const SgmParams& params) {
  validate_params(complex, params);
  const auto inc = incidence_matrices(complex);
  const auto tri = latent_triangles(params);

  const int nv = complex.n_vertices();
  const int ne = complex.n_edges();
  const int nt = static_cast<int>(tri.size());

  PrecisionMatrix out;
  out.kind = PrecisionKind::kFull;
  out.layout = {nv, ne, tri};
  out.values = Eigen::MatrixXd::Zero(nv + ne + nt, nv + ne + nt);
  auto& m = out.values;

  m.topLeftCorner(nv, nv).diagonal() = params.d_v.cwiseInverse();
  m.block(0, nv, nv, ne) = -inc.b1.cast<double>();
  m.block(nv, 0, ne, nv) = -inc.b1.cast<double>().transpose();
  m.block(nv, nv, ne, ne).diagonal().setConstant(params.k);
  for (int j = 0; j < nt; ++j) {
    const Eigen::VectorXd col = inc.b2.col(tri[j]).cast<double>();
    m.block(nv, nv + ne + j, ne, 1) = -col;
    m.block(nv + ne + j, nv, 1, ne) = -col.transpose();
    m(nv + ne + j, nv + ne + j) = 1.0 / params.d_t[tri[j]];
  }
  require_positive_definite(m, "full SGM precision");
  return out;
}

PrecisionMatrix schur_complement(const PrecisionMatrix& omega, std::span<const int> keep_indices) {
  const int n = omega.dim();
  if (keep_indices.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "keep_indices must be nonempty");
  }
  std::vector<bool> kept(n, false);
  for (int i : keep_indices) {
    if (i < 0 || i >= n) {
      throw Error(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i) + " outside matrix");
    }
    if (kept[i]) throw Error(ErrorCode::kInvalidArgument, "keep_indices contains duplicates");
    kept[i] = true;
  }
  std::vector<int> keep(keep_indices.begin(), keep_indices.end());
  std::vector<int> drop;
  for (int i = 0; i < n; ++i) {
    if (!kept[i]) drop.push_back(i);
  }

  const auto& m = omega.values;
  const Eigen::MatrixXd yy = m(keep, keep);
  PrecisionMatrix out;
  out.kind = PrecisionKind::kGeneric;
  if (drop.empty()) {
    out.values = yy;
    return out;
  }
  const Eigen::MatrixXd yw = m(keep, drop);
  const Eigen::MatrixXd ww = m(drop, drop);
  Eigen::LLT<Eigen::MatrixXd> llt(ww);
  if (llt.info() != Eigen::Success || !is_positive_definite(ww)) {
    throw Error(ErrorCode::kSingularBlock, "marginalized block is singular or indefinite");
  }
  out.values = yy - yw * llt.solve(yw.transpose());
  out.values = 0.5 * (out.values + out.values.transpose());
  return out;
}

PrecisionMatrix edge_marginal_precision(const SimplicialComplex& complex,
                                        const SgmParams& params) {
  validate_params(complex, params);
  const auto inc = incidence_matrices(complex);
  const Eigen::MatrixXd b1 = inc.b1.cast<double>();
  const Eigen::MatrixXd b2 = inc.b2.cast<double>();
  const int ne = complex.n_edges();

  PrecisionMatrix out;
  out.kind = PrecisionKind::kEdge;
  out.layout = {0, ne, {}};
  out.values = params.k * Eigen::MatrixXd::Identity(ne, ne) -
               b1.transpose() * params.d_v.asDiagonal() * b1 -
               b2 * params.d_t.asDiagonal() * b2.transpose();
  require_positive_definite(out.values, "edge marginal precision");
  return out;
}

PrecisionMatrix factorized_edge_precision(const SimplicialComplex& complex,
                                          const Eigen::VectorXd& dv_scaled,
                                          const Eigen::VectorXd& dt_scaled, double k) {
  if (dv_scaled.size() != complex.n_vertices() || dt_scaled.size() != complex.n_triangles()) {
    throw Error(ErrorCode::kDimensionMismatch, "scaled parameter lengths do not match complex");
  }
  if (!(k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const auto inc = incidence_matrices(complex);
  const Eigen::MatrixXd b1 = inc.b1.cast<double>();
  const Eigen::MatrixXd b2 = inc.b2.cast<double>();
  const int ne = complex.n_edges();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(ne, ne);

  const Eigen::MatrixXd vertex_factor = id - b1.transpose() * dv_scaled.asDiagonal() * b1;
  const Eigen::MatrixXd triangle_factor = id - b2 * dt_scaled.asDiagonal() * b2.transpose();
  if (!is_positive_definite(vertex_factor)) {
    throw Error(ErrorCode::kConstraintViolated, "(a) I - B1^T diag(d_V/k) B1 is not positive definite");
  }
  if (!is_positive_definite(triangle_factor)) {
    throw Error(ErrorCode::kConstraintViolated, "(b) I - B2 diag(d_T/k) B2^T is not positive definite");
  }

  PrecisionMatrix out;
  out.kind = PrecisionKind::kEdge;
  out.layout = {0, ne, {}};
  out.values = k * vertex_factor * triangle_factor;
  return out;
}

RegressionDecomposition regression_decomposition(const SimplicialComplex& complex,
                                                 const SgmParams& params) {
  validate_params(complex, params);
  const auto inc = incidence_matrices(complex);
  const Eigen::MatrixXd b1 = inc.b1.cast<double>();
  const auto tri = latent_triangles(params);
  const int ne = complex.n_edges();

  Eigen::MatrixXd b2(ne, static_cast<int>(tri.size()));
  Eigen::VectorXd d_t(static_cast<int>(tri.size()));
  for (int j = 0; j < static_cast<int>(tri.size()); ++j) {
    b2.col(j) = inc.b2.col(tri[j]).cast<double>();
    d_t[j] = params.d_t[tri[j]];
  }
  const double d_e = 1.0 / params.k;

  RegressionDecomposition out;
  out.vertex_on_edge = params.d_v.asDiagonal() * b1;
  out.edge_on_vertex = d_e * b1.transpose();
  out.edge_on_triangle = d_e * b2;
  out.triangle_on_edge = d_t.asDiagonal() * b2.transpose();
  out.vertex_noise = params.d_v;
  out.edge_noise = Eigen::VectorXd::Constant(ne, d_e);
  out.triangle_noise = d_t;
  out.triangles = tri;
  return out;
}

bool parameters_identifiable(const SimplicialComplex& complex) {
  const auto lap = hodge_laplacians(complex);
  const int nv = complex.n_vertices();
  const int nt = complex.n_triangles();
  const int n = 1 + nv + nt;

  // Gram matrix of the vectorized atoms under the Frobenius inner product.
  // <b_u b_u^T, b_v b_v^T> = (b_u . b_v)^2 = L0(u,v)^2; vertex/triangle cross
  // terms vanish because B1 B2 = 0.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  gram(0, 0) = complex.n_edges();
  for (int v = 0; v < nv; ++v) {
    gram(0, 1 + v) = gram(1 + v, 0) = lap.l0(v, v);
    for (int u = 0; u < nv; ++u) gram(1 + v, 1 + u) = double(lap.l0(v, u)) * lap.l0(v, u);
  }
  for (int t = 0; t < nt; ++t) {
    gram(0, 1 + nv + t) = gram(1 + nv + t, 0) = lap.l2(t, t);
    for (int s = 0; s < nt; ++s) {
      gram(1 + nv + t, 1 + nv + s) = double(lap.l2(t, s)) * lap.l2(t, s);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double top = std::max(1.0, eig.eigenvalues().maxCoeff());
  return eig.eigenvalues().minCoeff() > 1e-9 * top;
}

}  // namespace sgm
