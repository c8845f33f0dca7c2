#include "sgm/sampling.hpp"

#include <algorithm>
#include <random>

#include "sgm/error.hpp"

namespace sgm {

namespace {

constexpr int kChunk = 2048;

BlockLayout layout_of(const PrecisionMatrix& omega) {
  if (omega.kind == PrecisionKind::kGeneric) return {0, omega.dim(), {}};
  return omega.layout;
}

// Calls sink(first_row, draws) with draws laid out dim x chunk (one draw per column).
void draw(const PrecisionMatrix& omega, int m, std::uint64_t seed,
          const std::function<void(int, const Eigen::MatrixXd&)>& sink) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "sample count must be at least 1");
  if (!is_positive_definite(omega.values)) {
    throw Error(ErrorCode::kNotPositiveDefinite, "cannot sample from an indefinite precision");
  }
  const int dim = omega.dim();
  Eigen::LLT<Eigen::MatrixXd> llt(omega.values);
  const auto upper = llt.matrixU();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd z;
  for (int first = 0; first < m; first += kChunk) {
    const int count = std::min(kChunk, m - first);
    z.resize(dim, count);
    for (int c = 0; c < count; ++c) {
      for (int r = 0; r < dim; ++r) z(r, c) = normal(rng);
    }
    upper.solveInPlace(z);
    sink(first, z);
  }
}

}  // namespace

SampleMatrix sample(const PrecisionMatrix& omega, int m, std::uint64_t seed) {
  SampleMatrix out;
  out.layout = layout_of(omega);
  out.values.resize(m < 1 ? 0 : m, omega.dim());
  draw(omega, m, seed, [&](int first, const Eigen::MatrixXd& x) {
    out.values.middleRows(first, x.cols()) = x.transpose();
  });
  return out;
}

Eigen::MatrixXd edge_block(const SampleMatrix& samples) {
  return samples.values.middleCols(samples.layout.n_vertices, samples.layout.n_edges);
}

Eigen::MatrixXd sampled_edge_second_moment(const PrecisionMatrix& omega, int m,
                                           std::uint64_t seed) {
  const auto layout = layout_of(omega);
  const int ne = layout.n_edges;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(ne, ne);
  draw(omega, m, seed, [&](int, const Eigen::MatrixXd& x) {
    const auto edges = x.middleRows(layout.n_vertices, ne);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(edges);
  });
  acc.triangularView<Eigen::StrictlyUpper>() = acc.transpose();
  return acc / static_cast<double>(m);
}

}  // namespace sgm
