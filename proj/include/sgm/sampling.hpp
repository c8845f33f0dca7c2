#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "sgm/model.hpp"

namespace sgm {

/// m x dim matrix of draws; columns follow layout.column_names().
struct SampleMatrix {
  Eigen::MatrixXd values;
  BlockLayout layout;

  int rows() const { return static_cast<int>(values.rows()); }
};

/**
 * m independent draws from N(0, omega^{-1}).
 *
 * Factors omega = L L^T and solves L^T x = z for standard normal z, so the
 * covariance is never formed. Output is a pure function of (omega, m, seed).
 * Throws kNotPositiveDefinite, kInvalidArgument (m < 1).
 */
SampleMatrix sample(const PrecisionMatrix& omega, int m, std::uint64_t seed);

/// Edge columns of a full or edge-only sample matrix.
Eigen::MatrixXd edge_block(const SampleMatrix& samples);

/**
 * (1/m) sum x_E x_E^T over the edge block of m draws, streamed in chunks so
 * the full sample matrix is never held in memory. Uses the same draws as
 * sample(omega, m, seed).
 */
Eigen::MatrixXd sampled_edge_second_moment(const PrecisionMatrix& omega, int m,
                                           std::uint64_t seed);

}  // namespace sgm
