#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sgm {

using Edge = std::array<int, 2>;
using Triangle = std::array<int, 3>;

/**
 * A 2-dimensional simplicial complex on vertices 0..n-1.
 *
 * Edges are stored as (i, j) with i < j and triangles as (i, j, k) with
 * i < j < k, both in lexicographic order. Every face of a triangle is an edge
 * of the complex. Orientation is induced by increasing vertex order.
 *
 * Instances are immutable; construct them through build_complex().
 */
class SimplicialComplex {
 public:
  int n_vertices() const { return n_vertices_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_triangles() const { return static_cast<int>(triangles_.size()); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Triangle> triangles() const { return triangles_; }

  // Position of edge {i, j} in edges(), or -1 when absent. Order of i, j is free.
  int edge_index(int i, int j) const;

  bool operator==(const SimplicialComplex&) const = default;

 private:
  friend SimplicialComplex build_complex(int, std::vector<Edge>, std::vector<Triangle>);

  SimplicialComplex(int n_vertices, std::vector<Edge> edges, std::vector<Triangle> triangles)
      : n_vertices_(n_vertices), edges_(std::move(edges)), triangles_(std::move(triangles)) {}

  int n_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
};

/**
 * Validate and canonicalize a complex.
 *
 * Vertex tuples may be given in any order; they are sorted per simplex and
 * the simplex lists are sorted lexicographically.
 *
 * Throws Error with kIndexOutOfRange, kDegenerateSimplex (repeated vertex),
 * kDuplicateSimplex or kDanglingFace (a triangle face missing from edges).
 */
SimplicialComplex build_complex(int n_vertices, std::vector<Edge> edges,
                                std::vector<Triangle> triangles = {});

/// Signed incidence matrices. Rows index faces, columns index cofaces:
/// b1 is |V| x |E| and b2 is |E| x |T|.
struct IncidenceMatrices {
  Eigen::MatrixXi b1;
  Eigen::MatrixXi b2;
};

IncidenceMatrices incidence_matrices(const SimplicialComplex& complex);

struct HodgeLaplacians {
  Eigen::MatrixXi l0;       // B1 B1^T
  Eigen::MatrixXi l1_down;  // B1^T B1
  Eigen::MatrixXi l1_up;    // B2 B2^T
  Eigen::MatrixXi l1;
  Eigen::MatrixXi l2;       // B2^T B2
};

HodgeLaplacians hodge_laplacians(const SimplicialComplex& complex);

/// Every vertex triple whose three pairwise edges are present, in
/// lexicographic order. Only the 1-skeleton is read.
std::vector<Triangle> enumerate_3cliques(const SimplicialComplex& complex);

/// Same 1-skeleton with every 3-clique filled. This is the candidate complex
/// used for triangle inference.
SimplicialComplex clique_complex(const SimplicialComplex& complex);

}  // namespace sgm
