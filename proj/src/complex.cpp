#include "sgm/complex.hpp"

#include <algorithm>
#include <string>

#include "sgm/error.hpp"

namespace sgm {

namespace {

template <std::size_t N>
std::string describe(const std::array<int, N>& simplex) {
  std::string out = "(";
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) out += ",";
    out += std::to_string(simplex[i]);
  }
  return out + ")";
}

template <std::size_t N>
void canonicalize(std::vector<std::array<int, N>>& simplices, int n_vertices) {
  for (auto& s : simplices) {
    for (int v : s) {
      if (v < 0 || v >= n_vertices) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "simplex " + describe(s) + " references a vertex outside [0, " +
                        std::to_string(n_vertices) + ")");
      }
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorCode::kDegenerateSimplex, "simplex " + describe(s) + " repeats a vertex");
    }
  }
  std::sort(simplices.begin(), simplices.end());
  auto dup = std::adjacent_find(simplices.begin(), simplices.end());
  if (dup != simplices.end()) {
    throw Error(ErrorCode::kDuplicateSimplex, "simplex " + describe(*dup) + " listed twice");
  }
}

}  // namespace

int SimplicialComplex::edge_index(int i, int j) const {
  Edge key = i < j ? Edge{i, j} : Edge{j, i};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

SimplicialComplex build_complex(int n_vertices, std::vector<Edge> edges,
                                std::vector<Triangle> triangles) {
  if (n_vertices <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "n_vertices must be positive");
  }
  canonicalize(edges, n_vertices);
  canonicalize(triangles, n_vertices);

  SimplicialComplex complex(n_vertices, std::move(edges), {});
  for (const auto& t : triangles) {
    const Edge faces[3] = {{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
    for (const auto& f : faces) {
      if (complex.edge_index(f[0], f[1]) < 0) {
        throw Error(ErrorCode::kDanglingFace,
                    "triangle " + describe(t) + " has face " + describe(f) + " missing from edges");
      }
    }
  }
  complex.triangles_ = std::move(triangles);
  return complex;
}

IncidenceMatrices incidence_matrices(const SimplicialComplex& complex) {
  IncidenceMatrices out;
  out.b1 = Eigen::MatrixXi::Zero(complex.n_vertices(), complex.n_edges());
  out.b2 = Eigen::MatrixXi::Zero(complex.n_edges(), complex.n_triangles());

  const auto edges = complex.edges();
  for (int e = 0; e < complex.n_edges(); ++e) {
    out.b1(edges[e][0], e) = -1;
    out.b1(edges[e][1], e) = 1;
  }

  // Boundary of [i,j,k] is [j,k] - [i,k] + [i,j].
  const auto triangles = complex.triangles();
  for (int t = 0; t < complex.n_triangles(); ++t) {
    const auto [i, j, k] = triangles[t];
    out.b2(complex.edge_index(i, j), t) = 1;
    out.b2(complex.edge_index(i, k), t) = -1;
    out.b2(complex.edge_index(j, k), t) = 1;
  }
  return out;
}

HodgeLaplacians hodge_laplacians(const SimplicialComplex& complex) {
  const auto inc = incidence_matrices(complex);
  HodgeLaplacians out;
  out.l0 = inc.b1 * inc.b1.transpose();
  out.l1_down = inc.b1.transpose() * inc.b1;
  out.l1_up = inc.b2 * inc.b2.transpose();
  out.l1 = out.l1_down + out.l1_up;
  out.l2 = inc.b2.transpose() * inc.b2;
  return out;
}

std::vector<Triangle> enumerate_3cliques(const SimplicialComplex& complex) {
  // Forward adjacency: neighbours with larger index, sorted because edges are.
  std::vector<std::vector<int>> higher(complex.n_vertices());
  for (const auto& e : complex.edges()) higher[e[0]].push_back(e[1]);

  std::vector<Triangle> cliques;
  std::vector<int> common;
  for (int i = 0; i < complex.n_vertices(); ++i) {
    const auto& ni = higher[i];
    for (int j : ni) {
      common.clear();
      std::set_intersection(ni.begin(), ni.end(), higher[j].begin(), higher[j].end(),
                            std::back_inserter(common));
      for (int k : common) cliques.push_back({i, j, k});
    }
  }
  return cliques;
}

SimplicialComplex clique_complex(const SimplicialComplex& complex) {
  return build_complex(complex.n_vertices(),
                       std::vector<Edge>(complex.edges().begin(), complex.edges().end()),
                       enumerate_3cliques(complex));
}

}  // namespace sgm
