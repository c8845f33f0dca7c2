#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sgm/complex.hpp"
#include "sgm/error.hpp"
#include "sgm/random_complex.hpp"

using namespace sgm;

namespace {

SimplicialComplex filled_triangle() { return build_complex(3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an sgm::Error";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(BuildComplex, FilledTriangleIsValid) {
  const auto c = filled_triangle();
  EXPECT_EQ(c.n_vertices(), 3);
  EXPECT_EQ(c.n_edges(), 3);
  EXPECT_EQ(c.n_triangles(), 1);
}

TEST(BuildComplex, MissingFaceIsDangling) {
  EXPECT_EQ(code_of([] { build_complex(3, {{0, 1}, {0, 2}}, {{0, 1, 2}}); }),
            ErrorCode::kDanglingFace);
}

TEST(BuildComplex, VertexOnlyComplex) {
  const auto c = build_complex(4, {}, {});
  EXPECT_EQ(c.n_edges(), 0);
  EXPECT_EQ(c.n_triangles(), 0);
  const auto inc = incidence_matrices(c);
  EXPECT_EQ(inc.b1.rows(), 4);
  EXPECT_EQ(inc.b1.cols(), 0);
}

TEST(BuildComplex, RejectsBadInput) {
  EXPECT_EQ(code_of([] { build_complex(3, {{0, 1}, {1, 0}}); }), ErrorCode::kDuplicateSimplex);
  EXPECT_EQ(code_of([] { build_complex(3, {{0, 3}}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([] { build_complex(3, {{1, 1}}); }), ErrorCode::kDegenerateSimplex);
  EXPECT_EQ(code_of([] { build_complex(0, {}); }), ErrorCode::kInvalidArgument);
}

TEST(BuildComplex, CanonicalizesOrder) {
  const auto c = build_complex(3, {{2, 1}, {1, 0}, {2, 0}}, {{2, 0, 1}});
  ASSERT_EQ(c.n_edges(), 3);
  EXPECT_EQ(c.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(c.edges()[1], (Edge{0, 2}));
  EXPECT_EQ(c.edges()[2], (Edge{1, 2}));
  EXPECT_EQ(c.triangles()[0], (Triangle{0, 1, 2}));
  EXPECT_EQ(c, filled_triangle());
  EXPECT_EQ(c.edge_index(2, 0), 1);
  EXPECT_EQ(c.edge_index(0, 0), -1);
}

TEST(Incidence, FilledTriangleByHand) {
  const auto inc = incidence_matrices(filled_triangle());
  Eigen::MatrixXi b1(3, 3), b2(3, 1);
  b1 << -1, -1, 0,
         1, 0, -1,
         0, 1, 1;
  b2 << 1, -1, 1;
  EXPECT_EQ(inc.b1, b1);
  EXPECT_EQ(inc.b2, b2);
  EXPECT_TRUE((inc.b1 * inc.b2).isZero());
}

TEST(Incidence, PathHasEmptyB2) {
  const auto inc = incidence_matrices(build_complex(3, {{0, 1}, {1, 2}}));
  Eigen::MatrixXi b1(3, 2);
  b1 << -1, 0,
         1, -1,
         0, 1;
  EXPECT_EQ(inc.b1, b1);
  EXPECT_EQ(inc.b2.rows(), 2);
  EXPECT_EQ(inc.b2.cols(), 0);
}

TEST(Incidence, ColumnStructureAndBoundaryOfBoundary) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = oracle::random_clique_complex(3 + trial % 10, 0.5, rng);
    const auto inc = incidence_matrices(c);
    for (int e = 0; e < inc.b1.cols(); ++e) {
      EXPECT_EQ(inc.b1.col(e).sum(), 0);
      EXPECT_EQ(inc.b1.col(e).cwiseAbs().sum(), 2);
    }
    for (int t = 0; t < inc.b2.cols(); ++t) EXPECT_EQ(inc.b2.col(t).cwiseAbs().sum(), 3);
    EXPECT_TRUE((inc.b1 * inc.b2).isZero()) << "trial " << trial;

    // B1 (B2 y) = 0 for random real y.
    const Eigen::VectorXd y = Eigen::VectorXd::Random(inc.b2.cols());
    if (inc.b2.cols() > 0) {
      EXPECT_LT((inc.b1.cast<double>() * (inc.b2.cast<double>() * y)).norm(), 1e-12);
    }
  }
}

TEST(Laplacians, FilledTriangleDiagonalIsThree) {
  const auto lap = hodge_laplacians(filled_triangle());
  for (int e = 0; e < 3; ++e) {
    EXPECT_EQ(lap.l1(e, e), 3);
    EXPECT_EQ(lap.l1_down(e, e), 2);
    EXPECT_EQ(lap.l1_up(e, e), 1);
  }
  EXPECT_EQ(lap.l2(0, 0), 3);
}

TEST(Laplacians, NoTrianglesMeansNoUpperPart) {
  const auto lap = hodge_laplacians(build_complex(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}));
  EXPECT_TRUE(lap.l1_up.isZero());
  EXPECT_EQ(lap.l1, lap.l1_down);
}

TEST(Laplacians, GraphLaplacianIsDegreeMinusAdjacency) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    const auto c = oracle::random_clique_complex(n, 0.5, rng);
    Eigen::MatrixXi adjacency = Eigen::MatrixXi::Zero(n, n);
    for (const auto& e : c.edges()) adjacency(e[0], e[1]) = adjacency(e[1], e[0]) = 1;
    Eigen::MatrixXi degree = Eigen::MatrixXi::Zero(n, n);
    degree.diagonal() = adjacency.rowwise().sum();
    const auto lap = hodge_laplacians(c);
    EXPECT_EQ(lap.l0, degree - adjacency);

    for (const Eigen::MatrixXi* m : {&lap.l0, &lap.l1, &lap.l2}) {
      if (m->rows() == 0) continue;
      EXPECT_EQ(*m, m->transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m->cast<double>());
      EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-10);
    }
  }
}

TEST(Cliques, SmallCases) {
  const auto tri = enumerate_3cliques(filled_triangle());
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0], (Triangle{0, 1, 2}));

  const auto k4 = build_complex(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(enumerate_3cliques(k4).size(), 4u);
  EXPECT_EQ(enumerate_3cliques(k4), oracle::brute_force_cliques(k4));

  const auto tree = build_complex(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
  EXPECT_TRUE(enumerate_3cliques(tree).empty());
}

TEST(Cliques, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 10;
    const double q = 0.2 + 0.6 * (trial % 5) / 4.0;
    const auto c = oracle::random_clique_complex(n, q, rng);
    EXPECT_EQ(enumerate_3cliques(c), oracle::brute_force_cliques(c));
  }
}

TEST(RandomComplex, FillExtremes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto none = random_complex(12, 0.5, 0.0, seed);
    EXPECT_EQ(std::count(none.filled.begin(), none.filled.end(), true), 0);
    const auto all = random_complex(12, 0.5, 1.0, seed);
    EXPECT_EQ(std::count(all.filled.begin(), all.filled.end(), true), all.complex.n_triangles());
    EXPECT_EQ(all.complex.triangles().size(), enumerate_3cliques(all.complex).size());
  }
}

TEST(RandomComplex, FilledCountIsFloorOfFraction) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto rc = random_complex(10, 0.5, 0.3, seed);
    const auto k = rc.complex.n_triangles();
    EXPECT_EQ(std::count(rc.filled.begin(), rc.filled.end(), true),
              static_cast<long>(std::floor(0.3 * k + 1e-9)));
  }
}

TEST(RandomComplex, MeanEdgeCountMatchesBinomial) {
  const int n = 30, seeds = 1000;
  const double q = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) sum += random_complex(n, q, 0.0, s).complex.n_edges();
  const double mean = sum / seeds;
  const double stderr_mean = std::sqrt(pairs * q * (1 - q) / seeds);
  EXPECT_NEAR(mean, q * pairs, 3.0 * stderr_mean);
}

TEST(RandomComplex, SeedDeterminesOutput) {
  const auto a = random_complex(15, 0.3, 0.5, 99);
  const auto b = random_complex(15, 0.3, 0.5, 99);
  EXPECT_EQ(a.complex, b.complex);
  EXPECT_EQ(a.filled, b.filled);
  EXPECT_THROW(random_complex(5, 1.5, 0.1, 1), Error);
}
