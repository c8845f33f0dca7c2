#include "sgm/random_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sgm/error.hpp"

namespace sgm {

RandomComplex random_complex(int n_vertices, double q, double p, std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0) || !(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "q and p must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(q);

  std::vector<Edge> edges;
  for (int i = 0; i < n_vertices; ++i) {
    for (int j = i + 1; j < n_vertices; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  auto skeleton = build_complex(n_vertices, std::move(edges));
  auto complex = clique_complex(skeleton);

  const int n_cliques = complex.n_triangles();
  // The epsilon absorbs representation error such as 0.3 * 10 = 2.9999...
  const int n_filled = std::min(n_cliques, static_cast<int>(std::floor(p * n_cliques + 1e-9)));
  std::vector<int> order(n_cliques);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<bool> filled(n_cliques, false);
  for (int i = 0; i < n_filled; ++i) filled[order[i]] = true;
  return {std::move(complex), std::move(filled)};
}

}  // namespace sgm
