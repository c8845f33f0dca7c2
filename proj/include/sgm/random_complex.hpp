#pragma once

#include <cstdint>
#include <vector>

#include "sgm/complex.hpp"

namespace sgm {

struct RandomComplex {
  SimplicialComplex complex;  // 1-skeleton plus every 3-clique as a candidate triangle
  std::vector<bool> filled;   // one flag per candidate triangle
};

/**
 * Erdos-Renyi 1-skeleton with edge probability q; a uniformly random subset
 * of floor(p * K) of the K 3-cliques is flagged as filled. The graph is not
 * repaired when disconnected. Throws kInvalidArgument for q or p outside [0, 1].
 */
RandomComplex random_complex(int n_vertices, double q, double p, std::uint64_t seed);

}  // namespace sgm
