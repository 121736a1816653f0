#pragma once

#include <cstdint>
#include <vector>

#include "hopse/neighborhoods.hpp"

namespace hopse {

/// Ordered sequence of neighborhood functions used as one propagation plan.
struct Route {
    std::vector<NeighborhoodFunction> steps;
};

/// 2(R+1)R incidence+adjacency functions on a dim-R complex.
std::uint64_t count_neighborhoods(int max_rank);

/// (R+1)! rank-permutation cycles of incidences. Throws OverflowError when
/// the count exceeds 64 bits.
std::uint64_t count_minimal_routes(int max_rank);

/// (R+1)! * (R+1)^R routes once every rank may also take one adjacency.
std::uint64_t count_extended_routes(int max_rank);

/// One route per permutation (r_0..r_R): the incidences r_0->r_1, ...,
/// r_{R-1}->r_R closed by r_R->r_0. R = 0 degenerates to a single empty
/// route (no incidences exist on a 0-dim complex). Capped at R <= 6.
std::vector<Route> enumerate_minimal_routes(int max_rank);

} // namespace hopse
