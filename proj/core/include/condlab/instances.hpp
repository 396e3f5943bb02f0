#pragma once

#include <cstdint>
#include <vector>

#include "condlab/distribution.hpp"

namespace condlab {
namespace instances {

/// D_i on [n]: mass 1/2^j at j in [2^i - 1], mass 1/2^(2^i - 1) at j = 2^i.
/// Support size is exactly 2^i and consecutive support masses halve.
DiscreteDistribution geometric_hard(uint32_t n, uint32_t i);

/// Generalized Polya urn over K = 2^x colors with initial weights
/// alpha_j = 1/2^j, run m steps (each step adds one ball of the drawn color).
/// Returns the normalized added-ball frequencies, a rational distribution
/// supported on the colors that were drawn at least once.
DiscreteDistribution polya_dirichlet(uint32_t n, uint32_t x, uint32_t m, Rng& rng);

/// Two-party hard instance: mass 2/(|I_x|+|I_y|) on I_x & I_y and
/// 1/(|I_x|+|I_y|) on the symmetric difference, where I_x = set bits of x.
DiscreteDistribution gap_hamming_instance(const std::vector<uint8_t>& x_bits,
                                          const std::vector<uint8_t>& y_bits);

/// Spiked companion of the uniform distribution: mass 1/sqrt(n) at k and
/// 1/n on G, |G| = n - sqrt(n); n must be a perfect square.
DiscreteDistribution l2_lower_instance(uint32_t n, uint32_t k, const IndexSet& g);

enum class BoundedVariant { TwoPoint, ThreePoint };

/// D_i (support 2) and D_{i,i'} (support 3): mass 1 - 2/n at 1, remainder
/// split over the given indices.
DiscreteDistribution bounded_cond_instance(uint32_t n, BoundedVariant variant,
                                           const std::vector<uint32_t>& indices);

/// U' companion of uniform: U'(i) = 2/n, U'(j) = 0; TV(U, U') = 2/n.
DiscreteDistribution intro_perturbed_uniform(uint32_t n, uint32_t i, uint32_t j);

/// Uniform over a random support of the given size (experiment plumbing).
DiscreteDistribution uniform_random_support(uint32_t n, uint32_t support_size, Rng& rng);

}  // namespace instances
}  // namespace condlab
