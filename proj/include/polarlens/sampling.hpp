#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polarlens/joint_distribution.hpp"

namespace polarlens {

/// Seeded generator used by every randomized suite.
using Rng = std::mt19937_64;

struct RandomDistributionOptions {
    std::size_t min_symbols = 2;
    std::size_t max_symbols = 8;
};

/// Dirichlet(1,…,1) draw over the 2k joint entries of k output symbols,
/// k uniform in [min_symbols, max_symbols]; weights 1.
JointDistribution random_distribution(Rng& rng, const RandomDistributionOptions& opts = {});

/// Vector of `size` values drawn uniformly from [0, scale).
std::vector<double> random_nonnegative_vector(Rng& rng, std::size_t size, double scale = 1.0);

} // namespace polarlens
