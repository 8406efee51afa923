#pragma once

// Serial reference versions of the OpenMP kernels. They follow the
// definitions as literally as possible and exist for tests and benchmarks.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "amalgam/kms.hpp"
#include "amalgam/product.hpp"

namespace amalgam::reference {

/// Twice the Gromov products of all pairs in ball(radius), from the group law.
std::vector<int> gromov_matrix_twice(const AmalgamSpec& spec, const std::vector<Word>& words);

mpq_class hyperbolicity_delta(const AmalgamSpec& spec, int radius);

StationarityReport verify_stationarity(const AmalgamSpec& spec, const KmsSolution& sol, int max_depth,
                                       double tolerance = 1e-10);

/// Recomputes the normal form of the whole path after every step.
WalkReport random_walk(const AmalgamSpec& spec, const std::vector<double>& mu, long trials, int horizon,
                       std::uint64_t seed);

}  // namespace amalgam::reference
