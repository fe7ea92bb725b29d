#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bdiff/weights.hpp"

namespace bdiff {

/// rank[i] = zero-based position of f[i] in ascending order; ties keep their
/// original index order.
std::vector<std::size_t> rank_permutation(std::span<const double> f);

/// Minimiser for all-ones weights (any penaliser): v_i = (rank_i + 1/2) / N.
std::vector<double> uniform_steady_state(std::span<const double> f);

/// Minimiser for the linear flux (n = 1) with weights indexed by increasing
/// position:
///   v_i = (sum_{j <= i} w(i,j) - w(i,i)/2) / sum_j w(i,j).
/// Throws std::invalid_argument on an empty provider or a zero row sum.
std::vector<double> linear_flux_steady_state(const WeightProvider& w);

using LevelHistogram = std::array<std::uint64_t, 256>;
using LevelMap = std::array<std::optional<double>, 256>;

/// Midpoint-cumulative histogram equalisation: for every occurring level k,
/// (CDF(k) - h_k / 2) / P. Levels that do not occur map to nullopt.
/// Throws std::invalid_argument when the histogram is empty.
LevelMap equalisation_lut(const LevelHistogram& histogram);

}  // namespace bdiff
