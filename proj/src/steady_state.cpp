#include "bdiff/steady_state.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bdiff {

std::vector<std::size_t> rank_permutation(std::span<const double> f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  std::vector<std::size_t> rank(f.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

std::vector<double> uniform_steady_state(std::span<const double> f) {
  const auto rank = rank_permutation(f);
  const double n = static_cast<double>(f.size());
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = (double(rank[i]) + 0.5) / n;
  return v;
}

std::vector<double> linear_flux_steady_state(const WeightProvider& w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("no particles");
  std::vector<double> v(n);
  std::vector<WeightEntry> row;
  for (std::size_t i = 0; i < n; ++i) {
    w.neighbours(i, row);
    double below = 0.0;
    double total = 0.0;
    double self = 0.0;
    for (const WeightEntry& e : row) {
      total += e.weight;
      if (e.index <= i) below += e.weight;
      if (e.index == i) self = e.weight;
    }
    if (!(total > 0.0))
      throw std::invalid_argument("row " + std::to_string(i) + " has zero weight");
    v[i] = (below - 0.5 * self) / total;
  }
  return v;
}

LevelMap equalisation_lut(const LevelHistogram& histogram) {
  std::vector<double> counts;
  std::vector<int> levels;
  for (int k = 0; k < 256; ++k) {
    if (histogram[static_cast<std::size_t>(k)] > 0) {
      counts.push_back(static_cast<double>(histogram[static_cast<std::size_t>(k)]));
      levels.push_back(k);
    }
  }
  if (counts.empty()) throw std::invalid_argument("histogram is empty");
  const auto v = linear_flux_steady_state(GlobalHistogramWeights(std::move(counts)));
  LevelMap lut{};
  for (std::size_t i = 0; i < levels.size(); ++i)
    lut[static_cast<std::size_t>(levels[i])] = v[i];
  return lut;
}

}  // namespace bdiff
