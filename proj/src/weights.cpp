#include "bdiff/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bdiff {

std::vector<WeightEntry> WeightProvider::neighbours(std::size_t i) const {
  std::vector<WeightEntry> out;
  neighbours(i, out);
  return out;
}

double WeightProvider::max_row_sum() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, row_sum(i));
  return m;
}

// ---------------------------------------------------------------------------
// DenseWeights

DenseWeights::DenseWeights(std::size_t n, std::vector<double> row_major)
    : n_(n), w_(std::move(row_major)), row_sums_(n, 0.0), constant_columns_(true) {
  if (n == 0) throw std::invalid_argument("weight matrix must be non-empty");
  if (w_.size() != n * n)
    throw std::invalid_argument("weight matrix needs " + std::to_string(n * n) +
                                " entries, got " + std::to_string(w_.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = w_[i * n + j];
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("weights must be finite and nonnegative");
      row_sums_[i] += v;
      if (v != w_[j]) constant_columns_ = false;
    }
    if (!(w_[i * n + i] > 0.0))
      throw std::invalid_argument("diagonal weight " + std::to_string(i) +
                                  " must be positive");
  }
}

DenseWeights DenseWeights::ones(std::size_t n) {
  return DenseWeights(n, std::vector<double>(n * n, 1.0));
}

double DenseWeights::weight(std::size_t i, std::size_t j) const {
  return w_.at(i * n_ + j);
}

double DenseWeights::row_sum(std::size_t i) const { return row_sums_.at(i); }

void DenseWeights::neighbours(std::size_t i, std::vector<WeightEntry>& out) const {
  out.clear();
  const double* row = w_.data() + i * n_;
  for (std::size_t j = 0; j < n_; ++j)
    if (row[j] > 0.0) out.push_back({j, row[j]});
}

// ---------------------------------------------------------------------------
// GlobalHistogramWeights

GlobalHistogramWeights::GlobalHistogramWeights(std::vector<double> counts)
    : counts_(std::move(counts)), total_(0.0) {
  if (counts_.empty()) throw std::invalid_argument("histogram is empty");
  for (double c : counts_) {
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument("histogram counts must be positive");
    total_ += c;
  }
}

double GlobalHistogramWeights::weight(std::size_t i, std::size_t j) const {
  if (i >= counts_.size()) throw std::out_of_range("row index out of range");
  return counts_.at(j);
}

double GlobalHistogramWeights::row_sum(std::size_t i) const {
  if (i >= counts_.size()) throw std::out_of_range("row index out of range");
  return total_;
}

void GlobalHistogramWeights::neighbours(std::size_t,
                                       std::vector<WeightEntry>& out) const {
  out.resize(counts_.size());
  for (std::size_t j = 0; j < counts_.size(); ++j) out[j] = {j, counts_[j]};
}

GlobalHistogramWeights build_global_histogram_weights(
    std::span<const double> values, std::span<const double> counts) {
  if (values.empty()) throw std::invalid_argument("no values given");
  if (values.size() != counts.size())
    throw std::invalid_argument("values and counts differ in length");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i - 1] < values[i]))
      throw std::invalid_argument("values must be strictly increasing");
  return GlobalHistogramWeights(std::vector<double>(counts.begin(), counts.end()));
}

// ---------------------------------------------------------------------------
// Kernels

double gamma1(double d, double rho) noexcept { return d < rho ? 1.0 : 0.0; }

double gamma2(double d, double rho) noexcept {
  const double u = d / rho;
  if (u < 0.5) return 1.0 - 6.0 * u * u + 6.0 * u * u * u;
  if (u < 1.0) {
    const double c = 1.0 - u;
    return 2.0 * c * c * c;
  }
  return 0.0;
}

double kernel_value(Kernel k, double d, double rho) noexcept {
  return k == Kernel::box ? gamma1(d, rho) : gamma2(d, rho);
}

std::int64_t mirror_index(std::int64_t x, std::int64_t n) noexcept {
  const std::int64_t period = 2 * n;
  std::int64_t m = x % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

// ---------------------------------------------------------------------------
// LocalDiskWeights

namespace {

constexpr std::size_t kMaxPrecomputedEntries = std::size_t{1} << 22;

bool in_disk(int dx, int dy, double rho) {
  const double q = double(dx) * dx + double(dy) * dy;
  return q < rho * rho;
}

// Stencil weights are snapped to multiples of 2^-24. Sums of up to 2^29 of
// them are then exact, so rows that hold the same multiset of weights add up
// to the same double whatever their order. Ties in the image stay ties.
double offset_weight(int dx, int dy, double rho, Kernel k) {
  if (!in_disk(dx, dy, rho)) return 0.0;
  const double g = kernel_value(k, std::sqrt(double(dx) * dx + double(dy) * dy), rho);
  return std::ldexp(std::nearbyint(std::ldexp(g, 24)), -24);
}

void merge_sorted_duplicates(std::vector<WeightEntry>& v) {
  std::sort(v.begin(), v.end(),
            [](const WeightEntry& a, const WeightEntry& b) { return a.index < b.index; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && v[w - 1].index == v[r].index)
      v[w - 1].weight += v[r].weight;
    else
      v[w++] = v[r];
  }
  v.resize(w);
}

}  // namespace

LocalDiskWeights::LocalDiskWeights(std::size_t width, std::size_t height,
                                   double rho, Kernel kernel)
    : width_(width), height_(height), rho_(rho), kernel_(kernel), reach_(0),
      stencil_sum_(0.0) {
  if (width == 0 || height == 0)
    throw std::invalid_argument("image dimensions must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("disk radius must be positive, got " +
                                std::to_string(rho));

  while (in_disk(reach_ + 1, 0, rho)) ++reach_;
  for (int dy = -reach_; dy <= reach_; ++dy) {
    for (int dx = -reach_; dx <= reach_; ++dx) {
      const double w = offset_weight(dx, dy, rho, kernel);
      if (w > 0.0) {
        stencil_.push_back({dx, dy, w});
        stencil_sum_ += w;
      }
    }
  }

  const auto nx = static_cast<std::int64_t>(width_);
  const auto ny = static_cast<std::int64_t>(height_);
  for (const Offset& o : stencil_) delta_.push_back(std::ptrdiff_t(o.dy) * nx + o.dx);
  for (std::int64_t x = -reach_; x < nx + reach_; ++x)
    mirror_x_.push_back(static_cast<std::size_t>(mirror_index(x, nx)));
  for (std::int64_t y = -reach_; y < ny + reach_; ++y)
    mirror_y_.push_back(static_cast<std::size_t>(mirror_index(y, ny)) * width_);

  const std::size_t n = size();
  if (n * std::min(n, stencil_.size()) <= kMaxPrecomputedEntries) {
    row_start_.reserve(n + 1);
    row_start_.push_back(0);
    std::vector<WeightEntry> row;
    for (std::size_t i = 0; i < n; ++i) {
      accumulated_row(i, row);
      rows_.insert(rows_.end(), row.begin(), row.end());
      row_start_.push_back(rows_.size());
    }
  }
}

bool LocalDiskWeights::disk_inside(std::size_t x, std::size_t y) const noexcept {
  const auto r = static_cast<std::size_t>(reach_);
  return x >= r && y >= r && x + r < width_ && y + r < height_;
}

void LocalDiskWeights::raw_terms(std::size_t i, std::vector<WeightEntry>& out) const {
  out.resize(stencil_.size());
  const std::size_t x = i % width_;
  const std::size_t y = i / width_;
  if (disk_inside(x, y)) {
    const auto base = static_cast<std::ptrdiff_t>(i);
    for (std::size_t k = 0; k < stencil_.size(); ++k)
      out[k] = {static_cast<std::size_t>(base + delta_[k]), stencil_[k].weight};
    return;
  }
  // Tables are indexed by coordinate + reach_.
  const std::size_t* mx = mirror_x_.data() + x + static_cast<std::size_t>(reach_);
  const std::size_t* my = mirror_y_.data() + y + static_cast<std::size_t>(reach_);
  for (std::size_t k = 0; k < stencil_.size(); ++k) {
    const Offset& o = stencil_[k];
    out[k] = {my[o.dy] + mx[o.dx], o.weight};
  }
}

void LocalDiskWeights::accumulated_row(std::size_t i,
                                       std::vector<WeightEntry>& out) const {
  raw_terms(i, out);
  if (!disk_inside(i % width_, i / width_)) merge_sorted_duplicates(out);
}

void LocalDiskWeights::neighbours(std::size_t i, std::vector<WeightEntry>& out) const {
  if (i >= size()) throw std::out_of_range("pixel index out of range");
  if (!row_start_.empty()) {
    out.assign(rows_.begin() + static_cast<std::ptrdiff_t>(row_start_[i]),
               rows_.begin() + static_cast<std::ptrdiff_t>(row_start_[i + 1]));
    return;
  }
  accumulated_row(i, out);
}

void LocalDiskWeights::terms(std::size_t i, std::vector<WeightEntry>& out) const {
  if (!row_start_.empty()) {
    neighbours(i, out);
    return;
  }
  raw_terms(i, out);
}

double LocalDiskWeights::weight(std::size_t i, std::size_t j) const {
  const std::size_t n = size();
  if (i >= n || j >= n) throw std::out_of_range("pixel index out of range");
  const auto nx = static_cast<std::int64_t>(width_);
  const auto ny = static_cast<std::int64_t>(height_);
  const std::int64_t xi = static_cast<std::int64_t>(i % width_);
  const std::int64_t yi = static_cast<std::int64_t>(i / width_);
  const std::int64_t xj = static_cast<std::int64_t>(j % width_);
  const std::int64_t yj = static_cast<std::int64_t>(j / width_);

  std::vector<int> dxs;
  std::vector<int> dys;
  for (int d = -reach_; d <= reach_; ++d) {
    if (mirror_index(xi + d, nx) == xj) dxs.push_back(d);
    if (mirror_index(yi + d, ny) == yj) dys.push_back(d);
  }
  double w = 0.0;
  for (int dy : dys)
    for (int dx : dxs) w += offset_weight(dx, dy, rho_, kernel_);
  return w;
}

}  // namespace bdiff
