#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bdiff {

struct WeightEntry {
  std::size_t index;
  double weight;
};

/// Nonnegative interaction weights w(i,j) between N particles.
///
/// Implementations are immutable after construction and safe to read from
/// several threads. Every diagonal weight is positive.
class WeightProvider {
 public:
  virtual ~WeightProvider() = default;

  virtual std::size_t size() const noexcept = 0;
  virtual double weight(std::size_t i, std::size_t j) const = 0;
  /// Sum of row i; cached by every implementation.
  virtual double row_sum(std::size_t i) const = 0;
  /// True when w(i,k) == w(j,k) for all i, j, k.
  virtual bool constant_columns() const noexcept = 0;

  /// Fills `out` with the entries of row i that have positive weight, one per
  /// column index, in ascending index order.
  virtual void neighbours(std::size_t i, std::vector<WeightEntry>& out) const = 0;

  /// Fills `out` with weighted terms of row i whose per-index sums equal the
  /// row. Indices may repeat; the evolution only needs the sums.
  virtual void terms(std::size_t i, std::vector<WeightEntry>& out) const {
    neighbours(i, out);
  }

  std::vector<WeightEntry> neighbours(std::size_t i) const;
  double max_row_sum() const;
};

/// Explicit N x N matrix, row-major.
class DenseWeights final : public WeightProvider {
 public:
  /// Throws std::invalid_argument on size mismatch, negative or non-finite
  /// entries, or a non-positive diagonal.
  DenseWeights(std::size_t n, std::vector<double> row_major);

  static DenseWeights ones(std::size_t n);

  std::size_t size() const noexcept override { return n_; }
  double weight(std::size_t i, std::size_t j) const override;
  double row_sum(std::size_t i) const override;
  bool constant_columns() const noexcept override { return constant_columns_; }
  using WeightProvider::neighbours;
  void neighbours(std::size_t i, std::vector<WeightEntry>& out) const override;

 private:
  std::size_t n_;
  std::vector<double> w_;
  std::vector<double> row_sums_;
  bool constant_columns_;
};

/// Weights of the global model: w(i,j) = count of the j-th distinct value.
class GlobalHistogramWeights final : public WeightProvider {
 public:
  /// Counts are indexed in increasing value order. Throws on an empty list or
  /// a non-positive count.
  explicit GlobalHistogramWeights(std::vector<double> counts);

  std::size_t size() const noexcept override { return counts_.size(); }
  double weight(std::size_t i, std::size_t j) const override;
  double row_sum(std::size_t i) const override;
  bool constant_columns() const noexcept override { return true; }
  using WeightProvider::neighbours;
  void neighbours(std::size_t i, std::vector<WeightEntry>& out) const override;

  std::span<const double> counts() const noexcept { return counts_; }
  double total() const noexcept { return total_; }

 private:
  std::vector<double> counts_;
  double total_;
};

/// Validates that `values` is strictly increasing and counts are positive,
/// then builds the frequency weights. Throws std::invalid_argument otherwise.
GlobalHistogramWeights build_global_histogram_weights(
    std::span<const double> values, std::span<const double> counts);

enum class Kernel { box, bspline };

/// Box kernel: 1 inside the open disk of radius rho, 0 outside.
double gamma1(double d, double rho) noexcept;
/// Cubic B-spline kernel evaluated at u = d / rho, support [0, rho).
double gamma2(double d, double rho) noexcept;
double kernel_value(Kernel k, double d, double rho) noexcept;

/// Reflects an integer coordinate into [0, n) about the pixel edges
/// (-1 -> 0, -2 -> 1, n -> n-1), applied periodically with period 2n.
std::int64_t mirror_index(std::int64_t x, std::int64_t n) noexcept;

/// Local model over the pixels of an n_x x n_y image (row-major index
/// y * n_x + x): w(i,j) = sum of kernel(|offset|) over all disk offsets whose
/// mirrored target is pixel j.
///
/// Kernel values are rounded to multiples of 2^-24 so that every sum of
/// weights is exact. Weights are served from a stencil of integer offsets.
/// Small images whose rows fit a few million entries get their accumulated
/// rows precomputed.
class LocalDiskWeights final : public WeightProvider {
 public:
  struct Offset {
    int dx;
    int dy;
    double weight;
  };

  /// Throws std::invalid_argument on zero dimensions or rho <= 0.
  LocalDiskWeights(std::size_t width, std::size_t height, double rho,
                   Kernel kernel);

  std::size_t size() const noexcept override { return width_ * height_; }
  double weight(std::size_t i, std::size_t j) const override;
  double row_sum(std::size_t) const override { return stencil_sum_; }
  bool constant_columns() const noexcept override { return size() == 1; }
  using WeightProvider::neighbours;
  void neighbours(std::size_t i, std::vector<WeightEntry>& out) const override;
  void terms(std::size_t i, std::vector<WeightEntry>& out) const override;

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  double radius() const noexcept { return rho_; }
  Kernel kernel() const noexcept { return kernel_; }
  std::span<const Offset> stencil() const noexcept { return stencil_; }

 private:
  bool disk_inside(std::size_t x, std::size_t y) const noexcept;
  void raw_terms(std::size_t i, std::vector<WeightEntry>& out) const;
  void accumulated_row(std::size_t i, std::vector<WeightEntry>& out) const;

  std::size_t width_;
  std::size_t height_;
  double rho_;
  Kernel kernel_;
  int reach_;  // largest |dx| or |dy| in the stencil
  std::vector<Offset> stencil_;
  double stencil_sum_;
  std::vector<std::ptrdiff_t> delta_;  // flat index offset per stencil entry
  std::vector<std::size_t> mirror_x_;  // mirror_index(x - reach_, width_)
  std::vector<std::size_t> mirror_y_;
  // Compressed accumulated rows (CSR) when the image is small.
  std::vector<std::size_t> row_start_;
  std::vector<WeightEntry> rows_;
};

}  // namespace bdiff
