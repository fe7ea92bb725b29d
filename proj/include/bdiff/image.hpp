#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bdiff/steady_state.hpp"

namespace bdiff {

/// 8-bit single-channel raster, row-major.
class GreyImage {
 public:
  GreyImage() = default;
  /// Throws std::invalid_argument on zero dimensions or a size mismatch.
  GreyImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> samples);
  GreyImage(std::size_t width, std::size_t height, std::uint8_t fill = 0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }

  std::uint8_t& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
  std::span<std::uint8_t> samples() noexcept { return data_; }
  std::span<const std::uint8_t> samples() const noexcept { return data_; }

  friend bool operator==(const GreyImage&, const GreyImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// 8-bit interleaved RGB raster, row-major.
class ColourImage {
 public:
  ColourImage() = default;
  ColourImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> samples);
  ColourImage(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }

  std::span<std::uint8_t, 3> pixel(std::size_t x, std::size_t y) {
    return std::span<std::uint8_t, 3>(data_.data() + 3 * (y * width_ + x), 3);
  }
  std::span<const std::uint8_t, 3> pixel(std::size_t x, std::size_t y) const {
    return std::span<const std::uint8_t, 3>(data_.data() + 3 * (y * width_ + x), 3);
  }
  std::span<std::uint8_t> samples() noexcept { return data_; }
  std::span<const std::uint8_t> samples() const noexcept { return data_; }

  friend bool operator==(const ColourImage&, const ColourImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// (level + 1/2) / 256, strictly inside (0,1).
constexpr double to_unit(int level) noexcept { return (level + 0.5) / 256.0; }

/// clamp(floor(v * 256), 0, 255); inverts to_unit exactly.
int from_unit(double v) noexcept;

LevelHistogram histogram(const GreyImage& img);

}  // namespace bdiff
