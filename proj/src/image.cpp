#include "bdiff/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bdiff {

namespace {

void check_dims(std::size_t w, std::size_t h, std::size_t channels, std::size_t n) {
  if (w == 0 || h == 0) throw std::invalid_argument("image dimensions must be positive");
  if (n != w * h * channels)
    throw std::invalid_argument("expected " + std::to_string(w * h * channels) +
                                " samples, got " + std::to_string(n));
}

}  // namespace

GreyImage::GreyImage(std::size_t width, std::size_t height,
                     std::vector<std::uint8_t> samples)
    : width_(width), height_(height), data_(std::move(samples)) {
  check_dims(width, height, 1, data_.size());
}

GreyImage::GreyImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : GreyImage(width, height, std::vector<std::uint8_t>(width * height, fill)) {}

ColourImage::ColourImage(std::size_t width, std::size_t height,
                         std::vector<std::uint8_t> samples)
    : width_(width), height_(height), data_(std::move(samples)) {
  check_dims(width, height, 3, data_.size());
}

ColourImage::ColourImage(std::size_t width, std::size_t height)
    : ColourImage(width, height, std::vector<std::uint8_t>(3 * width * height, 0)) {}

int from_unit(double v) noexcept {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  const double k = std::floor(v * 256.0);
  return static_cast<int>(std::min(k, 255.0));
}

LevelHistogram histogram(const GreyImage& img) {
  LevelHistogram h{};
  for (std::uint8_t s : img.samples()) ++h[s];
  return h;
}

}  // namespace bdiff
