#include "bdiff/colour.hpp"

#include <algorithm>

namespace bdiff {

namespace {

bool in_unit(double x) noexcept { return x >= 0.0 && x <= 1.0; }

}  // namespace

Rgb multiplicative_remap(const Rgb& rgb, double f, double g) noexcept {
  if (g <= f) {
    if (f <= 0.0) return {g, g, g};
    const double s = g / f;
    return {s * rgb.r, s * rgb.g, s * rgb.b};
  }
  if (f >= 1.0) return {g, g, g};
  const double s = (1.0 - g) / (1.0 - f);
  return {1.0 - s * (1.0 - rgb.r), 1.0 - s * (1.0 - rgb.g), 1.0 - s * (1.0 - rgb.b)};
}

std::optional<Rgb> additive_remap(const Rgb& rgb, double f, double g) noexcept {
  const double shift = g - f;
  const Rgb out{rgb.r + shift, rgb.g + shift, rgb.b + shift};
  if (!in_unit(out.r) || !in_unit(out.g) || !in_unit(out.b)) return std::nullopt;
  return out;
}

Rgb hue_preserving_remap(const Rgb& rgb, double f, double g, double lambda) noexcept {
  if (g == f) return rgb;
  const Rgb m = multiplicative_remap(rgb, f, g);
  const Rgb a = additive_remap(rgb, f, g).value_or(m);
  const double mu = 1.0 - lambda;
  auto mix = [&](double x, double y) {
    return std::clamp(lambda * x + mu * y, 0.0, 1.0);
  };
  return {mix(m.r, a.r), mix(m.g, a.g), mix(m.b, a.b)};
}

}  // namespace bdiff
