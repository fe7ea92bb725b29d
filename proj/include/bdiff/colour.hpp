#pragma once

#include <optional>

namespace bdiff {

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr double kLumaRed = 0.299;
inline constexpr double kLumaGreen = 0.587;
inline constexpr double kLumaBlue = 0.114;

/// Y channel of YCbCr: 0.299 r + 0.587 g + 0.114 b.
constexpr double luminance(double r, double g, double b) noexcept {
  return kLumaRed * r + kLumaGreen * g + kLumaBlue * b;
}
constexpr double luminance(const Rgb& c) noexcept { return luminance(c.r, c.g, c.b); }

/// Scales towards black when darkening (g/f * rgb) and scales the complement
/// towards white when brightening (1 - (1-g)/(1-f) (1 - rgb)). Always in
/// gamut; carries luminance f to g exactly.
Rgb multiplicative_remap(const Rgb& rgb, double f, double g) noexcept;

/// rgb + (g - f)(1,1,1), or nullopt when that leaves the unit cube.
std::optional<Rgb> additive_remap(const Rgb& rgb, double f, double g) noexcept;

/// lambda * multiplicative + (1 - lambda) * additive, where the additive
/// result falls back to the multiplicative one for out-of-gamut pixels.
/// `f` is the pixel's luminance, `g` the enhanced luminance; both in [0,1].
Rgb hue_preserving_remap(const Rgb& rgb, double f, double g, double lambda) noexcept;

}  // namespace bdiff
