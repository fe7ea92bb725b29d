#include "bdiff/penaliser.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bdiff {

namespace {

double ipow(double x, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

}  // namespace

Penaliser::Penaliser(double amplitude, int exponent)
    : amplitude_(amplitude),
      exponent_(exponent),
      odd_power_(2 * exponent - 1),
      scale_(amplitude * exponent) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("penaliser amplitude must be positive, got " +
                                std::to_string(amplitude));
  if (exponent < 1)
    throw std::invalid_argument("penaliser exponent must be >= 1, got " +
                                std::to_string(exponent));
}

double Penaliser::psi(double s) const noexcept {
  double r = std::fabs(s);
  if (!(r < 2.0)) r = std::fmod(r, 2.0);
  r = std::min(r, 2.0 - r);
  return amplitude_ * (ipow(r - 1.0, 2 * exponent_) - 1.0);
}

double Penaliser::folded_flux(double s) const noexcept {
  // Phi is odd, so fold |s| and restore the sign; fmod is exact, which keeps
  // flux(-s) == -flux(s) bit for bit.
  const double r = std::fmod(std::fabs(s), 2.0);
  if (r == 0.0 || !std::isfinite(r)) return 0.0;
  const double v = base_flux(r);
  return s < 0.0 ? -v : v;
}

double Penaliser::dflux(double s) const {
  const double r = std::fmod(std::fabs(s), 2.0);
  if (r == 0.0)
    throw std::domain_error("flux derivative undefined at even integer " +
                            std::to_string(s));
  return scale_ * odd_power_ * ipow(r - 1.0, odd_power_ - 1);
}

double Penaliser::flux_lipschitz_tight() const noexcept {
  return scale_ * odd_power_;
}

double Penaliser::flux_lipschitz_coarse() const noexcept {
  return scale_ * odd_power_ * ipow(4.0, exponent_ - 1);
}

}  // namespace bdiff
