#pragma once

#include <cmath>

namespace bdiff {

/// The convex penaliser family Psi_{a,n}(s^2) = a((s-1)^{2n} - 1) on [0,1],
/// extended to the real line by evenness and period 2.
///
/// All members are pure. `flux` is the hot path of the evolution and is kept
/// inline; arguments inside (-2, 2) skip the modular fold.
class Penaliser {
 public:
  /// Throws std::invalid_argument unless amplitude > 0 and exponent >= 1.
  explicit Penaliser(double amplitude = 1.0, int exponent = 1);

  double amplitude() const noexcept { return amplitude_; }
  int exponent() const noexcept { return exponent_; }

  /// Psi(s^2) for any real s.
  double psi(double s) const noexcept;

  /// Phi(s) = Psi'(s^2) s, odd and 2-periodic. Returns 0 at even integers,
  /// the midpoint of the jump.
  double flux(double s) const noexcept {
    if (s > 0.0 && s < 2.0) return base_flux(s);
    if (s < 0.0 && s > -2.0) return -base_flux(-s);
    return folded_flux(s);
  }

  /// Phi'(s). Throws std::domain_error at even integers.
  double dflux(double s) const;

  /// sup |Phi'| over (0,2): a n (2n-1).
  double flux_lipschitz_tight() const noexcept;

  /// The coarser constant a n (2n-1) 4^{n-1}; equals the tight value for n = 1.
  double flux_lipschitz_coarse() const noexcept;

 private:
  // a n (r-1)^{2n-1} for r in (0,2)
  double base_flux(double r) const noexcept {
    const double x = r - 1.0;
    double p = x;
    for (int k = 1; k < odd_power_; ++k) p *= x;
    return scale_ * p;
  }
  double folded_flux(double s) const noexcept;

  double amplitude_;
  int exponent_;
  int odd_power_;  // 2n - 1
  double scale_;   // a n
};

}  // namespace bdiff
