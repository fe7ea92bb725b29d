#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "bdiff/penaliser.hpp"
#include "bdiff/weights.hpp"

namespace bdiff {

/// Particle positions, each strictly inside (0,1).
class ParticleState {
 public:
  ParticleState() = default;
  /// Throws std::invalid_argument if any value lies outside (0,1).
  explicit ParticleState(std::vector<double> values);

  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> values() const noexcept { return v_; }
  const std::vector<double>& vector() const noexcept { return v_; }

  friend bool operator==(const ParticleState&, const ParticleState&) = default;

 private:
  std::vector<double> v_;
};

/// Thrown when a step size is not strictly below the stability bound.
class StepSizeError : public std::invalid_argument {
 public:
  StepSizeError(double tau, double bound);
  double tau() const noexcept { return tau_; }
  double bound() const noexcept { return bound_; }

 private:
  double tau_;
  double bound_;
};

struct EvolutionConfig {
  double tau = 0.0;
  double total_time = 0.0;
  bool record_trace = true;
  std::size_t trace_stride = 1;  // record every k-th iteration (and the last)
};

struct TraceRecord {
  std::size_t iteration;
  double time;
  double energy;
};

struct EnergyTrace {
  std::vector<TraceRecord> records;

  bool empty() const noexcept { return records.empty(); }
  /// CSV with header `iteration,time,energy`, '\n' line ends.
  void write_csv(std::ostream& os) const;
};

/// 1/2 sum_i sum_j w(i,j) (Psi((v_j - v_i)^2) + Psi((v_j + v_i)^2)).
double energy(const ParticleState& state, const WeightProvider& w,
              const Penaliser& p);

/// Right-hand side of the reduced gradient flow:
///   sum_{j : v_j != v_i} w(i,j) Phi(v_j - v_i) - sum_j w(i,j) Phi(v_j + v_i).
/// Equality is exact floating-point equality.
std::vector<double> descent_direction(const ParticleState& state,
                                      const WeightProvider& w,
                                      const Penaliser& p);

/// 1 / (2 L_Phi max_i row_sum(i)); step sizes must stay strictly below.
double max_step(const WeightProvider& w, const Penaliser& p);

/// 1 / (4 L_Phi max_i row_sum(i)), half of max_step.
double optimal_step(const WeightProvider& w, const Penaliser& p);

/// One explicit step v + tau * descent_direction(v). Throws StepSizeError
/// unless 0 < tau < max_step(w, p).
ParticleState step(const ParticleState& state, const WeightProvider& w,
                   const Penaliser& p, double tau);

struct EvolutionResult {
  ParticleState state;
  EnergyTrace trace;
  std::size_t iterations = 0;
};

/// floor(total_time / tau) full steps, then one shortened step for the
/// remainder. Throws StepSizeError or std::invalid_argument on a bad config.
EvolutionResult evolve(const ParticleState& state, const WeightProvider& w,
                       const Penaliser& p, const EvolutionConfig& cfg);

struct ConvergenceOptions {
  double tolerance = 1e-10;               // on max |descent_direction|
  std::size_t max_iterations = 10'000'000;
};

struct ConvergenceResult {
  ParticleState state;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Steps with a fixed tau until the sup norm of the descent direction drops
/// below the tolerance or the iteration cap is hit.
ConvergenceResult evolve_to_steady_state(const ParticleState& state,
                                         const WeightProvider& w,
                                         const Penaliser& p, double tau,
                                         const ConvergenceOptions& options = {});

}  // namespace bdiff
