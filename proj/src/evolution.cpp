#include "bdiff/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace bdiff {

namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Computes the descent direction into `out`, which must have state.size()
// elements. Rows are independent, so the loop parallelises without changing
// any result bit.
void descent_into(std::span<const double> v, const WeightProvider& w,
                  const Penaliser& p, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel
  {
    std::vector<WeightEntry> row;
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      w.terms(i, row);
      const double vi = v[i];
      double acc = 0.0;
      double tied = 0.0;  // weight of neighbours sitting exactly at vi
      for (const WeightEntry& e : row) {
        const double vj = v[e.index];
        if (vj == vi)
          tied += e.weight;
        else
          acc += e.weight * (p.flux(vj - vi) - p.flux(vj + vi));
      }
      out[i] = acc - tied * p.flux(vi + vi);
    }
  }
}

double sup_norm(std::span<const double> x) {
  double m = 0.0;
  for (double e : x) m = std::max(m, std::fabs(e));
  return m;
}

void check_tau(double tau, const WeightProvider& w, const Penaliser& p) {
  const double bound = max_step(w, p);
  if (!(tau > 0.0) || !(tau < bound)) throw StepSizeError(tau, bound);
}

}  // namespace

ParticleState::ParticleState(std::vector<double> values) : v_(std::move(values)) {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!(v_[i] > 0.0 && v_[i] < 1.0))
      throw std::invalid_argument("particle " + std::to_string(i) + " at " +
                                  format_double(v_[i]) + " is outside (0,1)");
}

StepSizeError::StepSizeError(double tau, double bound)
    : std::invalid_argument("time step " + format_double(tau) +
                            " must satisfy 0 < tau < max_step = " +
                            format_double(bound)),
      tau_(tau),
      bound_(bound) {}

void EnergyTrace::write_csv(std::ostream& os) const {
  os << "iteration,time,energy\n";
  const auto old = os.precision(17);
  for (const TraceRecord& r : records)
    os << r.iteration << ',' << r.time << ',' << r.energy << '\n';
  os.precision(old);
}

double energy(const ParticleState& state, const WeightProvider& w,
              const Penaliser& p) {
  if (state.size() != w.size())
    throw std::invalid_argument("state and weights differ in size");
  const auto v = state.values();
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  // Per-row partials summed in index order keep the result independent of the
  // thread count.
  std::vector<double> rows(v.size());
#pragma omp parallel
  {
    std::vector<WeightEntry> row;
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      w.terms(i, row);
      double acc = 0.0;
      for (const WeightEntry& e : row) {
        const double vj = v[e.index];
        acc += e.weight * (p.psi(vj - v[i]) + p.psi(vj + v[i]));
      }
      rows[i] = acc;
    }
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return 0.5 * total;
}

std::vector<double> descent_direction(const ParticleState& state,
                                      const WeightProvider& w,
                                      const Penaliser& p) {
  if (state.size() != w.size())
    throw std::invalid_argument("state and weights differ in size");
  std::vector<double> d(state.size());
  descent_into(state.values(), w, p, d);
  return d;
}

double max_step(const WeightProvider& w, const Penaliser& p) {
  return 1.0 / (2.0 * p.flux_lipschitz_tight() * w.max_row_sum());
}

double optimal_step(const WeightProvider& w, const Penaliser& p) {
  return 1.0 / (4.0 * p.flux_lipschitz_tight() * w.max_row_sum());
}

ParticleState step(const ParticleState& state, const WeightProvider& w,
                   const Penaliser& p, double tau) {
  check_tau(tau, w, p);
  std::vector<double> next = descent_direction(state, w, p);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = state[i] + tau * next[i];
  return ParticleState(std::move(next));
}

EvolutionResult evolve(const ParticleState& state, const WeightProvider& w,
                       const Penaliser& p, const EvolutionConfig& cfg) {
  if (state.size() != w.size())
    throw std::invalid_argument("state and weights differ in size");
  if (!(cfg.total_time >= 0.0) || !std::isfinite(cfg.total_time))
    throw std::invalid_argument("total time must be finite and nonnegative");
  if (cfg.trace_stride == 0) throw std::invalid_argument("trace stride must be >= 1");
  check_tau(cfg.tau, w, p);

  EvolutionResult result{state, {}, 0};
  if (cfg.total_time == 0.0) return result;

  const double full = std::floor(cfg.total_time / cfg.tau);
  auto full_steps = static_cast<std::size_t>(full);
  double remainder = cfg.total_time - full * cfg.tau;
  // Rounding in total_time / tau can leave a sliver of a step.
  if (remainder <= 1e-9 * cfg.tau) remainder = 0.0;
  const std::size_t total_steps = full_steps + (remainder > 0.0 ? 1 : 0);

  std::vector<double> v = state.vector();
  std::vector<double> d(v.size());
  double time = 0.0;
  for (std::size_t k = 1; k <= total_steps; ++k) {
    const double tau = k <= full_steps ? cfg.tau : remainder;
    descent_into(v, w, p, d);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += tau * d[i];
    time = k <= full_steps ? double(k) * cfg.tau : cfg.total_time;
    if (cfg.record_trace && (k % cfg.trace_stride == 0 || k == total_steps)) {
      ParticleState snapshot(v);
      result.trace.records.push_back({k, time, energy(snapshot, w, p)});
    }
  }
  result.state = ParticleState(std::move(v));
  result.iterations = total_steps;
  return result;
}

ConvergenceResult evolve_to_steady_state(const ParticleState& state,
                                         const WeightProvider& w,
                                         const Penaliser& p, double tau,
                                         const ConvergenceOptions& options) {
  if (state.size() != w.size())
    throw std::invalid_argument("state and weights differ in size");
  check_tau(tau, w, p);

  std::vector<double> v = state.vector();
  std::vector<double> d(v.size());
  ConvergenceResult result;
  for (;;) {
    descent_into(v, w, p, d);
    result.residual = sup_norm(d);
    if (result.residual < options.tolerance) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iterations) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += tau * d[i];
    ++result.iterations;
  }
  result.state = ParticleState(std::move(v));
  return result;
}

}  // namespace bdiff
