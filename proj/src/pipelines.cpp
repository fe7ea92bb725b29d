#include "bdiff/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bdiff/colour.hpp"
#include "bdiff/steady_state.hpp"

namespace bdiff {

namespace {

void check_time(double time) {
  if (!(time >= 0.0))
    throw std::invalid_argument("diffusion time must be nonnegative");
}

EvolutionResult run(const ParticleState& state, const WeightProvider& w,
                    const EnhanceParams& params, double tau) {
  EvolutionConfig cfg;
  cfg.tau = tau;
  cfg.total_time = params.time;
  cfg.record_trace = params.record_trace;
  cfg.trace_stride = params.trace_stride;
  return evolve(state, w, params.penaliser, cfg);
}

std::uint8_t quantise(double v) { return static_cast<std::uint8_t>(from_unit(v)); }

std::vector<double> luminance_plane(const ColourImage& img) {
  const auto s = img.samples();
  std::vector<double> y(img.pixel_count());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = luminance(to_unit(s[3 * i]), to_unit(s[3 * i + 1]), to_unit(s[3 * i + 2]));
  return y;
}

ColourImage remap_image(const ColourImage& img, const std::vector<double>& original,
                        const std::vector<double>& enhanced, double lambda) {
  ColourImage out(img.width(), img.height());
  const auto src = img.samples();
  auto dst = out.samples();
  const auto n = static_cast<std::ptrdiff_t>(original.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const Rgb rgb{to_unit(src[3 * i]), to_unit(src[3 * i + 1]), to_unit(src[3 * i + 2])};
    const Rgb o = hue_preserving_remap(rgb, original[i], enhanced[i], lambda);
    dst[3 * i] = quantise(o.r);
    dst[3 * i + 1] = quantise(o.g);
    dst[3 * i + 2] = quantise(o.b);
  }
  return out;
}

}  // namespace

double resolve_step(const WeightProvider& w, const Penaliser& p, double time,
                    std::optional<double> tau) {
  const double bound = max_step(w, p);
  if (tau) {
    if (!(*tau > 0.0) || !(*tau < bound)) throw StepSizeError(*tau, bound);
    return *tau;
  }
  if (time > 0.0 && time < bound) return time;
  return optimal_step(w, p);
}

LevelEvolution evolve_levels(const LevelHistogram& hist, const EnhanceParams& params) {
  check_time(params.time);
  std::vector<int> levels;
  std::vector<double> values;
  std::vector<double> counts;
  for (int k = 0; k < 256; ++k) {
    const auto c = hist[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    levels.push_back(k);
    values.push_back(to_unit(k));
    counts.push_back(static_cast<double>(c));
  }
  const GlobalHistogramWeights w = build_global_histogram_weights(values, counts);

  LevelEvolution out;
  std::vector<double> final_values;
  if (std::isinf(params.time)) {
    const bool equal_counts =
        std::all_of(counts.begin(), counts.end(), [&](double c) { return c == counts[0]; });
    if (params.penaliser.exponent() == 1) {
      final_values = linear_flux_steady_state(w);
    } else if (equal_counts) {
      final_values = uniform_steady_state(values);
    } else {
      throw NoClosedFormError(
          "t = inf needs the linear flux (n = 1) or equal level frequencies; got n = " +
          std::to_string(params.penaliser.exponent()));
    }
    out.closed_form = true;
  } else {
    out.tau = resolve_step(w, params.penaliser, params.time, params.tau);
    auto r = run(ParticleState(values), w, params, out.tau);
    final_values = r.state.vector();
    out.trace = std::move(r.trace);
    out.iterations = r.iterations;
  }
  for (std::size_t i = 0; i < levels.size(); ++i)
    out.positions[static_cast<std::size_t>(levels[i])] = final_values[i];
  return out;
}

Enhanced<GreyImage> enhance_grey_global(const GreyImage& img, const EnhanceParams& params) {
  LevelEvolution lv = evolve_levels(histogram(img), params);
  std::array<std::uint8_t, 256> lut{};
  for (std::size_t k = 0; k < 256; ++k)
    if (lv.positions[k]) lut[k] = quantise(*lv.positions[k]);

  GreyImage out(img.width(), img.height());
  std::transform(img.samples().begin(), img.samples().end(), out.samples().begin(),
                 [&](std::uint8_t s) { return lut[s]; });
  return {std::move(out), std::move(lv.trace), lv.iterations, lv.tau, lv.closed_form};
}

Enhanced<GreyImage> enhance_grey_local(const GreyImage& img, const EnhanceParams& params,
                                       const LocalParams& local) {
  check_time(params.time);
  if (std::isinf(params.time))
    throw NoClosedFormError("t = inf has no closed form for the local model");
  const LocalDiskWeights w(img.width(), img.height(), local.radius, local.kernel);
  std::vector<double> v(img.pixel_count());
  std::transform(img.samples().begin(), img.samples().end(), v.begin(),
                 [](std::uint8_t s) { return to_unit(s); });

  Enhanced<GreyImage> out{GreyImage(img.width(), img.height()), {}, 0, 0.0, false};
  out.tau = resolve_step(w, params.penaliser, params.time, params.tau);
  auto r = run(ParticleState(std::move(v)), w, params, out.tau);
  auto dst = out.image.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = quantise(r.state[i]);
  out.trace = std::move(r.trace);
  out.iterations = r.iterations;
  return out;
}

Enhanced<ColourImage> enhance_colour(const ColourImage& img, const EnhanceParams& params,
                                     const ColourParams& colour) {
  check_time(params.time);
  if (!(colour.lambda >= 0.0 && colour.lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0,1]");

  const std::vector<double> y = luminance_plane(img);
  std::vector<double> enhanced(y.size());
  Enhanced<ColourImage> out;

  if (colour.scope == Scope::global) {
    // Bin Y to 8-bit levels and move every pixel by its level's displacement.
    std::vector<int> level(y.size());
    LevelHistogram hist{};
    for (std::size_t i = 0; i < y.size(); ++i) {
      level[i] = from_unit(y[i]);
      ++hist[static_cast<std::size_t>(level[i])];
    }
    LevelEvolution lv = evolve_levels(hist, params);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double shift = *lv.positions[static_cast<std::size_t>(level[i])] - to_unit(level[i]);
      enhanced[i] = std::clamp(y[i] + shift, 0.0, 1.0);
    }
    out.trace = std::move(lv.trace);
    out.iterations = lv.iterations;
    out.tau = lv.tau;
    out.closed_form = lv.closed_form;
  } else {
    if (std::isinf(params.time))
      throw NoClosedFormError("t = inf has no closed form for the local model");
    const LocalDiskWeights w(img.width(), img.height(), colour.local.radius,
                             colour.local.kernel);
    out.tau = resolve_step(w, params.penaliser, params.time, params.tau);
    auto r = run(ParticleState(y), w, params, out.tau);
    enhanced = r.state.vector();
    out.trace = std::move(r.trace);
    out.iterations = r.iterations;
  }

  out.image = remap_image(img, y, enhanced, colour.lambda);
  return out;
}

}  // namespace bdiff
