#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>

#include "bdiff/evolution.hpp"
#include "bdiff/image.hpp"
#include "bdiff/penaliser.hpp"
#include "bdiff/weights.hpp"

namespace bdiff {

inline constexpr double kSteadyState = std::numeric_limits<double>::infinity();

/// Requested t = infinity where no closed-form minimiser is available.
class NoClosedFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnhanceParams {
  Penaliser penaliser{};
  double time = 0.0;           // model time; kSteadyState for the closed form
  std::optional<double> tau;   // see resolve_step
  bool record_trace = false;
  std::size_t trace_stride = 1;
};

struct LocalParams {
  double radius = 60.0;
  Kernel kernel = Kernel::box;
};

enum class Scope { global, local };

struct ColourParams {
  Scope scope = Scope::global;
  LocalParams local{};
  double lambda = 0.5;
};

template <class Image>
struct Enhanced {
  Image image;
  EnergyTrace trace;
  std::size_t iterations = 0;
  double tau = 0.0;            // step size used; 0 for closed-form results
  bool closed_form = false;
};

/// Step size for evolving to `time`: an explicit tau must be strictly below
/// max_step (StepSizeError otherwise). Without one, a time that fits under
/// max_step is covered in a single step; longer times use optimal_step.
double resolve_step(const WeightProvider& w, const Penaliser& p, double time,
                    std::optional<double> tau);

/// Final unit-interval position of every occurring 8-bit level under the
/// global model (frequency weights). Non-occurring levels are nullopt.
struct LevelEvolution {
  LevelMap positions;
  EnergyTrace trace;
  std::size_t iterations = 0;
  double tau = 0.0;
  bool closed_form = false;
};
LevelEvolution evolve_levels(const LevelHistogram& hist, const EnhanceParams& params);

Enhanced<GreyImage> enhance_grey_global(const GreyImage& img, const EnhanceParams& params);

/// One particle per pixel with disk weights. Throws NoClosedFormError for
/// t = infinity.
Enhanced<GreyImage> enhance_grey_local(const GreyImage& img, const EnhanceParams& params,
                                       const LocalParams& local);

/// Enhances the luminance plane (global: 8-bit binned Y levels; local: per
/// pixel Y) and carries it back to RGB with hue_preserving_remap.
Enhanced<ColourImage> enhance_colour(const ColourImage& img, const EnhanceParams& params,
                                     const ColourParams& colour);

}  // namespace bdiff
