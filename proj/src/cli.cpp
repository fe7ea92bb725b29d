#include "bdiff/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "bdiff/image_io.hpp"
#include "bdiff/pipelines.hpp"

namespace bdiff::cli {

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::grey_global: return "grey-global";
    case Command::grey_local: return "grey-local";
    case Command::colour_global: return "colour-global";
    case Command::colour_local: return "colour-local";
    case Command::steady_state: return "steady-state";
  }
  return "?";
}

struct Flags {
  std::string t;
  std::optional<double> tau;
  std::string trace;
};

void add_common(CLI::App& sub, RunSpec& spec) {
  sub.add_option("--input", spec.input, "Input image (.pgm, .ppm or .png)")->required();
  sub.add_option("--output", spec.output, "Output image; format from the extension")
      ->required();
  sub.add_option("--a", spec.a, "Penaliser amplitude a > 0")->capture_default_str();
  sub.add_option("--n", spec.n, "Penaliser exponent n >= 1")->capture_default_str();
}

void add_evolution(CLI::App& sub, Flags& flags) {
  sub.add_option("--t", flags.t, "Diffusion time, or `inf` for the steady state")
      ->required();
  sub.add_option("--tau", flags.tau, "Time step (default: t itself when below max_step, else the optimal step)");
  sub.add_option("--trace", flags.trace, "Write the energy trace as CSV");
}

void add_local(CLI::App& sub, RunSpec& spec) {
  sub.add_option("--rho", spec.rho, "Disk radius in pixels")->capture_default_str();
  const std::map<std::string, Kernel> kernels{{"box", Kernel::box},
                                              {"bspline", Kernel::bspline}};
  sub.add_option("--kernel", spec.kernel, "Spatial kernel: box or bspline")
      ->transform(CLI::CheckedTransformer(kernels, CLI::ignore_case))
      ->option_text("box|bspline [box]");
}

void add_lambda(CLI::App& sub, RunSpec& spec) {
  sub.add_option("--lambda", spec.lambda,
                 "Weight of the multiplicative colour remap, in [0,1]")
      ->capture_default_str();
}

void write_trace(const RunSpec& spec, const EnergyTrace& trace) {
  if (!spec.trace) return;
  std::ofstream f(*spec.trace, std::ios::binary);
  if (!f) throw ImageIoError("cannot open trace file " + *spec.trace);
  trace.write_csv(f);
  if (!f) throw ImageIoError("failed to write trace file " + *spec.trace);
}

template <class Image>
const Image& expect(const AnyImage& img, const std::string& path, const char* kind) {
  if (const Image* p = std::get_if<Image>(&img)) return *p;
  throw ImageIoError(path + " is not a " + kind + " image");
}

template <class Image>
void report(std::ostream& out, const RunSpec& spec, const Enhanced<Image>& r) {
  out << command_name(spec.command) << ": ";
  if (r.closed_form)
    out << "closed-form steady state";
  else
    out << r.iterations << " iteration(s), tau = " << r.tau;
  out << ", wrote " << spec.output << '\n';
}

}  // namespace

std::optional<double> parse_time(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kSteadyState;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v) || v < 0.0) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::variant<RunSpec, int> parse(int argc, const char* const* argv, std::ostream& out,
                                 std::ostream& err) {
  CLI::App app{"Contrast enhancement by stable backward diffusion", "bdiff"};
  app.require_subcommand(1);

  RunSpec spec;
  Flags flags;

  auto* gg = app.add_subcommand("grey-global", "Global greyscale enhancement");
  auto* gl = app.add_subcommand("grey-local", "Local greyscale enhancement");
  auto* cg = app.add_subcommand("colour-global", "Global colour enhancement");
  auto* cl = app.add_subcommand("colour-local", "Local colour enhancement");
  auto* ss = app.add_subcommand(
      "steady-state", "Closed-form global steady state (histogram equalisation)");

  for (auto* sub : {gg, gl, cg, cl, ss}) add_common(*sub, spec);
  for (auto* sub : {gg, gl, cg, cl}) add_evolution(*sub, flags);
  for (auto* sub : {gl, cl}) add_local(*sub, spec);
  for (auto* sub : {cg, cl, ss}) add_lambda(*sub, spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (gg->parsed()) spec.command = Command::grey_global;
  if (gl->parsed()) spec.command = Command::grey_local;
  if (cg->parsed()) spec.command = Command::colour_global;
  if (cl->parsed()) spec.command = Command::colour_local;
  if (ss->parsed()) spec.command = Command::steady_state;

  if (spec.command == Command::steady_state) {
    spec.t = kSteadyState;
  } else {
    const auto t = parse_time(flags.t);
    if (!t) {
      err << "error: --t must be a nonnegative number or `inf`, got '" << flags.t << "'\n";
      return 1;
    }
    spec.t = *t;
    spec.tau = flags.tau;
    if (!flags.trace.empty()) spec.trace = flags.trace;
  }
  return spec;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (!(spec.rho > 0.0)) throw std::invalid_argument("--rho must be positive");
    EnhanceParams params{Penaliser(spec.a, spec.n), spec.t, spec.tau,
                         spec.trace.has_value(), 1};
    const LocalParams local{spec.rho, spec.kernel};
    const AnyImage input = read_image(spec.input);

    switch (spec.command) {
      case Command::grey_global:
      case Command::grey_local: {
        const auto& img = expect<GreyImage>(input, spec.input, "greyscale");
        auto r = spec.command == Command::grey_global
                     ? enhance_grey_global(img, params)
                     : enhance_grey_local(img, params, local);
        write_image(spec.output, r.image);
        write_trace(spec, r.trace);
        report(out, spec, r);
        break;
      }
      case Command::colour_global:
      case Command::colour_local: {
        const auto& img = expect<ColourImage>(input, spec.input, "colour");
        const ColourParams colour{
            spec.command == Command::colour_global ? Scope::global : Scope::local, local,
            spec.lambda};
        auto r = enhance_colour(img, params, colour);
        write_image(spec.output, r.image);
        write_trace(spec, r.trace);
        report(out, spec, r);
        break;
      }
      case Command::steady_state: {
        params.time = kSteadyState;
        if (const auto* g = std::get_if<GreyImage>(&input)) {
          auto r = enhance_grey_global(*g, params);
          write_image(spec.output, r.image);
          report(out, spec, r);
        } else {
          auto r = enhance_colour(std::get<ColourImage>(input), params,
                                  {Scope::global, local, spec.lambda});
          write_image(spec.output, r.image);
          report(out, spec, r);
        }
        break;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse(argc, argv, out, err);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return run(std::get<RunSpec>(parsed), out, err);
}

}  // namespace bdiff::cli
