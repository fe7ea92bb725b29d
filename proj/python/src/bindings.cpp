#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "bdiff/colour.hpp"
#include "bdiff/evolution.hpp"
#include "bdiff/image_io.hpp"
#include "bdiff/pipelines.hpp"
#include "bdiff/steady_state.hpp"

namespace py = pybind11;
using namespace bdiff;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GreyImage grey_from_array(const U8Array& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D uint8 array (height, width)");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  return GreyImage(w, h, std::vector<std::uint8_t>(a.data(), a.data() + w * h));
}

ColourImage colour_from_array(const U8Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 3)
    throw std::invalid_argument("expected a (height, width, 3) uint8 array");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  return ColourImage(w, h, std::vector<std::uint8_t>(a.data(), a.data() + 3 * w * h));
}

py::array_t<std::uint8_t> to_array(const GreyImage& img) {
  py::array_t<std::uint8_t> out({img.height(), img.width()});
  std::memcpy(out.mutable_data(), img.samples().data(), img.samples().size());
  return out;
}

py::array_t<std::uint8_t> to_array(const ColourImage& img) {
  py::array_t<std::uint8_t> out({img.height(), img.width(), std::size_t{3}});
  std::memcpy(out.mutable_data(), img.samples().data(), img.samples().size());
  return out;
}

py::list trace_rows(const EnergyTrace& t) {
  py::list rows;
  for (const auto& r : t.records) rows.append(py::make_tuple(r.iteration, r.time, r.energy));
  return rows;
}

EnhanceParams make_params(double t, double a, int n, std::optional<double> tau,
                          bool trace) {
  return EnhanceParams{Penaliser(a, n), t, tau, trace, 1};
}

template <class Image>
py::dict result_dict(const Enhanced<Image>& r) {
  py::dict d;
  d["image"] = to_array(r.image);
  d["trace"] = trace_rows(r.trace);
  d["iterations"] = r.iterations;
  d["tau"] = r.tau;
  d["closed_form"] = r.closed_form;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bdiff, m) {
  m.doc() = "Contrast enhancement by stable backward diffusion";

  py::register_exception<StepSizeError>(m, "StepSizeError", PyExc_ValueError);
  py::register_exception<NoClosedFormError>(m, "NoClosedFormError", PyExc_ValueError);
  py::register_exception<ImageIoError>(m, "ImageIoError", PyExc_OSError);

  py::class_<Penaliser>(m, "Penaliser")
      .def(py::init<double, int>(), py::arg("a") = 1.0, py::arg("n") = 1)
      .def("psi", &Penaliser::psi, py::arg("s"))
      .def("flux", &Penaliser::flux, py::arg("s"))
      .def("dflux", &Penaliser::dflux, py::arg("s"))
      .def("flux_lipschitz_tight", &Penaliser::flux_lipschitz_tight)
      .def("flux_lipschitz_coarse", &Penaliser::flux_lipschitz_coarse)
      .def_property_readonly("a", &Penaliser::amplitude)
      .def_property_readonly("n", &Penaliser::exponent)
      .def("__repr__", [](const Penaliser& p) {
        return "Penaliser(a=" + py::repr(py::float_(p.amplitude())).cast<std::string>() +
               ", n=" + std::to_string(p.exponent()) + ")";
      });

  py::enum_<Kernel>(m, "Kernel").value("box", Kernel::box).value("bspline", Kernel::bspline);

  py::class_<WeightProvider>(m, "WeightProvider")
      .def("__len__", &WeightProvider::size)
      .def("weight", &WeightProvider::weight, py::arg("i"), py::arg("j"))
      .def("row_sum", &WeightProvider::row_sum, py::arg("i"))
      .def("max_row_sum", &WeightProvider::max_row_sum)
      .def_property_readonly("constant_columns", &WeightProvider::constant_columns)
      .def("neighbours", [](const WeightProvider& w, std::size_t i) {
        std::vector<std::pair<std::size_t, double>> out;
        for (const auto& e : w.neighbours(i)) out.emplace_back(e.index, e.weight);
        return out;
      }, py::arg("i"));

  py::class_<DenseWeights, WeightProvider>(m, "DenseWeights")
      .def(py::init([](py::array_t<double, py::array::c_style | py::array::forcecast> a) {
             if (a.ndim() != 2 || a.shape(0) != a.shape(1))
               throw std::invalid_argument("expected a square matrix");
             const auto n = static_cast<std::size_t>(a.shape(0));
             return DenseWeights(n, std::vector<double>(a.data(), a.data() + n * n));
           }),
           py::arg("matrix"))
      .def_static("ones", &DenseWeights::ones, py::arg("n"));

  py::class_<GlobalHistogramWeights, WeightProvider>(m, "GlobalHistogramWeights")
      .def(py::init<std::vector<double>>(), py::arg("counts"))
      .def_property_readonly("total", &GlobalHistogramWeights::total);

  py::class_<LocalDiskWeights, WeightProvider>(m, "LocalDiskWeights")
      .def(py::init<std::size_t, std::size_t, double, Kernel>(), py::arg("width"),
           py::arg("height"), py::arg("rho"), py::arg("kernel") = Kernel::box);

  m.def("gamma1", &gamma1, py::arg("d"), py::arg("rho"));
  m.def("gamma2", &gamma2, py::arg("d"), py::arg("rho"));

  m.def("energy", [](const std::vector<double>& v, const WeightProvider& w,
                     const Penaliser& p) { return energy(ParticleState(v), w, p); },
        py::arg("v"), py::arg("weights"), py::arg("penaliser"));
  m.def("descent_direction",
        [](const std::vector<double>& v, const WeightProvider& w, const Penaliser& p) {
          return descent_direction(ParticleState(v), w, p);
        },
        py::arg("v"), py::arg("weights"), py::arg("penaliser"));
  m.def("max_step", &max_step, py::arg("weights"), py::arg("penaliser"));
  m.def("optimal_step", &optimal_step, py::arg("weights"), py::arg("penaliser"));
  m.def("step",
        [](const std::vector<double>& v, const WeightProvider& w, const Penaliser& p,
           double tau) { return step(ParticleState(v), w, p, tau).vector(); },
        py::arg("v"), py::arg("weights"), py::arg("penaliser"), py::arg("tau"));
  m.def("evolve",
        [](const std::vector<double>& v, const WeightProvider& w, const Penaliser& p,
           double tau, double total_time, std::size_t trace_stride) {
          EvolutionResult r;
          {
            py::gil_scoped_release release;
            r = evolve(ParticleState(v), w, p, {tau, total_time, true, trace_stride});
          }
          return py::make_tuple(r.state.vector(), trace_rows(r.trace), r.iterations);
        },
        py::arg("v"), py::arg("weights"), py::arg("penaliser"), py::arg("tau"),
        py::arg("total_time"), py::arg("trace_stride") = 1,
        "Returns (state, [(iteration, time, energy), ...], iterations).");
  m.def("evolve_to_steady_state",
        [](const std::vector<double>& v, const WeightProvider& w, const Penaliser& p,
           double tau, double tolerance, std::size_t max_iterations) {
          ConvergenceResult r;
          {
            py::gil_scoped_release release;
            r = evolve_to_steady_state(ParticleState(v), w, p, tau,
                                       {tolerance, max_iterations});
          }
          return py::make_tuple(r.state.vector(), r.iterations, r.residual, r.converged);
        },
        py::arg("v"), py::arg("weights"), py::arg("penaliser"), py::arg("tau"),
        py::arg("tolerance") = 1e-10, py::arg("max_iterations") = 10'000'000,
        "Returns (state, iterations, residual, converged).");

  m.def("uniform_steady_state",
        [](const std::vector<double>& f) { return uniform_steady_state(f); }, py::arg("f"));
  m.def("linear_flux_steady_state", &linear_flux_steady_state, py::arg("weights"));
  m.def("equalisation_lut",
        [](const std::vector<std::uint64_t>& counts) {
          if (counts.size() != 256) throw std::invalid_argument("expected 256 level counts");
          LevelHistogram h{};
          std::copy(counts.begin(), counts.end(), h.begin());
          const LevelMap lut = equalisation_lut(h);
          return std::vector<std::optional<double>>(lut.begin(), lut.end());
        },
        py::arg("counts"), "Maps each of the 256 levels to its value, or None if absent.");

  m.def("to_unit", &to_unit, py::arg("level"));
  m.def("from_unit", &from_unit, py::arg("v"));
  m.def("luminance", py::overload_cast<double, double, double>(&luminance), py::arg("r"),
        py::arg("g"), py::arg("b"));
  m.def("hue_preserving_remap",
        [](std::array<double, 3> rgb, double f, double g, double lambda) {
          const Rgb o = hue_preserving_remap({rgb[0], rgb[1], rgb[2]}, f, g, lambda);
          return std::array<double, 3>{o.r, o.g, o.b};
        },
        py::arg("rgb"), py::arg("f"), py::arg("g"), py::arg("lam") = 0.5);

  m.def("enhance_grey_global",
        [](const U8Array& img, double t, double a, int n, std::optional<double> tau,
           bool trace) {
          const GreyImage in = grey_from_array(img);
          const EnhanceParams params = make_params(t, a, n, tau, trace);
          Enhanced<GreyImage> r;
          {
            py::gil_scoped_release release;
            r = enhance_grey_global(in, params);
          }
          return result_dict(r);
        },
        py::arg("image"), py::arg("t"), py::arg("a") = 1.0, py::arg("n") = 1,
        py::arg("tau") = py::none(), py::arg("trace") = false);
  m.def("enhance_grey_local",
        [](const U8Array& img, double t, double rho, Kernel kernel, double a, int n,
           std::optional<double> tau, bool trace) {
          const GreyImage in = grey_from_array(img);
          const EnhanceParams params = make_params(t, a, n, tau, trace);
          Enhanced<GreyImage> r;
          {
            py::gil_scoped_release release;
            r = enhance_grey_local(in, params, {rho, kernel});
          }
          return result_dict(r);
        },
        py::arg("image"), py::arg("t"), py::arg("rho") = 60.0, py::arg("kernel") = Kernel::box,
        py::arg("a") = 1.0, py::arg("n") = 1, py::arg("tau") = py::none(),
        py::arg("trace") = false);
  m.def("enhance_colour",
        [](const U8Array& img, double t, bool local, double lambda, double rho, Kernel kernel,
           double a, int n, std::optional<double> tau, bool trace) {
          const ColourImage in = colour_from_array(img);
          const EnhanceParams params = make_params(t, a, n, tau, trace);
          const ColourParams colour{local ? Scope::local : Scope::global, {rho, kernel}, lambda};
          Enhanced<ColourImage> r;
          {
            py::gil_scoped_release release;
            r = enhance_colour(in, params, colour);
          }
          return result_dict(r);
        },
        py::arg("image"), py::arg("t"), py::arg("local") = false, py::arg("lam") = 0.5,
        py::arg("rho") = 60.0, py::arg("kernel") = Kernel::box, py::arg("a") = 1.0,
        py::arg("n") = 1, py::arg("tau") = py::none(), py::arg("trace") = false);

  m.def("read_image",
        [](const std::filesystem::path& path) -> py::array_t<std::uint8_t> {
          const AnyImage img = read_image(path);
          if (const auto* g = std::get_if<GreyImage>(&img)) return to_array(*g);
          return to_array(std::get<ColourImage>(img));
        },
        py::arg("path"), "Returns (h, w) for greyscale or (h, w, 3) for colour.");
  m.def("write_image",
        [](const std::filesystem::path& path, const U8Array& img) {
          if (img.ndim() == 2)
            write_image(path, grey_from_array(img));
          else
            write_image(path, colour_from_array(img));
        },
        py::arg("path"), py::arg("image"));
}
