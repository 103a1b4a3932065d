#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "transversal/checks.hpp"
#include "transversal/constants.hpp"
#include "transversal/hypersurface.hpp"
#include "transversal/lewis.hpp"
#include "transversal/suite.hpp"
#include "transversal/transversality.hpp"
#include "transversal/volumes.hpp"
#include "transversal/zonotope.hpp"

namespace py = pybind11;
using namespace transversal;

namespace {

DiscreteHypersurface from_arrays(const Mat& vectors, const std::vector<double>& weights, const std::string& label) {
  if (static_cast<std::size_t>(vectors.rows()) != weights.size())
    throw std::invalid_argument("one weight per row of vectors is required");
  std::vector<Atom> atoms;
  for (int i = 0; i < vectors.rows(); ++i) atoms.push_back({weights[i], vectors.row(i).transpose()});
  return make_surface(static_cast<int>(vectors.cols()), std::move(atoms), label);
}

}  // namespace

PYBIND11_MODULE(_transversal, m) {
  py::register_exception<std::length_error>(m, "BudgetError", PyExc_ValueError);

  py::class_<DiscreteHypersurface>(m, "Surface")
      .def(py::init(&from_arrays), py::arg("vectors"), py::arg("weights"), py::arg("label") = "")
      .def_readonly("d", &DiscreteHypersurface::d)
      .def_readonly("label", &DiscreteHypersurface::label)
      .def("size", &DiscreteHypersurface::size)
      .def("total_mass", &DiscreteHypersurface::total_mass)
      .def("vectors", [](const DiscreteHypersurface& s) { return Mat(s.vectors().transpose()); })
      .def("weights",
           [](const DiscreteHypersurface& s) {
             std::vector<double> w;
             for (const auto& a : s.atoms) w.push_back(a.w);
             return w;
           })
      .def("fingerprint", &DiscreteHypersurface::fingerprint)
      .def("to_json", [](const DiscreteHypersurface& s) { return surface_to_json(s).dump(); });

  m.def("generate",
        [](const std::string& name, int d, std::size_t n, std::uint64_t seed, double weight, bool signed_cross) {
          GeneratorSpec g{name, d, n, seed, weight, signed_cross};
          return generate(g);
        },
        py::arg("name"), py::arg("d") = 2, py::arg("n") = 0, py::arg("seed") = 1, py::arg("weight") = 1.0,
        py::arg("signed_cross") = false);
  m.def("generator_names", &generator_names);
  m.def("load_surface", &load_surface);

  m.def("q_exact", [](const DiscreteHypersurface& s, int j, double p) { return q_exact(s, j, p).value; },
        py::arg("surface"), py::arg("j"), py::arg("p") = 1.0);
  m.def("zonotope_volume", [](const DiscreteHypersurface& s) { return zonotope_volume(projection_body(s)); });
  m.def("vis",
        [](const DiscreteHypersurface& s, double p, std::uint64_t samples, std::uint64_t seed) {
          VisResult v = vis_p(s, p, KpMethod::Auto, samples, seed);
          return py::make_tuple(v.value, v.stderr_value, v.volume.method);
        },
        py::arg("surface"), py::arg("p") = 1.0, py::arg("samples") = kDefaultVolumeSamples, py::arg("seed") = 1);
  m.def("lewis",
        [](const DiscreteHypersurface& s, double p) {
          LewisResult r = lewis_solve(s, p);
          return py::make_tuple(r.u, r.defect, r.iterations);
        },
        py::arg("surface"), py::arg("p") = 1.0);
  m.def("i_p", &i_p);
  m.def("i_p_uniform", &i_p_uniform_closed_form);
  m.def("omega", &omega);

  m.def("check_ids", &check_ids);
  m.def("run_check",
        [](const std::string& id, const DiscreteHypersurface& s, double p, std::uint64_t samples, std::uint64_t seed) {
          CheckInstance in;
          in.surfaces = {s};
          CheckParams pr;
          pr.p = p;
          pr.mc_samples = samples;
          pr.seed = seed;
          return report_to_json(run_check(id, in, pr)).dump();
        },
        py::arg("id"), py::arg("surface"), py::arg("p") = 1.0, py::arg("samples") = 1'000'000, py::arg("seed") = 1);
  m.def("run_suite", [](const std::string& config_json) {
    return suite_to_json(run_suite(nlohmann::json::parse(config_json))).dump();
  });
}
