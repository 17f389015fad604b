#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "gabsn/analytic.hpp"
#include "gabsn/core.hpp"
#include "gabsn/dataset.hpp"
#include "gabsn/inference.hpp"
#include "gabsn/report.hpp"
#include "gabsn/rng.hpp"
#include "gabsn/sampling.hpp"
#include "gabsn/zoo.hpp"

namespace py = pybind11;
using namespace gabsn;

namespace {

// Structured results cross the boundary as JSON text, decoded in __init__.py.
FitOptions options(std::uint64_t seed, long budget, int starts, int threads) {
  FitOptions o;
  o.seed = seed;
  o.global_budget = budget;
  o.multistarts = starts;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_gabsn, m) {
  m.doc() = "GABSN distribution core";

  py::register_exception<UnknownModel>(m, "UnknownModel", PyExc_KeyError);
  py::register_exception<DatasetError>(m, "DatasetError", PyExc_IOError);

  m.def("normalizing_constant",
        [](double a, double b, double l) { return normalizing_constant({a, b, l}); }, py::arg("alpha"),
        py::arg("beta"), py::arg("lambda_"));
  m.def("pdf", py::vectorize([](double y, double a, double b, double l, double mu, double sigma) {
          return pdf_loc_scale(y, {{a, b, l}, mu, sigma});
        }),
        py::arg("y"), py::arg("alpha"), py::arg("beta"), py::arg("lambda_"), py::arg("mu") = 0.0,
        py::arg("sigma") = 1.0);
  m.def("logpdf", py::vectorize([](double y, double a, double b, double l, double mu, double sigma) {
          return log_pdf_loc_scale(y, {{a, b, l}, mu, sigma});
        }),
        py::arg("y"), py::arg("alpha"), py::arg("beta"), py::arg("lambda_"), py::arg("mu") = 0.0,
        py::arg("sigma") = 1.0);
  m.def("cdf", py::vectorize([](double y, double a, double b, double l, double mu, double sigma) {
          require_positive_scale(sigma, "cdf");
          return cdf((y - mu) / sigma, {a, b, l});
        }),
        py::arg("y"), py::arg("alpha"), py::arg("beta"), py::arg("lambda_"), py::arg("mu") = 0.0,
        py::arg("sigma") = 1.0);
  m.def("_moments", [](double a, double b, double l) {
    return nlohmann::json(moment_set({a, b, l})).dump();
  });
  m.def(
      "sample",
      [](std::size_t n, double a, double b, double l, double mu, double sigma, std::uint64_t seed) {
        Rng rng(seed);
        const SampleBatch s = sample_loc_scale(n, {{a, b, l}, mu, sigma}, rng);
        return py::array_t<double>(static_cast<py::ssize_t>(s.values.size()), s.values.data());
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("lambda_"), py::arg("mu") = 0.0,
      py::arg("sigma") = 1.0, py::arg("seed") = 1);
  m.def("models", [] {
    std::vector<std::string> out;
    for (const auto& z : model_zoo()) out.push_back(z.name);
    return out;
  });
  m.def("model_params", [](const std::string& name) { return find_model(name).param_names; });
  m.def("load_dataset", [](const std::string& ref, const std::string& column) {
    return load_dataset(ref, column).values;
  }, py::arg("ref"), py::arg("column") = "");
  m.def(
      "_fit",
      [](const std::vector<double>& data, const std::string& model, std::uint64_t seed, long budget,
         int starts, int threads) {
        FitResult r;
        {
          py::gil_scoped_release release;
          r = fit(data, find_model(model), options(seed, budget, starts, threads));
        }
        return nlohmann::json(r).dump();
      },
      py::arg("data"), py::arg("model"), py::arg("seed"), py::arg("budget"), py::arg("starts"),
      py::arg("threads"));
  m.def(
      "_lr_test",
      [](const std::vector<double>& data, const std::string& nested, const std::string& full,
         std::uint64_t seed, long budget, int starts, int threads) {
        LrTestResult r;
        {
          py::gil_scoped_release release;
          r = lr_test(data, find_model(nested), find_model(full), options(seed, budget, starts, threads));
        }
        return nlohmann::json(r).dump();
      },
      py::arg("data"), py::arg("nested"), py::arg("full"), py::arg("seed"), py::arg("budget"),
      py::arg("starts"), py::arg("threads"));
  m.def("loglik", [](const std::vector<double>& data, const std::string& model,
                     const std::vector<double>& params) {
    return evaluate_loglik(data, find_model(model), params).value;
  });
}
