// JSON in, JSON out: the Python package converts dicts and error objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frobweb/app.hpp"

namespace py = pybind11;
using frobweb::Json;

namespace {

/// Raised with the error object as its message; the Python side turns it
/// into FrobwebError(kind, message).
struct WrappedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

frobweb::RunOptions run_options(int grid, double tol, std::optional<std::array<double, 4>> region,
                                int seeds) {
  frobweb::RunOptions o;
  o.grid = grid;
  o.tol = tol;
  o.region = region;
  o.seeds = seeds;
  return o;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const frobweb::Error& e) {
    throw WrappedError(frobweb::error_json(e).dump());
  } catch (const Json::exception& e) {
    throw WrappedError(Json{{"kind", "ParseError"}, {"message", e.what()}}.dump());
  }
}

using Command = Json (*)(const Json&, const frobweb::RunOptions&);

void def_command(py::module_& m, const char* name, Command cmd, const char* doc) {
  m.def(
      name,
      [cmd](const std::string& spec, int grid, double tol,
            std::optional<std::array<double, 4>> region, int seeds) {
        return guarded([&] { return cmd(Json::parse(spec), run_options(grid, tol, region, seeds)).dump(); });
      },
      doc, py::arg("spec"), py::arg("grid") = 0, py::arg("tol") = 1e-6,
      py::arg("region") = py::none(), py::arg("seeds") = 5);
}

}  // namespace

PYBIND11_MODULE(_frobweb, m) {
  m.doc() = "Flat 3-webs and Frobenius 3-fold germs (JSON string interface)";
  py::register_exception<WrappedError>(m, "WrappedError");

  def_command(m, "analyze", frobweb::cmd_analyze, "Fingerprint and connection summary.");
  def_command(m, "verify", frobweb::cmd_verify, "Germ verification report.");
  def_command(m, "build", frobweb::cmd_build, "Build a germ from a recipe and verify it.");
  def_command(m, "report", frobweb::cmd_report, "Everything about one web.");

  m.def(
      "plot",
      [](const std::string& spec, int grid, std::optional<std::array<double, 4>> region,
         int seeds) {
        return guarded([&] {
          const frobweb::PlotOutput p =
              frobweb::cmd_plot(Json::parse(spec), run_options(grid, 1e-6, region, seeds));
          return std::make_tuple(p.svg, p.csv, p.leaves, p.absent);
        });
      },
      "SVG, CSV, traced leaves and absent leaves.", py::arg("spec"), py::arg("grid") = 0,
      py::arg("region") = py::none(), py::arg("seeds") = 5);

  m.def(
      "shear_fit",
      [](const std::string& spec, int k) {
        return guarded([&] {
          const frobweb::LoadedWeb lw = frobweb::load_web(Json::parse(spec));
          return frobweb::exact_json(frobweb::shear_fit(lw.web, k)).dump();
        });
      },
      "Exact shear constant r for ybar = y + r x^k, as JSON (integer or \"p/q\").",
      py::arg("spec"), py::arg("k"));
}
