#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "planarep/cli_io.hpp"
#include "planarep/errors.hpp"
#include "planarep/foxcalc.hpp"
#include "planarep/solver.hpp"

namespace py = pybind11;
using namespace planarep;

namespace {

// JSON crosses the boundary as text; the Python side sees plain dicts.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

RunConfig config_from(const py::dict& kw) {
  RunConfig c;
  c.timestamp = false;
  for (auto [key, value] : kw) {
    const auto k = key.cast<std::string>();
    if (k == "presentation") c.presentation = value.cast<std::string>();
    else if (k == "genus") c.genus = value.cast<int>();
    else if (k == "torsion") {
      std::string t;
      for (auto m : value.cast<std::vector<int>>()) t += (t.empty() ? "" : ",") + std::to_string(m);
      c.torsion = t;
    } else if (k == "group") c.group = value.cast<std::string>();
    else if (k == "seed") c.seed = value.cast<std::uint64_t>();
    else if (k == "classes") c.classes = value.cast<std::string>();
    else if (k == "target") c.target = value.cast<std::string>();
    else if (k == "point") c.point_path = value.cast<std::string>();
    else if (k == "spec") c.spec_path = value.cast<std::string>();
    else if (k == "order") c.order = value.cast<int>();
    else if (k == "samples") c.samples = value.cast<int>();
    else if (k == "calibration") c.calibration_path = value.cast<std::string>();
    else if (k == "recalibrate") c.recalibrate = value.cast<bool>();
    else if (k == "tol_rank") c.tol.rank_rel = value.cast<double>();
    else if (k == "tol_grp") c.tol.grp = value.cast<double>();
    else if (k == "quad_nodes") c.tol.quad_nodes = value.cast<int>();
    else if (k == "timestamp") c.timestamp = value.cast<bool>();
    else throw py::key_error("unknown option '" + k + "'");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_planarep, m) {
  m.doc() = "Representation spaces of cocompact planar groups";

  py::register_exception<Error>(m, "PlanarepError");

  m.def(
      "run",
      [](const std::string& command, const py::kwargs& kw) {
        const auto r = run_command(command, config_from(kw));
        return py::make_tuple(to_py(r.report), r.exit_code);
      },
      py::arg("command"),
      "Run a CLI command in-process; returns (report, exit_code).");

  m.def("analyze", [](const std::string& text) {
    RunConfig c;
    c.timestamp = false;
    c.presentation = text;
    return to_py(run_command("analyze", c).report["result"]);
  });

  m.def("measure", [](int genus, std::vector<int> torsion) {
    const Rational q = measure(PlanarPresentation(genus, std::move(torsion)));
    return py::make_tuple(q.numerator(), q.denominator());
  });

  m.def(
      "fox_derivative",
      [](std::vector<int> letters, int generator) {
        std::vector<std::pair<std::vector<int>, std::pair<std::int64_t, std::int64_t>>> out;
        const GroupRingElt d = fox_derivative(Word(std::move(letters)), generator);
        for (const auto& [w, q] : d.terms()) {
          out.push_back({std::vector<int>(w.letters().begin(), w.letters().end()), {q.numerator(), q.denominator()}});
        }
        return out;
      },
      py::arg("letters"), py::arg("generator"),
      "Letters are +-(g+1); returns [(word, (num, den))].");

  m.def("finite_order_classes", [](const std::string& group, int order) {
    py::list out;
    for (const auto& c : finite_order_classes(LieModel::from_name(group), order)) out.append(to_py(c.to_json()));
    return out;
  });

  m.def("su2_triangle_oracle", &su2_triangle_oracle, py::arg("theta1"), py::arg("theta2"), py::arg("theta3"),
        py::arg("minus_identity") = false);

  m.def("solve", [](const py::dict& spec) {
    const SolveResult r = solve_relator(SolveSpec::from_json(from_py(spec)));
    return to_py(r.to_json());
  });

  m.def("cohomology", [](const py::dict& point) {
    const RepPoint pt = RepPoint::from_json(from_py(point));
    const CochainData cd = compute_cohomology(pt);
    return to_py(cd.to_json());
  });

  m.def("degeneracy_report", [](const py::dict& point) {
    return to_py(degeneracy_report(RepPoint::from_json(from_py(point))).to_json());
  });
}
