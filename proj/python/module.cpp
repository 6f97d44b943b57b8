#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "haargreedy/constructions.hpp"
#include "haargreedy/greedy.hpp"
#include "haargreedy/io.hpp"
#include "haargreedy/verify.hpp"

namespace py = pybind11;
using namespace haargreedy;

namespace {

// Rationals cross the boundary as "p/q" strings; the python wrapper turns
// them into fractions.Fraction.
std::string rat(const Rational& value) { return fraction_string(value); }

GreedyParams make_params(const std::string& s, const std::string& t,
                         const std::string& variant, std::optional<std::uint64_t> max_steps,
                         bool include_constant) {
    GreedyParams params{rational_from_string(s), rational_from_string(t),
                        variant == "b" ? StepRule::RuleB : StepRule::RuleA, max_steps,
                        include_constant};
    params.validate();
    return params;
}

py::dict step_dict(const GreedyStepRecord& step) {
    py::dict out;
    out["m"] = step.m;
    out["constant_step"] = step.constant_step;
    out["delta"] = step.delta.to_string();
    out["j"] = step.j;
    out["delta_tilde"] = step.delta_tilde.to_string();
    out["i"] = step.i;
    out["removed_value"] = rat(step.removed_value);
    out["approximant_norm"] = rat(step.approximant_norm);
    out["residual_norm"] = rat(step.residual_norm);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weak thresholding greedy algorithm for the multivariate Haar basis";

    py::class_<DyadicCube>(m, "DyadicCube")
        .def(py::init<int, int, std::vector<std::int64_t>>(), py::arg("dim"),
             py::arg("level"), py::arg("coords"))
        .def_static("root", &DyadicCube::root, py::arg("dim"))
        .def_static("parse", &DyadicCube::parse, py::arg("text"))
        .def_property_readonly("dim", &DyadicCube::dim)
        .def_property_readonly("level", &DyadicCube::level)
        .def_property_readonly("coords", &DyadicCube::coords)
        .def("parent", &DyadicCube::parent)
        .def("successors", &DyadicCube::immediate_successors)
        .def("successor", &DyadicCube::successor, py::arg("position"))
        .def("contains", &DyadicCube::contains, py::arg("other"))
        .def("measure", [](const DyadicCube& cube) { return rat(cube.measure()); })
        .def("__str__", &DyadicCube::to_string)
        .def("__repr__", &DyadicCube::to_string)
        .def("__eq__", [](const DyadicCube& a, const DyadicCube& b) { return a == b; })
        .def("__lt__", &cube_precedes)
        .def("__hash__",
             [](const DyadicCube& cube) { return py::hash(py::str(cube.to_string())); });

    py::class_<HaarExpansion>(m, "HaarExpansion")
        .def(py::init<int>(), py::arg("dim"))
        .def_property_readonly("dim", &HaarExpansion::dim)
        .def_property_readonly("constant",
                               [](const HaarExpansion& f) { return rat(f.constant()); })
        .def("set_constant",
             [](HaarExpansion& f, const std::string& value) {
                 f.set_constant(rational_from_string(value));
             })
        .def("set_coefficient",
             [](HaarExpansion& f, const DyadicCube& cube, int index,
                const std::string& value) {
                 f.set_coefficient(cube, index, rational_from_string(value));
             })
        .def("coefficient",
             [](const HaarExpansion& f, const DyadicCube& cube, int index) {
                 return rat(f.coefficient(cube, index));
             })
        .def("coefficients",
             [](const HaarExpansion& f) {
                 py::list out;
                 for (const auto& [key, value] : f.coefficients()) {
                     out.append(py::make_tuple(key.cube.to_string(), key.index,
                                               rat(value)));
                 }
                 return out;
             })
        .def("spectrum_size", &HaarExpansion::spectrum_size)
        .def("is_zero", &HaarExpansion::is_zero)
        .def("__eq__",
             [](const HaarExpansion& a, const HaarExpansion& b) { return a == b; })
        .def("__add__",
             [](const HaarExpansion& a, const HaarExpansion& b) { return a + b; })
        .def("__sub__",
             [](const HaarExpansion& a, const HaarExpansion& b) { return a - b; })
        .def("scale", [](const HaarExpansion& f, const std::string& scalar) {
            return rational_from_string(scalar) * HaarExpansion(f);
        })
        .def("to_json",
             [](const HaarExpansion& f) { return expansion_to_json(f).dump(); })
        .def_static("from_json", [](const std::string& text) {
            return expansion_from_json(Json::parse(text));
        });

    m.def("norm", [](const HaarExpansion& f) { return rat(norm(f)); },
          "exact L1 norm over [0,1)^d");
    m.def("norm_on_cube",
          [](const HaarExpansion& f, const DyadicCube& cube) {
              return rat(norm_on_cube(f, cube));
          });
    m.def("evaluate",
          [](const HaarExpansion& f, const DyadicCube& cell) {
              return rat(evaluate(f, cell));
          });
    m.def("project_outside", &project_outside, py::arg("f"), py::arg("cube"));
    m.def("coefficient_by_integration",
          [](const HaarExpansion& f, const DyadicCube& cube, int index) {
              return rat(coefficient_by_integration(f, cube, index));
          });

    m.def("build_f_n", &build_f_n, py::arg("n"));
    m.def("build_f_n_eps",
          [](int n, const std::string& eps) {
              return build_f_n_eps(n, rational_from_string(eps));
          });
    m.def("build_g_n_eps", [](int n, const std::string& eps, const std::string& t) {
        return build_g_n_eps(n, rational_from_string(eps), rational_from_string(t));
    });
    m.def("build_rademacher_product", [](int n, const std::string& u) {
        return build_rademacher_product(n, rational_from_string(u));
    });
    m.def("build_rademacher_partial_sum", [](int n, const std::string& u) {
        return build_rademacher_partial_sum(n, rational_from_string(u));
    });
    m.def("khinchine_l1", [](int n) { return rat(khinchine_l1(n)); });

    m.def(
        "run_greedy",
        [](const HaarExpansion& f, const std::string& s, const std::string& t,
           const std::string& variant, std::optional<std::uint64_t> max_steps,
           bool include_constant) {
            GreedyTrace trace =
                run_greedy(f, make_params(s, t, variant, max_steps, include_constant));
            py::dict out;
            out["terminated"] = trace.terminated;
            out["input_norm"] = rat(trace.input_norm);
            out["approximant"] = trace.approximant;
            out["residual"] = trace.residual;
            out["max_approximant_norm"] = rat(trace.max_approximant_norm());
            py::list steps;
            for (const GreedyStepRecord& step : trace.steps) steps.append(step_dict(step));
            out["steps"] = steps;
            return out;
        },
        py::arg("f"), py::arg("s") = "3/4", py::arg("t") = "1/2", py::arg("variant") = "a",
        py::arg("max_steps") = py::none(), py::arg("include_constant") = true);

    m.def("gen_expansion", &gen_expansion, py::arg("seed"), py::arg("dim"),
          py::arg("max_level"), py::arg("coeff_count"), py::arg("coeff_bound"));

    m.def("uniform_bound_constant",
          [](const std::string& s, const std::string& t, int dim) {
              return rat(uniform_bound_constant(rational_from_string(s),
                                                rational_from_string(t), dim));
          });

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t trials, std::uint64_t seed) {
            SuiteReport report = run_suite(name, trials, seed);
            py::dict out;
            out["suite"] = report.suite;
            out["ok"] = report.ok();
            py::list lines;
            for (const SuiteLine& line : report.lines) {
                py::dict entry;
                entry["check"] = line.check;
                entry["trials"] = line.trials;
                entry["failures"] = line.failures;
                lines.append(entry);
            }
            out["lines"] = lines;
            py::list failures;
            for (const LemmaVerdict& failure : report.failures) {
                py::dict entry;
                entry["lemma"] = lemma_name(failure.lemma);
                entry["lhs"] = rat(failure.lhs);
                entry["rhs"] = rat(failure.rhs);
                entry["witness"] = failure.witness;
                failures.append(entry);
            }
            out["failures"] = failures;
            return out;
        },
        py::arg("name"), py::arg("trials") = 50, py::arg("seed") = 1);
}
