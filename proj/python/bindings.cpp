// Python bindings for the spectrum library.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optospec/analysis.hpp"
#include "optospec/emission.hpp"
#include "optospec/errors.hpp"
#include "optospec/io.hpp"
#include "optospec/run.hpp"
#include "optospec/verify.hpp"

namespace py = pybind11;
using namespace optospec;

namespace {

using Grid = std::tuple<double, double, double>;

py::object to_python(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict spectrum_result(const RunResult& r) {
    py::dict out;
    out["deltas"] = to_array(r.spectrum.deltas);
    out["values"] = to_array(r.spectrum.values);
    out["meta"] = to_python(to_json(r.spectrum.meta));
    out["integral_check"] = to_python(to_json(r.check));
    return out;
}

RunConfig make_config(Process process, const ModelParams& p, const std::string& state, std::optional<Grid> grid,
                      int n_max) {
    RunConfig cfg;
    cfg.process = process;
    cfg.params = p;
    cfg.state = parse_state_spec(state);
    if (grid) cfg.grid = GridSpec{std::get<0>(*grid), std::get<1>(*grid), std::get<2>(*grid)};
    cfg.n_max = n_max;
    return cfg;
}

SpectrumGrid external_spectrum(std::vector<double> deltas, std::vector<double> values) {
    if (deltas.size() != values.size()) throw UsageError("deltas and values differ in length");
    SpectrumGrid s;
    s.deltas = std::move(deltas);
    s.values = std::move(values);
    s.meta.process = "external";
    return s;
}

}  // namespace

PYBIND11_MODULE(_optospec, m) {
    m.doc() = "Single-photon emission and scattering spectra of a linear plus quadratic optomechanical cavity";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_RuntimeError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double omega_m, double g1, double g2, double kappa) {
                 ModelParams p{omega_m, g1, g2, kappa};
                 p.validate();
                 return p;
             }),
             py::kw_only(), py::arg("omega_m") = 1.0, py::arg("g1") = 0.0, py::arg("g2") = 0.0, py::arg("kappa") = 0.02)
        .def_readwrite("omega_m", &ModelParams::omega_m)
        .def_readwrite("g1", &ModelParams::g1)
        .def_readwrite("g2", &ModelParams::g2)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def("validate", &ModelParams::validate)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(omega_m=" + format_value(p.omega_m) + ", g1=" + format_value(p.g1) +
                   ", g2=" + format_value(p.g2) + ", kappa=" + format_value(p.kappa) + ")";
        });

    m.def("eigen_energy", &eigen_energy, py::arg("n"), py::arg("m"), py::arg("params"));
    m.def("energy_shift", &energy_shift_C, py::arg("params"));
    m.def("sideband_location", &sideband_location, py::arg("n"), py::arg("m"), py::arg("params"));
    m.def(
        "sub_peak_spacing", [](const ModelParams& p) { return sub_peak_spacing(p).exact; }, py::arg("params"));

    m.def(
        "transition_matrix", [](const ModelParams& p, int n_max) { return transition_matrix(p, n_max).entries(); },
        py::arg("params"), py::arg("n_max") = kDefaultTruncation);

    m.def(
        "sideband_weights",
        [](const ModelParams& p, const std::string& state, int n_max, double min_weight) {
            const auto T = transition_matrix(p, n_max);
            py::list out;
            for (const auto& line : sideband_weights(make_init_state(parse_state_spec(state), n_max, T), p, T, min_weight)) {
                py::dict d;
                d["n"] = line.n;
                d["m"] = line.m;
                d["location"] = line.location;
                d["weight"] = line.weight;
                out.append(d);
            }
            return out;
        },
        py::arg("params"), py::arg("state") = "number:0", py::arg("n_max") = kDefaultTruncation,
        py::arg("min_weight") = 1e-12);

    m.def(
        "emission",
        [](const ModelParams& p, const std::string& state, std::optional<Grid> grid, int n_max) {
            const RunConfig cfg = make_config(Process::Emission, p, state, grid, n_max);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_spectrum(cfg);
            }
            return spectrum_result(r);
        },
        py::arg("params"), py::arg("state") = "number:0", py::arg("grid") = py::none(),
        py::arg("n_max") = kDefaultTruncation);

    m.def(
        "scattering",
        [](const ModelParams& p, const std::string& state, std::optional<double> delta0, double epsilon,
           std::optional<Grid> grid, int n_max) {
            RunConfig cfg = make_config(Process::Scattering, p, state, grid, n_max);
            cfg.delta0 = delta0;
            cfg.epsilon = epsilon;
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_spectrum(cfg);
            }
            return spectrum_result(r);
        },
        py::arg("params"), py::arg("state") = "number:0", py::arg("delta0") = py::none(), py::arg("epsilon") = 2.0,
        py::arg("grid") = py::none(), py::arg("n_max") = kDefaultTruncation);

    m.def(
        "unit_integral",
        [](std::vector<double> deltas, std::vector<double> values, double tolerance) {
            return to_python(to_json(unit_integral_check(external_spectrum(std::move(deltas), std::move(values)), tolerance)));
        },
        py::arg("deltas"), py::arg("values"), py::arg("tolerance") = kUnitIntegralTolerance);

    m.def(
        "analyze",
        [](std::vector<double> deltas, std::vector<double> values, double kappa, double omega_m, double prominence) {
            const auto s = external_spectrum(std::move(deltas), std::move(values));
            return to_python(to_json(analyze_spectrum(s, {omega_m, kappa, prominence})));
        },
        py::arg("deltas"), py::arg("values"), py::kw_only(), py::arg("kappa"), py::arg("omega_m") = 1.0,
        py::arg("prominence") = kDefaultProminence);

    m.def(
        "infer_couplings",
        [](double sub_peak_spacing, double zero_phonon_location, double omega_m) {
            const double g2 = infer_g2(sub_peak_spacing, omega_m).exact;
            const CG1Estimate cg = infer_C_and_g1(zero_phonon_location, g2, omega_m);
            py::dict out;
            out["C"] = cg.C;
            out["g1"] = cg.g1;
            out["g2"] = g2;
            return out;
        },
        py::arg("sub_peak_spacing"), py::arg("zero_phonon_location"), py::arg("omega_m") = 1.0);

    m.def(
        "verify",
        [](bool time_domain) {
            VerifyReport report;
            {
                py::gil_scoped_release release;
                report = run_verification({time_domain});
            }
            return to_python(to_json(report));
        },
        py::arg("time_domain") = false);
}
