#include "circqft/config.hpp"
#include "circqft/core.hpp"
#include "circqft/dynamics.hpp"
#include "circqft/errors.hpp"
#include "circqft/gatecheck.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/iontrap.hpp"
#include "circqft/runner.hpp"
#include "circqft/schedule.hpp"
#include "circqft/spectral.hpp"
#include "circqft/sta.hpp"
#include "circqft/tuner.hpp"
#include "circqft/units.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace circqft;

namespace {

py::dict evolution_dict(const EvolutionResult& r) {
    py::dict d;
    d["propagator"] = r.propagator.matrix();
    d["steps"] = r.steps;
    d["unitarity_defect"] = r.unitarity_defect;
    d["last_change"] = r.last_change;
    if (r.final_state) d["final_state"] = *r.final_state;
    if (r.phases) d["phases"] = py::make_tuple(r.phases->alpha2, r.phases->beta2);
    return d;
}

void bind_core(py::module_& m) {
    m.def("hermitian_check", [](const Op4& h, double tol) { return HermitianOperator(h, tol).matrix(); },
          py::arg("h"), py::arg("tol") = 1e-12,
          "Returns h unchanged or raises SymmetryError when it is not Hermitian.");
    m.def("eigh", [](const Op4& h) {
        const EigenSystem es = eigh(HermitianOperator(h));
        Op4 v;
        for (int p = 0; p < 4; ++p) v.col(p) = es.vectors[p];
        return py::make_tuple(es.values, v);
    }, py::arg("h"), "Ascending eigenvalues and eigenvectors (as columns) of a Hermitian 4x4.");
    m.def("expm_i", [](const Op4& h, double dt) { return expm_i(HermitianOperator(h), dt).matrix(); },
          py::arg("h"), py::arg("dt"), "exp(-i h dt).");
    m.def("unitarity_defect", &unitarity_defect, py::arg("u"));
    m.def("computational_state", &computational_state, py::arg("index"));
    m.def("fourier_state", &fourier_state, py::arg("p"));
}

void bind_hamiltonian(py::module_& m) {
    m.def("build_general", [](double J, double omega1, double omega2, double phi1, double phi2,
                              double varphi1, double varphi2) {
        return build_general(GeneralParams(J, omega1, omega2, phi1, phi2, varphi1, varphi2)).matrix();
    }, py::arg("J"), py::arg("omega1"), py::arg("omega2"), py::arg("phi1"), py::arg("phi2"),
          py::arg("varphi1"), py::arg("varphi2"));
    m.def("build_case1", [](double J, double phi) { return build_case1(J, phi).matrix(); },
          py::arg("J"), py::arg("phi"));
    m.def("build_case2", [](double J, double omega1, double phi) { return build_case2(J, omega1, phi).matrix(); },
          py::arg("J"), py::arg("omega1"), py::arg("phi"));
    m.def("build_rabi_controlled", [](double J, double omega1, double omega2, double phi) {
        return build_rabi_controlled(J, omega1, omega2, phi).matrix();
    }, py::arg("J"), py::arg("omega1"), py::arg("omega2"), py::arg("phi"));
    m.def("is_circulant", [](const Op4& h, double tol) {
        const CirculantCheck c = is_circulant(h, tol);
        return py::make_tuple(c.circulant, c.deviation);
    }, py::arg("h"), py::arg("tol") = 1e-12);
}

void bind_schedule(py::module_& m) {
    py::class_<RampSchedule>(m, "RampSchedule")
        .def_static("case1", [](double J0, double d1, double d2, double omega, double phi) {
            return RampSchedule::case1(J0, {d1, d2}, omega, phi);
        }, py::arg("J0"), py::arg("delta1"), py::arg("delta2"), py::arg("omega"), py::arg("phi"))
        .def_static("case2", [](double J0, double omega1, double d1, double d2, double omega, double phi) {
            return RampSchedule::case2(J0, omega1, {d1, d2}, omega, phi);
        }, py::arg("J0"), py::arg("omega1"), py::arg("delta1"), py::arg("delta2"), py::arg("omega"),
           py::arg("phi"))
        .def_static("rabi_controlled", &RampSchedule::rabi_controlled, py::arg("J0"), py::arg("V0"),
                    py::arg("omega1"), py::arg("omega"), py::arg("phi"))
        .def_static("exponential", [](double J0, double omega1, double d1, double d2, double gamma, double phi) {
            return RampSchedule::exponential(J0, omega1, {d1, d2}, gamma, phi);
        }, py::arg("J0"), py::arg("omega1"), py::arg("delta1"), py::arg("delta2"), py::arg("gamma"),
           py::arg("phi"))
        .def_property_readonly("variant", [](const RampSchedule& s) { return std::string(to_string(s.variant())); })
        .def_property_readonly("t_max", &RampSchedule::t_max)
        .def_property_readonly("phi", &RampSchedule::phi)
        .def("with_detuning", [](const RampSchedule& s, double d1, double d2) {
            return s.with_detuning({d1, d2});
        }, py::arg("delta1"), py::arg("delta2"))
        .def("hamiltonian", [](const RampSchedule& s, double t) { return s.hamiltonian_at(t).matrix(); },
             py::arg("t"));
}

void bind_dynamics(py::module_& m) {
    m.def("propagate", [](const RampSchedule& s, double tolerance, std::optional<StateVector> initial) {
        StepControl c;
        c.tolerance = tolerance;
        return evolution_dict(initial ? propagate(s, *initial, c) : propagate(s, c));
    }, py::arg("schedule"), py::arg("tolerance") = 1e-9, py::arg("initial") = py::none(),
          "Converged propagator over [0, t_max] as a dict.");
    m.def("adiabatic_phases", [](const RampSchedule& s) {
        const AdiabaticPhases p = adiabatic_phases(s);
        return py::make_tuple(p.alpha2, p.beta2);
    }, py::arg("schedule"));
    m.def("analytic_case1", [](double J, double d1, double d2, double phi) {
        const SpectrumValues v = analytic_case1(J, d1, d2, phi);
        return py::make_tuple(v.lambda_plus, v.lambda_minus, v.mu_plus, v.mu_minus);
    }, py::arg("J"), py::arg("delta1"), py::arg("delta2"), py::arg("phi"));
    m.def("analytic_case2", [](double J, double omega1, double d1, double d2) {
        const SpectrumValues v = analytic_case2(J, omega1, d1, d2);
        return py::make_tuple(v.lambda_plus, v.lambda_minus, v.mu_plus, v.mu_minus);
    }, py::arg("J"), py::arg("omega1"), py::arg("delta1"), py::arg("delta2"));
}

void bind_gates(py::module_& m) {
    m.def("target_gate", [](int sign) {
        return target_gate(sign >= 0 ? GateBranch::plus_quarter : GateBranch::minus_quarter).matrix.matrix();
    }, py::arg("sign") = 1, "Fourier gate at phi = +pi/4 (sign >= 0) or -pi/4.");
    m.def("gate_fidelity", [](const Op4& u, int sign, double unitarity_tol) {
        return gate_fidelity(u, target_gate(sign >= 0 ? GateBranch::plus_quarter : GateBranch::minus_quarter),
                             unitarity_tol);
    }, py::arg("u"), py::arg("sign") = 1, py::arg("unitarity_tol") = 1e-9,
          "|tr(G^dagger U)|^2 / 16; raises SymmetryError when u is not unitary within unitarity_tol.");
    m.def("entangled_fidelity", [](const RampSchedule& s, double tolerance) {
        StepControl c;
        c.tolerance = tolerance;
        return entangled_fidelity(s, c);
    }, py::arg("schedule"), py::arg("tolerance") = 1e-9);
    m.def("cd_rate", py::overload_cast<const RampSchedule&, double>(&cd_rate), py::arg("schedule"), py::arg("t"));
    m.def("transport_infidelity", [](const RampSchedule& s, double cd_scale, double tolerance) {
        StepControl c;
        c.tolerance = tolerance;
        return transport_infidelity(s, c, cd_scale);
    }, py::arg("schedule"), py::arg("cd_scale") = 1.0, py::arg("tolerance") = 1e-9);
    m.def("tune", [](int k, int p, const RampSchedule& base, double tolerance) {
        const TuneResult r = tune(TuneTarget(k, p, base, tolerance));
        py::dict d;
        d["delta1"] = r.detuning.delta1;
        d["delta2"] = r.detuning.delta2;
        d["alpha2"] = r.phases.alpha2;
        d["beta2"] = r.phases.beta2;
        d["residual"] = r.residual;
        d["iterations"] = r.iterations;
        return d;
    }, py::arg("k"), py::arg("p"), py::arg("base"), py::arg("tolerance") = 1e-6);
}

void bind_ions(py::module_& m) {
    auto ions = m.def_submodule("ions", "Linear ion chain modes and effective coupling");
    ions.def("equilibrium_positions", &ions::equilibrium_positions, py::arg("N"));
    ions.def("transverse_modes", [](const std::vector<double>& u, double wx, double wz) {
        const ions::TransverseModes t = ions::transverse_modes(u, wx, wz);
        return py::make_tuple(t.frequencies, t.vectors);
    }, py::arg("u"), py::arg("omega_x"), py::arg("omega_z"));
    ions.def("effective_J", [](int N, double wx, double wz, double mass, double k_laser, double rabi,
                               double beatnote, int ion_k, int ion_m) {
        const ions::IonChain chain = ions::make_chain(N, wx, wz, mass, k_laser);
        const ions::Coupling c = ions::effective_J(chain, {rabi, beatnote, ion_k, ion_m});
        return py::make_tuple(c.J, c.per_mode);
    }, py::arg("N"), py::arg("omega_x"), py::arg("omega_z"), py::arg("mass"), py::arg("k_laser"),
          py::arg("rabi"), py::arg("beatnote"), py::arg("ion_k") = 0, py::arg("ion_m") = 1);
}

void bind_config(py::module_& m) {
    m.def("figure_ids", &figure_ids);
    m.def("figure_config_ini", [](const std::string& id) {
        std::vector<std::string> out;
        for (const ScenarioConfig& c : figure_configs(id)) out.push_back(to_ini(c));
        return out;
    }, py::arg("id"), "INI text of the configs embedded for a figure.");
    m.def("normalize_config", [](const std::string& text) {
        std::istringstream in(text);
        return to_ini(parse_config(in));
    }, py::arg("text"), "Parses and re-serializes a scenario INI text; raises ConfigError.");
    m.def("run_figure", [](const std::string& id, const std::string& out_dir) {
        RunOptions opt;
        opt.out_dir = out_dir;
        return run_figure(id, opt).files;
    }, py::arg("id"), py::arg("out_dir") = ".");
}

}  // namespace

PYBIND11_MODULE(_circqft, m) {
    m.doc() = "Circulant two-qubit Fourier-gate simulator";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SymmetryError>(m, "SymmetryError", base.ptr());
    py::register_exception<DegeneracyError>(m, "DegeneracyError", base.ptr());
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
    py::register_exception<InstabilityError>(m, "InstabilityError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    m.def("from_khz", &units::from_khz, py::arg("f_khz"));
    m.def("to_khz", &units::to_khz, py::arg("omega"));

    bind_core(m);
    bind_hamiltonian(m);
    bind_schedule(m);
    bind_dynamics(m);
    bind_gates(m);
    bind_ions(m);
    bind_config(m);
}
