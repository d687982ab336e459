#include "circqft/gatecheck.hpp"

#include "circqft/errors.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/spectral.hpp"
#include "circqft/sta.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace circqft {

TargetGate target_gate(GateBranch branch) {
    Op4 g;
    g << 1.0, -kI, 1.0, 1.0,
         -kI, 1.0, -1.0, 1.0,
         -1.0, kI, 1.0, 1.0,
         kI, -1.0, -1.0, 1.0;
    g *= 0.5;
    if (branch == GateBranch::minus_quarter) g = g.conjugate().eval();
    return {UnitaryOperator(g, 1e-14), branch};
}

std::array<Transition, 4> transition_map(GateBranch branch, double alpha2, double beta2) {
    const cplx ea = std::exp(kI * alpha2);
    const cplx eb = std::exp(kI * beta2);
    std::array<Transition, 4> out;
    if (branch == GateBranch::plus_quarter) {
        out[0] = {basis::dd, ea * fourier_state(3)};
        out[1] = {basis::du, -kI * eb * fourier_state(1)};
    } else {
        out[0] = {basis::dd, ea * fourier_state(1)};
        out[1] = {basis::du, kI * eb * fourier_state(3)};
    }
    out[2] = {basis::ud, std::conj(eb) * fourier_state(2)};
    out[3] = {basis::uu, std::conj(ea) * fourier_state(0)};
    return out;
}

double gate_fidelity(const UnitaryOperator& actual, const TargetGate& target) {
    const cplx tr = (target.matrix.matrix().adjoint() * actual.matrix()).trace();
    return std::norm(tr) / 16.0;
}

double gate_fidelity(const Op4& actual, const TargetGate& target, double tol) {
    return gate_fidelity(UnitaryOperator(actual, tol), target);
}

EntanglementPhases entanglement_phases(const RampSchedule& s) {
    if (s.variant() != Variant::rabi_controlled)
        throw std::invalid_argument("entanglement_phases: needs a rabi_controlled schedule");

    // Both closed-form branches must stay clear of their block partner.
    constexpr int n = 2048;
    for (int k = 0; k <= n; ++k) h3_eigenbasis(s, s.t_max() * k / n);

    using boost::math::quadrature::gauss_kronrod;
    auto energy = [&](Branch b) {
        return [&s, b](double t) { return h3_eigenbasis(s, t)[b].value; };
    };
    EntanglementPhases ph;
    ph.dynamic_chi =
        gauss_kronrod<double, 61>::integrate(energy(branch::chi_minus), 0.0, s.t_max(), 15, 1e-14);
    ph.dynamic_nu =
        gauss_kronrod<double, 61>::integrate(energy(branch::nu_minus), 0.0, s.t_max(), 15, 1e-14);
    ph.geometric_chi = geometric_phase(s, branch::chi_minus);
    ph.geometric_nu = geometric_phase(s, branch::nu_minus);
    ph.alpha = -ph.dynamic_chi + ph.geometric_chi;
    ph.beta = -ph.dynamic_nu + ph.geometric_nu;
    return ph;
}

StateVector entangled_target() {
    return (fourier_state(3) + fourier_state(2)) / std::sqrt(2.0);
}

double entangled_fidelity(const StateVector& chi_t, const StateVector& nu_t, double alpha,
                          double beta, const StateVector& target) {
    const StateVector sum = std::exp(-kI * alpha) * chi_t + std::exp(-kI * beta) * nu_t;
    return 0.5 * std::norm(target.dot(sum));
}

double entangled_fidelity(const RampSchedule& s, double alpha, double beta,
                          const StepControl& control) {
    if (s.variant() != Variant::rabi_controlled)
        throw std::invalid_argument("entangled_fidelity: needs a rabi_controlled schedule");
    const EvolutionResult r = propagate(s, control);
    const StateVector chi = r.propagator * initial_state(s, branch::chi_minus);
    const StateVector nu = r.propagator * initial_state(s, branch::nu_minus);
    return entangled_fidelity(chi, nu, alpha, beta, entangled_target());
}

double entangled_fidelity(const RampSchedule& s, const StepControl& control) {
    const EntanglementPhases ph = entanglement_phases(s);
    return entangled_fidelity(s, ph.alpha, ph.beta, control);
}

}  // namespace circqft
