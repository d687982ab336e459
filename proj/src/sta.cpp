#include "circqft/sta.hpp"

#include "circqft/errors.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace circqft {

namespace {

void require_rabi(const RampSchedule& s, const char* who) {
    if (s.variant() != Variant::rabi_controlled)
        throw std::invalid_argument(std::string(who) + ": needs a rabi_controlled schedule");
}

}  // namespace

cplx h3_block_coupling(int q, double J, double omega2, double phi) {
    return static_cast<double>(q) * J * std::exp(kI * phi) + omega2 * std::exp(-kI * phi);
}

H3Eigenbasis h3_eigenbasis(double J, double omega1, double omega2, double phi) {
    if (J == 0.0 && omega2 == 0.0)
        throw std::invalid_argument("h3_eigenbasis: J and Omega2 both zero");

    H3Eigenbasis out;
    out.xi = std::atan2(omega2, J);
    const double r = 1.0 / std::sqrt(2.0);
    for (int q : {+1, -1}) {
        const cplx z = h3_block_coupling(q, J, omega2, phi);
        const double mag = std::abs(z);
        if (!(mag > 1e-12 * (std::abs(J) + std::abs(omega2))))
            throw DegeneracyError("h3_eigenbasis: sigma1^x = " + std::to_string(q) +
                                  " block is degenerate");
        const cplx rot = std::conj(z) / mag;  // e^{-i theta_q}
        Spinor first;
        first << r, q * r;
        for (int s : {+1, -1}) {
            Spinor second;
            second << r, static_cast<double>(s) * r * rot;
            Branch b;
            if (q > 0) b = s > 0 ? branch::nu_plus : branch::nu_minus;
            else b = s > 0 ? branch::chi_plus : branch::chi_minus;
            out.pairs[index(b)] = {q * omega1 + s * mag, tensor(first, second)};
        }
    }
    return out;
}

H3Eigenbasis h3_eigenbasis(const RampSchedule& s, double t) {
    require_rabi(s, "h3_eigenbasis");
    const Coefficients k = s.coefficients_at(t);
    return h3_eigenbasis(k.params.J, k.params.omega1, k.params.omega2, s.phi());
}

double geometric_phase(const RampSchedule& s, Branch b) {
    require_rabi(s, "geometric_phase");
    const int q = (b == branch::nu_plus || b == branch::nu_minus) ? +1 : -1;
    constexpr int n = 4096;
    const double T = s.t_max();
    auto theta = [&](double t) {
        const Coefficients k = s.coefficients_at(t);
        return std::arg(h3_block_coupling(q, k.params.J, k.params.omega2, s.phi()));
    };
    double prev = theta(0.0);
    double total = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double cur = theta(i == n ? T : T * i / n);
        total += std::remainder(cur - prev, units::two_pi);
        prev = cur;
    }
    return 0.5 * total;
}

double cd_rate(double t, double J0, double V0, double omega) {
    const double t_max = units::pi / (2.0 * omega);
    const double slop = 1e-12 * t_max;
    if (!(t >= -slop && t <= t_max + slop))
        throw std::out_of_range("cd_rate: t outside [0, t_max]");
    const double s = std::sin(omega * t);
    const double s2 = s * s;
    const double shift = V0 * s2 - (J0 + V0);
    const double den = J0 * J0 * s2 * s2 + shift * shift;
    return omega * J0 * (J0 + V0) * std::sin(2.0 * omega * t) / den;
}

double cd_rate(const RampSchedule& s, double t) {
    require_rabi(s, "cd_rate");
    return cd_rate(t, s.J0(), s.V0(), s.rate());
}

HermitianOperator build_hcd(double rate) {
    return HermitianOperator(-rate * tensor(pauli::x(), pauli::projector_down()));
}

HamiltonianFn cd_hamiltonian(const RampSchedule& s, double cd_scale) {
    require_rabi(s, "cd_hamiltonian");
    const Op4 shape = -tensor(pauli::x(), pauli::projector_down());
    return [s, cd_scale, shape](double t) -> Op4 {
        Op4 h = s.matrix_at(t);
        if (cd_scale != 0.0) h += (cd_scale * cd_rate(s, t)) * shape;
        return h;
    };
}

EvolutionResult propagate_with_cd(const RampSchedule& s, const StepControl& control,
                                  double cd_scale) {
    return propagate(cd_hamiltonian(s, cd_scale), s.t_max(), control);
}

std::array<double, 4> transport_infidelity(const RampSchedule& s, const StepControl& control,
                                           double cd_scale) {
    const EvolutionResult r = propagate_with_cd(s, control, cd_scale);
    const H3Eigenbasis start = h3_eigenbasis(s, 0.0);
    const H3Eigenbasis end = h3_eigenbasis(s, s.t_max());
    std::array<double, 4> out{};
    for (Branch b : kBranches) {
        const StateVector fin = r.propagator * start[b].vector;
        out[index(b)] = 1.0 - std::norm(end[b].vector.dot(fin));
    }
    return out;
}

}  // namespace circqft
