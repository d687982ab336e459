#include "circqft/schedule.hpp"

#include "circqft/errors.hpp"
#include "circqft/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace circqft {

std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::case1: return "case1";
    case Variant::case2: return "case2";
    case Variant::rabi_controlled: return "rabi_controlled";
    case Variant::exponential: return "exponential";
    }
    return "unknown";
}

Variant variant_from_string(std::string_view s) {
    if (s == "case1") return Variant::case1;
    if (s == "case2") return Variant::case2;
    if (s == "rabi_controlled") return Variant::rabi_controlled;
    if (s == "exponential") return Variant::exponential;
    throw ConfigError("variant", "unknown schedule variant '" + std::string(s) + "'");
}

RampSchedule RampSchedule::case1(double J0, const DetuningPair& d, double omega, double phi) {
    RampSchedule s;
    s.variant_ = Variant::case1;
    s.J0_ = J0;
    s.detuning_ = d;
    s.rate_ = omega;
    s.phi_ = phi;
    s.validate();
    s.t_max_ = units::pi / (2.0 * omega);
    return s;
}

RampSchedule RampSchedule::case2(double J0, double omega1, const DetuningPair& d, double omega,
                                 double phi) {
    RampSchedule s = case1(J0, d, omega, phi);
    s.variant_ = Variant::case2;
    s.omega1_ = omega1;
    s.validate();
    return s;
}

RampSchedule RampSchedule::rabi_controlled(double J0, double V0, double omega1, double omega,
                                           double phi) {
    RampSchedule s;
    s.variant_ = Variant::rabi_controlled;
    s.J0_ = J0;
    s.V0_ = V0;
    s.omega1_ = omega1;
    s.rate_ = omega;
    s.phi_ = phi;
    s.validate();
    s.t_max_ = units::pi / (2.0 * omega);
    return s;
}

RampSchedule RampSchedule::exponential(double J0, double omega1, const DetuningPair& d,
                                       double gamma, double phi) {
    RampSchedule s;
    s.variant_ = Variant::exponential;
    s.J0_ = J0;
    s.omega1_ = omega1;
    s.detuning_ = d;
    s.rate_ = gamma;
    s.phi_ = phi;
    s.validate();
    s.t_max_ = std::log(exp_cutoff_ratio) / gamma;
    return s;
}

void RampSchedule::validate() const {
    auto require = [](bool ok, const char* field, const char* what) {
        if (!ok) throw ConfigError(field, what);
    };
    require(std::isfinite(rate_) && rate_ > 0.0, "omega", "ramp rate must be positive and finite");
    require(std::isfinite(J0_) && J0_ >= 0.0, "J0", "must be finite and non-negative");
    require(std::isfinite(omega1_) && omega1_ >= 0.0, "Omega1", "must be finite and non-negative");
    require(std::isfinite(V0_) && V0_ >= 0.0, "V0", "must be finite and non-negative");
    require(std::isfinite(detuning_.delta1), "Delta1", "must be finite");
    require(std::isfinite(detuning_.delta2), "Delta2", "must be finite");
    require(std::isfinite(phi_), "phi", "must be finite");
}

RampSchedule RampSchedule::with_detuning(const DetuningPair& d) const {
    if (variant_ == Variant::rabi_controlled)
        throw ConfigError("Delta1", "rabi_controlled schedules carry no detuning");
    RampSchedule s = *this;
    s.detuning_ = d;
    s.validate();
    return s;
}

double RampSchedule::clamp_time(double t) const {
    const double slop = 1e-12 * t_max_;
    if (!(t >= -slop && t <= t_max_ + slop))
        throw std::out_of_range("schedule time " + std::to_string(t) + " ms outside [0, " +
                                std::to_string(t_max_) + "]");
    return std::clamp(t, 0.0, t_max_);
}

Coefficients RampSchedule::coefficients_at(double t) const {
    t = clamp_time(t);
    double on = 0.0;   // rises 0 -> 1
    double off = 0.0;  // falls 1 -> 0
    if (variant_ == Variant::exponential) {
        off = std::exp(-rate_ * t);
        on = -std::expm1(-rate_ * t);
    } else {
        const double s = std::sin(rate_ * t);
        const double c = std::cos(rate_ * t);
        on = s * s;
        off = c * c;
    }

    Coefficients k;
    const double J = J0_ * on;
    switch (variant_) {
    case Variant::case1:
        k.params = GeneralParams(J, 0.0, J, 0.0, phi_, 0.0, phi_);
        k.detuning = {detuning_.delta1 * off, detuning_.delta2 * off};
        break;
    case Variant::case2:
    case Variant::exponential:
        k.params = GeneralParams(J, omega1_ * on, J, 0.0, phi_, 0.0, phi_);
        k.detuning = {detuning_.delta1 * off, detuning_.delta2 * off};
        break;
    case Variant::rabi_controlled:
        k.params = GeneralParams(J, omega1_, J0_ + V0_ * off, 0.0, phi_, 0.0, phi_);
        break;
    }
    return k;
}

Op4 RampSchedule::matrix_at(double t) const {
    const Coefficients k = coefficients_at(t);
    const GeneralParams& p = k.params;
    const cplx j03 = p.J * std::exp(kI * (p.phi1 + p.phi2));
    const cplx j12 = p.J * std::exp(-kI * (p.phi2 - p.phi1));
    const cplx w1 = p.omega1 * std::exp(-kI * p.varphi1);
    const cplx w2 = p.omega2 * std::exp(-kI * p.varphi2);
    const double d1 = k.detuning.delta1;
    const double d2 = k.detuning.delta2;

    Op4 h;
    h(0, 0) = -d1 - d2;
    h(1, 1) = -d1 + d2;
    h(2, 2) = d1 - d2;
    h(3, 3) = d1 + d2;
    h(0, 1) = w2;
    h(0, 2) = w1;
    h(0, 3) = j03;
    h(1, 2) = j12;
    h(1, 3) = w1;
    h(2, 3) = w2;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < r; ++c) h(r, c) = std::conj(h(c, r));
    return h;
}

HermitianOperator RampSchedule::hamiltonian_at(double t) const {
    const Coefficients k = coefficients_at(t);
    return build_general(k.params) + build_detuning(k.detuning);
}

StateVector rotating_basis_state(int q1, int q2, double phi) {
    if ((q1 != 1 && q1 != -1) || (q2 != 1 && q2 != -1))
        throw std::invalid_argument("rotating_basis_state: q must be +1 or -1");
    const double r = 1.0 / std::sqrt(2.0);
    Spinor a, b;
    a << r, q1 * r;
    b << r, static_cast<double>(q2) * r * std::exp(kI * phi);
    return tensor(a, b);
}

}  // namespace circqft
