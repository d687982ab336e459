#include "circqft/dynamics.hpp"

#include "circqft/errors.hpp"
#include "circqft/units.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace circqft {

Op4 midpoint_product(const HamiltonianFn& h, double t_max, std::int64_t n) {
    const double dt = t_max / static_cast<double>(n);
    Op4 u = Op4::Identity();
    for (std::int64_t k = 0; k < n; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * dt;
        u = expm_i_trusted(h(t), dt) * u;
    }
    return u;
}

namespace {

std::int64_t initial_steps(double t_max, const StepControl& c) {
    const double dt = c.dt_initial > 0.0 ? c.dt_initial : t_max / 2000.0;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t_max / dt)));
}

}  // namespace

EvolutionResult propagate(const HamiltonianFn& h, double t_max, const StepControl& control) {
    if (!(t_max >= 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("propagate: t_max must be finite and non-negative");
    if (!(control.tolerance > 0.0))
        throw std::invalid_argument("propagate: tolerance must be positive");

    EvolutionResult r;
    if (t_max == 0.0) return r;

    std::int64_t n = initial_steps(t_max, control);
    if (n > control.max_steps)
        throw NonConvergenceError("propagate: initial step count exceeds the ceiling");
    Op4 u = midpoint_product(h, t_max, n);
    double change = std::numeric_limits<double>::infinity();
    while (true) {
        if (2 * n > control.max_steps) {
            std::ostringstream os;
            os << "propagate: no convergence within " << control.max_steps
               << " steps (last change " << change << ", tolerance " << control.tolerance << ")";
            throw NonConvergenceError(os.str());
        }
        n *= 2;
        Op4 next = midpoint_product(h, t_max, n);
        change = max_abs(next - u);
        u = next;
        if (change < control.tolerance) break;
    }
    r.unitarity_defect = unitarity_defect(u);
    r.propagator = UnitaryOperator(u, 1e-9);
    r.steps = n;
    r.last_change = change;
    return r;
}

bool has_closed_form_phases(const RampSchedule& s) {
    const bool quarter = std::abs(s.phi() - units::pi / 4.0) < 1e-12;
    switch (s.variant()) {
    case Variant::case1: return true;
    case Variant::case2:
    case Variant::exponential: return quarter;
    case Variant::rabi_controlled: return false;
    }
    return false;
}

EvolutionResult propagate(const RampSchedule& s, const StepControl& control) {
    EvolutionResult r = propagate([&s](double t) { return s.matrix_at(t); }, s.t_max(), control);
    if (has_closed_form_phases(s)) r.phases = adiabatic_phases(s);
    return r;
}

EvolutionResult propagate(const RampSchedule& s, const StateVector& initial,
                          const StepControl& control) {
    EvolutionResult r = propagate(s, control);
    r.final_state = r.propagator * initial;
    return r;
}

Trajectory propagate_sampled(const HamiltonianFn& h, double t_max, int samples,
                             const StepControl& control) {
    if (samples < 1) throw std::invalid_argument("propagate_sampled: need at least one sample");
    const EvolutionResult conv = propagate(h, t_max, control);
    const std::int64_t per = std::max<std::int64_t>(1, (conv.steps + samples - 1) / samples);
    const std::int64_t n = per * samples;
    const double dt = t_max / static_cast<double>(n);

    Trajectory tr;
    tr.steps = n;
    tr.times.reserve(samples + 1);
    tr.propagators.reserve(samples + 1);
    Op4 u = Op4::Identity();
    tr.times.push_back(0.0);
    tr.propagators.push_back(u);
    for (int k = 0; k < samples; ++k) {
        for (std::int64_t j = 0; j < per; ++j) {
            const double t = (static_cast<double>(k * per + j) + 0.5) * dt;
            u = expm_i_trusted(h(t), dt) * u;
        }
        tr.times.push_back(k + 1 == samples ? t_max : t_max * (k + 1) / samples);
        tr.propagators.push_back(u);
    }
    return tr;
}

Trajectory propagate_sampled(const RampSchedule& s, int samples, const StepControl& control) {
    return propagate_sampled([&s](double t) { return s.matrix_at(t); }, s.t_max(), samples,
                             control);
}

namespace {

SpectrumValues closed_form_at(const RampSchedule& s, double t) {
    const Coefficients k = s.coefficients_at(t);
    if (s.variant() == Variant::case1)
        return analytic_case1(k.params.J, k.detuning.delta1, k.detuning.delta2, s.phi());
    return analytic_case2(k.params.J, k.params.omega1, k.detuning.delta1, k.detuning.delta2);
}

void check_path(const RampSchedule& s) {
    constexpr int n = 2048;
    const double T = s.t_max();
    auto check = [&](double t) {
        const SpectrumValues v = closed_form_at(s, t);
        const double scale = v.lambda_plus;
        if (scale == 0.0) return;
        const char* pair = nullptr;
        if (v.lambda_plus - v.mu_plus <= 1e-9 * scale) pair = "lambda+ and mu+";
        else if (v.mu_plus <= 0.5e-9 * scale) pair = "mu+ and mu-";
        if (pair) {
            std::ostringstream os;
            os.precision(10);
            os << "adiabatic_phases: " << pair << " degenerate at t = " << t << " ms";
            throw DegeneracyError(os.str());
        }
    };
    for (int k = 0; k < n; ++k) check(T * k / n);
    const Coefficients end = s.coefficients_at(T);
    if (end.params.J != 0.0 || end.params.omega1 != 0.0) check(T);
}

}  // namespace

AdiabaticPhases adiabatic_phases(const RampSchedule& s) {
    if (!has_closed_form_phases(s))
        throw std::invalid_argument(
            "adiabatic_phases: closed-form branches need case1, or case2 at phi = pi/4");
    check_path(s);

    using boost::math::quadrature::gauss_kronrod;
    const double T = s.t_max();
    auto lam = [&](double t) { return closed_form_at(s, t).lambda_plus; };
    auto mu = [&](double t) { return closed_form_at(s, t).mu_plus; };
    AdiabaticPhases ph;
    ph.alpha2 = gauss_kronrod<double, 61>::integrate(lam, 0.0, T, 15, 1e-14);
    ph.beta2 = gauss_kronrod<double, 61>::integrate(mu, 0.0, T, 15, 1e-14);
    return ph;
}

}  // namespace circqft
