#include "circqft/tuner.hpp"

#include "circqft/errors.hpp"
#include "circqft/units.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace circqft {

TuneTarget::TuneTarget(int k_, int p_, RampSchedule base_, double tolerance_)
    : k(k_), p(p_), base(std::move(base_)), tolerance(tolerance_) {
    if (!(k > p && p > 0)) throw ConfigError("k", "winding numbers require k > p > 0");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
    if (!has_closed_form_phases(base))
        throw ConfigError("variant", "tuning needs case1, or case2 at phi = pi/4");
}

std::array<double, 2> phase_residual(const DetuningPair& d, const TuneTarget& target) {
    const AdiabaticPhases ph = adiabatic_phases(target.base.with_detuning(d));
    return {ph.alpha2 - 2.0 * target.k * units::pi, ph.beta2 - 2.0 * target.p * units::pi};
}

DetuningPair decoupled_guess(const TuneTarget& target) {
    const double T = target.base.t_max();
    const double sum = 4.0 * target.k * units::pi / T;
    const double diff = 4.0 * target.p * units::pi / T;
    return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

namespace {

using Vec2 = Eigen::Vector2d;

Vec2 residual_at(const Vec2& x, const TuneTarget& t) {
    const auto r = phase_residual({x(0), x(1)}, t);
    return {r[0], r[1]};
}

// Keeps Delta1 > Delta2 > 0; `from` already satisfies it.
Vec2 project(const Vec2& x, const Vec2& from) {
    Vec2 y = x;
    if (y(1) <= 0.0) y(1) = 0.5 * from(1);
    if (y(0) <= y(1)) y(0) = y(1) + 0.5 * (from(0) - from(1));
    return y;
}

[[noreturn]] void fail(const std::string& why, const Vec2& r) {
    std::ostringstream os;
    os.precision(6);
    os << "tune: " << why << " (last residual alpha " << r(0) << " rad, beta " << r(1) << " rad)";
    throw NonConvergenceError(os.str());
}

}  // namespace

TuneResult tune(const TuneTarget& target, const DetuningPair& guess) {
    if (!(guess.delta1 > 0.0 && guess.delta2 > 0.0))
        throw ConfigError("Delta2", "initial guess must be positive");
    if (guess.delta1 == guess.delta2)
        throw DegeneracyError("tune: initial guess has Delta1 = Delta2");

    Vec2 x(guess.delta1, guess.delta2);
    if (x(0) < x(1)) std::swap(x(0), x(1));
    Vec2 r = residual_at(x, target);

    int it = 0;
    for (; it < target.max_iterations && r.cwiseAbs().maxCoeff() >= target.tolerance; ++it) {
        Eigen::Matrix2d jac;
        for (int i = 0; i < 2; ++i) {
            const double h = 1e-3 * x(i);
            Vec2 xp = x, xm = x;
            xp(i) += h;
            xm(i) -= h;
            jac.col(i) = (residual_at(xp, target) - residual_at(xm, target)) / (2.0 * h);
        }
        const double det = jac.determinant();
        if (!(std::abs(det) > 1e-12 * jac.squaredNorm()))
            fail("singular Jacobian, try different (k, p)", r);

        const Vec2 step = -jac.partialPivLu().solve(r);
        double lambda = 1.0;
        bool accepted = false;
        for (int back = 0; back < 40; ++back, lambda *= 0.5) {
            const Vec2 trial = project(x + lambda * step, x);
            Vec2 rt;
            try {
                rt = residual_at(trial, target);
            } catch (const DegeneracyError&) {
                continue;
            }
            if (rt.norm() < r.norm()) {
                x = trial;
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) fail("line search stalled", r);
    }
    if (r.cwiseAbs().maxCoeff() >= target.tolerance)
        fail("iteration limit of " + std::to_string(target.max_iterations) + " reached", r);

    TuneResult out;
    out.detuning = {x(0), x(1)};
    out.phases = adiabatic_phases(target.base.with_detuning(out.detuning));
    out.residual = {r(0), r(1)};
    out.iterations = it;
    return out;
}

TuneResult tune(const TuneTarget& target) { return tune(target, decoupled_guess(target)); }

}  // namespace circqft
