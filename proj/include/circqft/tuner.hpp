#pragma once

#include "circqft/dynamics.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/schedule.hpp"

#include <array>

namespace circqft {

// Winding numbers for alpha2 = 2 k pi and beta2 = 2 p pi on a base schedule
// whose detuning amplitudes are free.
struct TuneTarget {
    int k = 0;
    int p = 0;
    RampSchedule base;
    double tolerance = 1e-6;  // rad
    int max_iterations = 50;

    // Throws ConfigError unless k > p > 0 and the base has closed-form phases.
    TuneTarget(int k, int p, RampSchedule base, double tolerance = 1e-6);
};

// (alpha2 - 2 k pi, beta2 - 2 p pi) at detuning amplitudes d.
std::array<double, 2> phase_residual(const DetuningPair& d, const TuneTarget& target);

// Exact solution when J0 = Omega1 = 0: (Delta1 +- Delta2) t_max / 2 = 2 (k, p) pi.
DetuningPair decoupled_guess(const TuneTarget& target);

struct TuneResult {
    DetuningPair detuning;
    AdiabaticPhases phases;
    std::array<double, 2> residual{};
    int iterations = 0;
};

// Projected damped Newton on the residual map, keeping Delta1 > Delta2 > 0.
// Jacobian by central differences with relative step 1e-3. Throws
// NonConvergenceError (with the last residual) on a singular Jacobian or
// when the iteration budget runs out, DegeneracyError for Delta1 = Delta2.
TuneResult tune(const TuneTarget& target, const DetuningPair& guess);
TuneResult tune(const TuneTarget& target);

}  // namespace circqft
