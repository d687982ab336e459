#pragma once

#include "circqft/core.hpp"
#include "circqft/schedule.hpp"
#include "circqft/spectral.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace circqft {

struct StepControl {
    double dt_initial = 0.0;  // <= 0 selects t_max / 2000
    double tolerance = 1e-9;  // max-norm change between successive halvings
    std::int64_t max_steps = std::int64_t{1} << 22;
};

struct AdiabaticPhases {
    double alpha2 = 0.0;  // integral of lambda+
    double beta2 = 0.0;   // integral of mu+
};

struct EvolutionResult {
    UnitaryOperator propagator;
    std::optional<StateVector> final_state;
    std::optional<AdiabaticPhases> phases;  // set when closed-form branches exist
    std::int64_t steps = 0;
    double unitarity_defect = 0.0;
    double last_change = 0.0;  // max-norm change at the accepted halving
};

// Product of midpoint exponentials exp(-i H(t_k + dt/2) dt) over n equal steps.
Op4 midpoint_product(const HamiltonianFn& h, double t_max, std::int64_t n);

// Doubles the step count from ceil(t_max / dt_initial) until successive
// propagators agree within control.tolerance. Throws NonConvergenceError
// past control.max_steps.
EvolutionResult propagate(const HamiltonianFn& h, double t_max, const StepControl& control = {});

EvolutionResult propagate(const RampSchedule& s, const StepControl& control = {});
EvolutionResult propagate(const RampSchedule& s, const StateVector& initial,
                          const StepControl& control = {});

struct Trajectory {
    std::vector<double> times;         // samples + 1 points including 0 and t_max
    std::vector<Op4> propagators;      // U(t_k, 0)
    std::int64_t steps = 0;
};

// Converges like propagate, then replays with a step count that is a
// multiple of `samples` and records U at each sample time.
Trajectory propagate_sampled(const HamiltonianFn& h, double t_max, int samples,
                             const StepControl& control = {});
Trajectory propagate_sampled(const RampSchedule& s, int samples, const StepControl& control = {});

// True when adiabatic_phases has closed-form branches for the schedule:
// case1 at any phi, case2 or exponential at phi = pi/4.
bool has_closed_form_phases(const RampSchedule& s);

// Gauss-Kronrod quadrature of the closed-form lambda+ and mu+ branches.
// Throws std::invalid_argument for unsupported schedules and DegeneracyError
// when lambda+ meets mu+ or mu+ meets mu- on the path.
AdiabaticPhases adiabatic_phases(const RampSchedule& s);

}  // namespace circqft
