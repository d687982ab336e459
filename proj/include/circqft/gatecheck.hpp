#pragma once

#include "circqft/core.hpp"
#include "circqft/dynamics.hpp"
#include "circqft/schedule.hpp"

#include <array>

namespace circqft {

// Sign of the circulant phase phi = +-pi/4 the gate is realized at.
enum class GateBranch { plus_quarter, minus_quarter };

struct TargetGate {
    UnitaryOperator matrix;
    GateBranch branch = GateBranch::plus_quarter;
};

// G = 1/2 [[1, -i, 1, 1], [-i, 1, -1, 1], [-1, i, 1, 1], [i, -1, -1, 1]]
// for +pi/4, its complex conjugate for -pi/4.
TargetGate target_gate(GateBranch branch);

struct Transition {
    int input;           // computational basis index
    StateVector output;  // phase-decorated Fourier state
};

// +pi/4: dd -> e^{i a} psi3, du -> -i e^{i b} psi1, ud -> e^{-i b} psi2,
// uu -> e^{-i a} psi0. -pi/4: dd -> e^{i a} psi1, du -> i e^{i b} psi3,
// ud and uu as for +pi/4.
std::array<Transition, 4> transition_map(GateBranch branch, double alpha2, double beta2);

// |tr(G^dagger U)|^2 / 16. The Op4 overload throws SymmetryError when
// `actual` is not unitary within `tol`.
double gate_fidelity(const UnitaryOperator& actual, const TargetGate& target);
double gate_fidelity(const Op4& actual, const TargetGate& target, double tol = 1e-9);

// Phases that undo the adiabatic evolution of the chi- and nu- branches of a
// rabi_controlled schedule: theta = -int E dt + gamma, with gamma the
// parallel-transport phase.
struct EntanglementPhases {
    double alpha = 0.0;  // chi- branch
    double beta = 0.0;   // nu- branch
    double dynamic_chi = 0.0;
    double dynamic_nu = 0.0;
    double geometric_chi = 0.0;
    double geometric_nu = 0.0;
};

EntanglementPhases entanglement_phases(const RampSchedule& s);

// (psi3 + psi2) / sqrt2
StateVector entangled_target();

// 1/2 |<target| (e^{-i alpha} chi_t + e^{-i beta} nu_t)|^2 where chi_t, nu_t
// are the evolved branch states.
double entangled_fidelity(const StateVector& chi_t, const StateVector& nu_t, double alpha,
                          double beta, const StateVector& target);

// Propagates the rabi_controlled schedule and evaluates the fidelity at t_max.
double entangled_fidelity(const RampSchedule& s, double alpha, double beta,
                          const StepControl& control = {});
double entangled_fidelity(const RampSchedule& s, const StepControl& control = {});

}  // namespace circqft
