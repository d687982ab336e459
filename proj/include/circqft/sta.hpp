#pragma once

#include "circqft/core.hpp"
#include "circqft/dynamics.hpp"
#include "circqft/schedule.hpp"
#include "circqft/spectral.hpp"

#include <array>

namespace circqft {

struct Eigenpair {
    double value = 0.0;
    StateVector vector = StateVector::Zero();
};

// Eigenpairs of the rabi_controlled Hamiltonian, indexed by Branch (use the
// branch::chi_* / branch::nu_* aliases). Each vector is |q1> (x) (|d> +
// s e^{-i theta_q}|u>)/sqrt2 with theta_q = arg z_q and
// z_q = q J e^{i phi} + Omega2 e^{-i phi}; the dd component is real positive.
struct H3Eigenbasis {
    std::array<Eigenpair, 4> pairs;
    double xi = 0.0;  // atan2(Omega2, J)

    const Eigenpair& operator[](Branch b) const { return pairs[index(b)]; }
};

// Off-diagonal element z_q of the spin-2 block with sigma1^x = q.
cplx h3_block_coupling(int q, double J, double omega2, double phi);

// Throws std::invalid_argument when J = Omega2 = 0 and DegeneracyError when
// a block collapses (z_q = 0).
H3Eigenbasis h3_eigenbasis(double J, double omega1, double omega2, double phi);

H3Eigenbasis h3_eigenbasis(const RampSchedule& s, double t);

// Parallel-transport phase of a rabi_controlled branch relative to the
// gauge of h3_eigenbasis: half the change of the unwrapped theta_q.
double geometric_phase(const RampSchedule& s, Branch b);

// -d xi / dt for the rabi_controlled ramp,
// omega J0 (J0 + V0) sin(2 omega t) / (J0^2 sin^4 + (V0 sin^2 - (J0 + V0))^2).
double cd_rate(double t, double J0, double V0, double omega);
double cd_rate(const RampSchedule& s, double t);

// -rate (|d1><u1| + |u1><d1|) (x) |d2><d2|
HermitianOperator build_hcd(double rate);

// H(t) + cd_scale * H_CD(t) for a rabi_controlled schedule.
HamiltonianFn cd_hamiltonian(const RampSchedule& s, double cd_scale = 1.0);

EvolutionResult propagate_with_cd(const RampSchedule& s, const StepControl& control = {},
                                  double cd_scale = 1.0);

// 1 - |<b(t_max)| U |b(0)>|^2 for each branch b, eigenvectors from
// h3_eigenbasis at both ends.
std::array<double, 4> transport_infidelity(const RampSchedule& s, const StepControl& control = {},
                                           double cd_scale = 1.0);

}  // namespace circqft
