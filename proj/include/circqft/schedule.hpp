#pragma once

#include "circqft/core.hpp"
#include "circqft/hamiltonian.hpp"

#include <string_view>

namespace circqft {

enum class Variant {
    case1,            // J = J0 sin^2, Delta_k = Delta_k cos^2, Omega1 = 0
    case2,            // as case1 plus Omega1(t) = Omega1 sin^2
    rabi_controlled,  // J = J0 sin^2, Omega2 = J0 + V0 cos^2, Omega1 constant, Delta = 0
    exponential,      // J, Omega1 ~ 1 - e^{-gamma t}, Delta_k ~ e^{-gamma t}
};

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);  // throws ConfigError

struct Coefficients {
    GeneralParams params;
    DetuningPair detuning;
};

// Time-dependent amplitudes of one of the ramp protocols on [0, t_max].
// Frequencies in rad/ms, time in ms.
class RampSchedule {
public:
    // t_max = pi / (2 omega).
    static RampSchedule case1(double J0, const DetuningPair& d, double omega, double phi);
    static RampSchedule case2(double J0, double omega1, const DetuningPair& d, double omega,
                              double phi);
    static RampSchedule rabi_controlled(double J0, double V0, double omega1, double omega,
                                        double phi);

    // t_max = ln(exp_cutoff_ratio) / gamma, so Delta(t_max) / Delta(0) = 1 / ratio.
    static RampSchedule exponential(double J0, double omega1, const DetuningPair& d,
                                    double gamma, double phi);
    static constexpr double exp_cutoff_ratio = 2.0e4;

    Variant variant() const noexcept { return variant_; }
    double J0() const noexcept { return J0_; }
    double omega1() const noexcept { return omega1_; }
    double V0() const noexcept { return V0_; }
    const DetuningPair& detuning() const noexcept { return detuning_; }
    double rate() const noexcept { return rate_; }  // omega, or gamma for the exponential variant
    double phi() const noexcept { return phi_; }
    double t_max() const noexcept { return t_max_; }

    // Same ramp with different detuning amplitudes (not for rabi_controlled).
    RampSchedule with_detuning(const DetuningPair& d) const;

    // Throws std::out_of_range for t outside [0, t_max]; rounding slop of
    // 1e-12 t_max is clamped.
    Coefficients coefficients_at(double t) const;
    HermitianOperator hamiltonian_at(double t) const;

    // Same as hamiltonian_at without range or symmetry checks.
    Op4 matrix_at(double t) const;

    // True when the ramp shapes are sin^2/cos^2 (all variants but exponential).
    bool is_trigonometric() const noexcept { return variant_ != Variant::exponential; }

private:
    RampSchedule() = default;
    void validate() const;
    double clamp_time(double t) const;

    Variant variant_ = Variant::case1;
    double J0_ = 0.0;
    double omega1_ = 0.0;
    double V0_ = 0.0;
    DetuningPair detuning_{};
    double rate_ = 1.0;
    double phi_ = 0.0;
    double t_max_ = 0.0;
};

// |q1> (x) |q2> with |+-_1> = (|d> +- |u>)/sqrt2 and
// |+-_2> = (|d> +- e^{i phi}|u>)/sqrt2; q = +1 or -1.
StateVector rotating_basis_state(int q1, int q2, double phi);

}  // namespace circqft
