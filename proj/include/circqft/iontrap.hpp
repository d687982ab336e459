#pragma once

#include <Eigen/Dense>

#include <vector>

// Linear Paul-trap chain: transverse phonons and the effective spin-spin
// coupling they mediate. Frequencies in rad/ms, SI for mass and length.
namespace circqft::ions {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double epsilon0 = 8.8541878128e-12;     // F/m
inline constexpr double atomic_mass = 1.66053906660e-27;  // kg
}  // namespace constants

// Positions in units of (e^2 / (4 pi eps0 M omega_z^2))^{1/3}, ascending,
// centred on 0. Throws std::invalid_argument unless 2 <= N <= 20.
std::vector<double> equilibrium_positions(int N);

// u_m - sum_{n<m} (u_m - u_n)^-2 + sum_{n>m} (u_m - u_n)^-2 for each ion.
std::vector<double> residual_forces(const std::vector<double>& u);

struct TransverseModes {
    std::vector<double> frequencies;  // descending, rad/ms
    Eigen::MatrixXd vectors;          // b(k, n): ion k, mode n
};

// Throws InstabilityError when an eigenvalue of the transverse Hessian is
// not positive (zig-zag threshold crossed).
TransverseModes transverse_modes(const std::vector<double>& u, double omega_x, double omega_z);

struct IonChain {
    int N = 0;
    double omega_x = 0.0;  // radial, rad/ms
    double omega_z = 0.0;  // axial, rad/ms
    double mass = 0.0;     // kg
    double k_laser = 0.0;  // effective wavenumber, 1/m
    std::vector<double> equilibrium;
    TransverseModes modes;

    // Axial length scale in metres.
    double length_scale() const;
};

IonChain make_chain(int N, double omega_x, double omega_z, double mass, double k_laser);

// b k sqrt(hbar / (2 M omega_n)), omega_n in rad/ms.
double lamb_dicke(double b, double k_laser, double mass, double omega_n);
double lamb_dicke(const IonChain& chain, int ion, int mode);

struct DriveParams {
    double rabi = 0.0;      // Omega_x, rad/ms
    double beatnote = 0.0;  // mu, rad/ms
    int ion_k = 0;
    int ion_m = 1;
};

struct Coupling {
    double J = 0.0;               // rad/ms
    std::vector<double> per_mode;  // contribution of each mode, same order as chain.modes
};

// J = sum_n g_{k,n} g_{m,n} omega_n / (mu^2 - omega_n^2) with g = eta Omega_x.
// Throws ConfigError for bad ion indices and InstabilityError when mu lies
// within 1e-9 (relative) of a mode.
Coupling effective_J(const IonChain& chain, const DriveParams& drive);

// min over modes of |omega_n - mu| / max(|g_{k,n}|, |g_{m,n}|); +inf when
// every g vanishes.
double dispersive_margin(const IonChain& chain, const DriveParams& drive);

// Omega_x that yields the requested J (J scales as Omega_x^2). Throws
// ConfigError when the sign of J at this beatnote cannot reach the target.
double rabi_for_coupling(const IonChain& chain, DriveParams drive, double target_J);

}  // namespace circqft::ions
