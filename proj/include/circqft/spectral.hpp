#pragma once

#include "circqft/core.hpp"
#include "circqft/schedule.hpp"

#include <array>
#include <functional>
#include <string_view>
#include <vector>

namespace circqft {

// Eigen-branches named by their initial-time identity. For the detuned
// protocols lambda+- start on +-(Delta1 + Delta2) and mu+- on
// +-(Delta1 - Delta2). The rabi_controlled protocol reuses the same four
// slots under its own names (see the aliases below).
enum class Branch { lambda_plus = 0, lambda_minus = 1, mu_plus = 2, mu_minus = 3 };

inline constexpr std::array<Branch, 4> kBranches{Branch::lambda_plus, Branch::lambda_minus,
                                                 Branch::mu_plus, Branch::mu_minus};

namespace branch {
// rabi_controlled names: chi on the sigma1^x = -1 block, nu on +1.
inline constexpr Branch nu_plus = Branch::lambda_plus;    // |+1 +2>
inline constexpr Branch chi_minus = Branch::lambda_minus;  // |-1 -2>
inline constexpr Branch nu_minus = Branch::mu_plus;        // |+1 -2>
inline constexpr Branch chi_plus = Branch::mu_minus;       // |-1 +2>
}  // namespace branch

inline constexpr int index(Branch b) { return static_cast<int>(b); }

std::string_view to_string(Branch b);

// Fourier mode reached by a branch at the circulant endpoint:
// lambda+ -> psi0, mu- -> psi1, mu+ -> psi2, lambda- -> psi3.
int fourier_index(Branch b);

// Computational (or rotating, for rabi_controlled) state that starts the branch.
StateVector initial_state(const RampSchedule& s, Branch b);

struct SpectrumValues {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double mu_plus = 0.0;
    double mu_minus = 0.0;

    double operator[](Branch b) const;
    std::array<double, 4> sorted() const;
};

// Closed forms +-sqrt(a +- 2r) for case 1 (any phi) with detunings.
SpectrumValues analytic_case1(double J, double delta1, double delta2, double phi);

// Closed forms for case 2 with detunings; valid at phi = pi/4 only.
SpectrumValues analytic_case2(double J, double omega1, double delta1, double delta2);

struct LabeledValue {
    Branch branch;
    double value;
    int fourier;  // index p of the eigenvector psi_p
};

// Circulant endpoint of case 2: lambda+ = Omega1 + 2J cos phi on psi0,
// lambda- = -Omega1 - 2J sin phi on psi3, mu+ = Omega1 - 2J cos phi on psi2,
// mu- = -Omega1 + 2J sin phi on psi1. Throws DegeneracyError naming the
// colliding pair when two values agree within 1e-9 of the largest.
std::array<LabeledValue, 4> final_case2(double J, double omega1, double phi);

struct Spectrum {
    SpectrumValues values;
    std::array<StateVector, 4> vectors;  // indexed by Branch
};

struct SpectralPath {
    std::vector<double> times;
    std::vector<Spectrum> spectra;
    std::vector<double> gaps;  // min pairwise separation at each time
    // couplings[k](a, b) = |<v_a(t_k)| (v_b(t_{k+1}) - v_b(t_k)) / dt>| for a != b,
    // one entry per grid interval.
    std::vector<Eigen::Matrix4d> couplings;
};

using HamiltonianFn = std::function<Op4(double)>;

// Follows the eigenbranches seeded by `initial` (indexed by Branch) along
// the grid. Throws DegeneracyError when eigenvalues come within 1e-9 |H| or
// when overlap matching is ambiguous (top overlaps within 1e-6).
SpectralPath track(const HamiltonianFn& h, const std::vector<double>& grid,
                   const std::array<StateVector, 4>& initial);

SpectralPath track(const RampSchedule& s, const std::vector<double>& grid);

// Uniform grid of n + 1 points over [0, t_max].
std::vector<double> uniform_grid(double t_max, int n);

// min over times and pairs of |E_a - E_b| / coupling(a, b); +inf when all
// couplings vanish.
double adiabaticity_margin(const SpectralPath& path);

}  // namespace circqft
