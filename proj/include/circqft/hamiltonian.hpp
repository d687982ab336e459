#pragma once

#include "circqft/core.hpp"

#include <array>

namespace circqft {

// Couplings of the general two-spin Hamiltonian. Magnitudes are kept
// non-negative: a negative J, Omega1 or Omega2 is folded into a pi shift of
// phi1, varphi1 or varphi2 respectively.
struct GeneralParams {
    double J = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double phi1 = 0.0;     // coupling phases
    double phi2 = 0.0;
    double varphi1 = 0.0;  // single-spin drive phases
    double varphi2 = 0.0;

    GeneralParams() = default;

    // Throws std::invalid_argument on non-finite input.
    GeneralParams(double J, double omega1, double omega2, double phi1, double phi2,
                  double varphi1, double varphi2);
};

struct DetuningPair {
    double delta1 = 0.0;
    double delta2 = 0.0;
};

// First column (c0, c1, c2, c3) of a 4x4 circulant; entry (r, c) is
// c[(r - c) mod 4].
class CirculantSpec {
public:
    explicit CirculantSpec(const std::array<cplx, 4>& column) : c_(column) {}

    // Hermitian circulants have c0, c2 real and c3 = conj(c1).
    static CirculantSpec hermitian(double c0, cplx c1, double c2);

    const std::array<cplx, 4>& column() const noexcept { return c_; }
    bool is_hermitian(double tol = 1e-12) const;
    Op4 matrix() const;

    // Throws SymmetryError unless is_hermitian().
    HermitianOperator hermitian_matrix() const;

private:
    std::array<cplx, 4> c_;
};

HermitianOperator build_general(const GeneralParams& p);

// J sigma1^x (sigma2^+ e^{-i phi} + h.c.) + J (sigma2^+ e^{i phi} + h.c.)
HermitianOperator build_case1(double J, double phi);

// build_case1(J, phi) + Omega1 sigma1^x
HermitianOperator build_case2(double J, double omega1, double phi);

// Delta1 sigma1^z + Delta2 sigma2^z
HermitianOperator build_detuning(const DetuningPair& d);

// J sigma1^x (sigma2^+ e^{-i phi} + h.c.) + Omega1 sigma1^x
//   + Omega2 (sigma2^+ e^{i phi} + h.c.)
HermitianOperator build_rabi_controlled(double J, double omega1, double omega2, double phi);

struct CirculantCheck {
    bool circulant = false;
    std::array<cplx, 4> witness{};  // column 0 of the input
    double deviation = 0.0;         // max |h(r,c) - w[(r-c) mod 4]|
};

// Throws std::invalid_argument unless tol > 0.
CirculantCheck is_circulant(const Op4& h, double tol);

// Component j equals i^{j p} / 2.
StateVector fourier_state(int p);

}  // namespace circqft
