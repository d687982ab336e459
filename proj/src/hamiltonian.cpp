#include "circqft/hamiltonian.hpp"

#include "circqft/errors.hpp"
#include "circqft/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace circqft {

namespace {

void fold_sign(double& magnitude, double& phase) {
    if (magnitude < 0.0) {
        magnitude = -magnitude;
        phase += units::pi;
    }
}

// sigma^+ e^{i a} + sigma^- e^{-i a}
Op2 phased_flip(double a) {
    return pauli::raising() * std::exp(kI * a) + pauli::lowering() * std::exp(-kI * a);
}

}  // namespace

GeneralParams::GeneralParams(double J_, double omega1_, double omega2_, double phi1_,
                             double phi2_, double varphi1_, double varphi2_)
    : J(J_), omega1(omega1_), omega2(omega2_), phi1(phi1_), phi2(phi2_), varphi1(varphi1_),
      varphi2(varphi2_) {
    for (double v : {J, omega1, omega2, phi1, phi2, varphi1, varphi2})
        if (!std::isfinite(v)) throw std::invalid_argument("GeneralParams: non-finite value");
    fold_sign(J, phi1);
    fold_sign(omega1, varphi1);
    fold_sign(omega2, varphi2);
}

CirculantSpec CirculantSpec::hermitian(double c0, cplx c1, double c2) {
    return CirculantSpec({cplx(c0), c1, cplx(c2), std::conj(c1)});
}

bool CirculantSpec::is_hermitian(double tol) const {
    return std::abs(c_[0].imag()) <= tol && std::abs(c_[2].imag()) <= tol &&
           std::abs(c_[3] - std::conj(c_[1])) <= tol;
}

Op4 CirculantSpec::matrix() const {
    Op4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = c_[(r - c + 4) % 4];
    return m;
}

HermitianOperator CirculantSpec::hermitian_matrix() const {
    if (!is_hermitian()) throw SymmetryError("circulant column does not define a Hermitian matrix");
    return HermitianOperator(matrix());
}

HermitianOperator build_general(const GeneralParams& p) {
    const cplx j03 = p.J * std::exp(kI * (p.phi1 + p.phi2));
    const cplx j12 = p.J * std::exp(-kI * (p.phi2 - p.phi1));
    const cplx w1 = p.omega1 * std::exp(-kI * p.varphi1);
    const cplx w2 = p.omega2 * std::exp(-kI * p.varphi2);

    Op4 h = Op4::Zero();
    h(0, 1) = w2;
    h(0, 2) = w1;
    h(0, 3) = j03;
    h(1, 2) = j12;
    h(1, 3) = w1;
    h(2, 3) = w2;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < r; ++c) h(r, c) = std::conj(h(c, r));
    return HermitianOperator(h);
}

HermitianOperator build_case1(double J, double phi) {
    return build_rabi_controlled(J, 0.0, J, phi);
}

HermitianOperator build_case2(double J, double omega1, double phi) {
    return build_rabi_controlled(J, omega1, J, phi);
}

HermitianOperator build_detuning(const DetuningPair& d) {
    const Op4 h = d.delta1 * tensor(pauli::z(), pauli::identity()) +
                  d.delta2 * tensor(pauli::identity(), pauli::z());
    return HermitianOperator(h);
}

HermitianOperator build_rabi_controlled(double J, double omega1, double omega2, double phi) {
    const Op4 h = J * tensor(pauli::x(), phased_flip(-phi)) +
                  omega1 * tensor(pauli::x(), pauli::identity()) +
                  omega2 * tensor(pauli::identity(), phased_flip(phi));
    return HermitianOperator(h);
}

CirculantCheck is_circulant(const Op4& h, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_circulant: tol must be positive");
    CirculantCheck out;
    for (int r = 0; r < 4; ++r) out.witness[r] = h(r, 0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out.deviation = std::max(out.deviation, std::abs(h(r, c) - out.witness[(r - c + 4) % 4]));
    out.circulant = out.deviation <= tol;
    return out;
}

StateVector fourier_state(int p) {
    if (p < 0 || p > 3) throw std::out_of_range("fourier_state: p must be in 0..3");
    static constexpr std::array<cplx, 4> powers{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    StateVector v;
    for (int j = 0; j < 4; ++j) v(j) = 0.5 * powers[(j * p) % 4];
    return v;
}

}  // namespace circqft
