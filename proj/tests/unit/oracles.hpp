#pragma once

// Reference computations that do not go through the library code under test.

#include "circqft/core.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using circqft::cplx;
using circqft::Op2;
using circqft::Op4;
using circqft::StateVector;

inline const cplx I{0.0, 1.0};

// Kronecker product written out element by element: (a (x) b)(2i+k, 2j+l) = a(i,j) b(k,l).
inline Op4 kron(const Op2& a, const Op2& b) {
    Op4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

inline Op2 sx() { return (Op2() << 0, 1, 1, 0).finished(); }
inline Op2 sz() { return (Op2() << -1, 0, 0, 1).finished(); }  // |down> = index 0
inline Op2 id2() { return Op2::Identity(); }

// sigma^+ e^{i a} + sigma^- e^{-i a} with sigma^+ = |up><down|.
inline Op2 flip(double a) {
    Op2 m = Op2::Zero();
    m(1, 0) = std::exp(I * a);
    m(0, 1) = std::exp(-I * a);
    return m;
}

// J sx (x) flip(-phi) + Omega1 sx (x) 1 + Omega2 1 (x) flip(phi)
inline Op4 rabi_hamiltonian(double J, double omega1, double omega2, double phi) {
    return kron(sx(), flip(-phi)) * J + kron(sx(), id2()) * omega1 + kron(id2(), flip(phi)) * omega2;
}

// Eigenvalues from Eigen's Householder-tridiagonal solver, ascending.
inline std::array<double, 4> eigenvalues(const Op4& h) {
    Eigen::SelfAdjointEigenSolver<Op4> es(h, Eigen::EigenvaluesOnly);
    std::array<double, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = es.eigenvalues()(i);
    return v;
}

// exp(-i h dt) by Eigen's Pade-based matrix exponential.
inline Op4 expm(const Op4& h, double dt) { return Op4((-I * dt * h).exp()); }

inline Op4 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Op4 a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = cplx(n(rng), n(rng));
    return Op4(0.5 * (a + a.adjoint()));
}

inline StateVector random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    StateVector v;
    for (int j = 0; j < 4; ++j) v(j) = cplx(n(rng), n(rng));
    return v / v.norm();
}

inline double max_abs(const Op4& m) { return m.cwiseAbs().maxCoeff(); }

// Relative agreement of two sorted spectra.
inline double spectrum_distance(std::array<double, 4> a, std::array<double, 4> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double scale = 1.0;
    for (double x : b) scale = std::max(scale, std::abs(x));
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d / scale;
}

}  // namespace oracle
