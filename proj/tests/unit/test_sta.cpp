#include "circqft/dynamics.hpp"
#include "circqft/errors.hpp"
#include "circqft/schedule.hpp"
#include "circqft/sta.hpp"
#include "circqft/units.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace circqft;
using units::from_khz;
using units::pi;

namespace {

RampSchedule fig6(double omega_khz, double J0_khz, double phi = pi / 4) {
    return RampSchedule::rabi_controlled(from_khz(J0_khz), from_khz(0.5), from_khz(80), from_khz(omega_khz), phi);
}

StepControl tolerance(double tol) {
    StepControl c;
    c.tolerance = tol;
    return c;
}

double worst(const std::array<double, 4>& v) {
    double w = 0.0;
    for (double x : v) w = std::max(w, std::abs(x));
    return w;
}

// atan2(J, Omega2) along the ramp, from the schedule coefficients.
double mixing_angle(const RampSchedule& s, double t) {
    const Coefficients c = s.coefficients_at(t);
    return std::atan2(c.params.J, c.params.omega2);
}

}  // namespace

TEST_SUITE("sta") {

TEST_CASE("block coupling") {
    const double J = 1.5, w2 = 0.4, phi = 0.3;
    CHECK(std::abs(h3_block_coupling(+1, J, w2, phi) - (J * std::exp(oracle::I * phi) + w2 * std::exp(-oracle::I * phi))) <
          1e-15);
    CHECK(std::abs(h3_block_coupling(-1, J, w2, phi) - (-J * std::exp(oracle::I * phi) + w2 * std::exp(-oracle::I * phi))) <
          1e-15);
    // At phi = pi/4 both blocks have magnitude sqrt(J^2 + Omega2^2).
    CHECK(std::abs(h3_block_coupling(-1, J, w2, pi / 4)) == doctest::Approx(std::hypot(J, w2)));
    CHECK(std::abs(h3_block_coupling(+1, J, w2, pi / 4)) == doctest::Approx(std::hypot(J, w2)));
}

TEST_CASE("h3 eigenbasis diagonalizes the Hamiltonian over seeded draws") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> amp(0.01, 100.0), angle(-3.0, 3.0);
    for (int draw = 0; draw < 500; ++draw) {
        const double J = amp(rng), w1 = amp(rng), w2 = amp(rng), phi = angle(rng);
        const Op4 h = oracle::rabi_hamiltonian(J, w1, w2, phi);
        const double scale = J + w1 + w2;
        H3Eigenbasis es;
        try {
            es = h3_eigenbasis(J, w1, w2, phi);
        } catch (const DegeneracyError&) {
            continue;
        }
        CHECK(es.xi == doctest::Approx(std::atan2(w2, J)));
        std::array<double, 4> values{};
        for (Branch b : kBranches) {
            const Eigenpair& e = es[b];
            values[index(b)] = e.value;
            CHECK((h * e.vector - e.value * e.vector).norm() < 1e-12 * scale);
            CHECK(std::abs(e.vector(0).imag()) < 1e-15);
            CHECK(e.vector(0).real() > 0.0);
        }
        CHECK(oracle::spectrum_distance(values, oracle::eigenvalues(h)) < 1e-12);
        for (Branch a : kBranches)
            for (Branch b : kBranches)
                CHECK(std::abs(es[a].vector.dot(es[b].vector) - (a == b ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("h3 eigenbasis errors") {
    CHECK_THROWS_AS(h3_eigenbasis(0.0, 1.0, 0.0, pi / 4), std::invalid_argument);
    CHECK_THROWS_AS(h3_eigenbasis(1.0, 1.0, 1.0, 0.0), DegeneracyError);  // z_- = 0
    CHECK_THROWS_AS(h3_eigenbasis(RampSchedule::case2(1, 1, {2, 1}, 1, pi / 4), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cd_rate(RampSchedule::case2(1, 1, {2, 1}, 1, pi / 4), 0.0), std::invalid_argument);
}

TEST_CASE("cd rate") {
    const RampSchedule s = fig6(2.5, 2.0);
    SUBCASE("vanishes at both ends") {
        CHECK(cd_rate(s, 0.0) == 0.0);
        CHECK(std::abs(cd_rate(s, s.t_max())) < 1e-12 * s.rate());
    }
    SUBCASE("is the rate of change of the mixing angle") {
        for (int k = 1; k < 20; ++k) {
            const double t = s.t_max() * k / 20.0;
            const double h = 1e-5 * s.t_max();
            const double fd = (mixing_angle(s, t + h) - mixing_angle(s, t - h)) / (2 * h);
            CHECK(cd_rate(s, t) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
    SUBCASE("overloads agree and reject times outside the ramp") {
        CHECK(cd_rate(s, 0.03) == cd_rate(0.03, s.J0(), s.V0(), s.rate()));
        CHECK_THROWS_AS(cd_rate(s, -0.01), std::out_of_range);
        CHECK_THROWS_AS(cd_rate(s, s.t_max() * 1.1), std::out_of_range);
    }
}

TEST_CASE("counter-diabatic term") {
    const Op2 down = (Op2() << 1, 0, 0, 0).finished();
    CHECK(max_abs(build_hcd(0.7).matrix() - (-0.7) * oracle::kron(oracle::sx(), down)) < 1e-15);

    const RampSchedule s = fig6(1.2, 1.0);
    const HamiltonianFn plain = cd_hamiltonian(s, 0.0);
    const HamiltonianFn full = cd_hamiltonian(s, 1.0);
    for (double f : {0.1, 0.5, 0.9}) {
        const double t = f * s.t_max();
        CHECK(max_abs(plain(t) - s.matrix_at(t)) == 0.0);
        CHECK(max_abs(full(t) - s.matrix_at(t) - build_hcd(cd_rate(s, t)).matrix()) < 1e-12);
    }
}

TEST_CASE("counter-diabatic driving transports every branch exactly at phi = pi/4") {
    for (double omega : {0.1, 1.0, 10.0}) {
        const RampSchedule s = fig6(omega, 2.0);
        CHECK(worst(transport_infidelity(s, tolerance(1e-8), 1.0)) < 1e-9);
    }
    // Without it the fast ramp is far from adiabatic.
    CHECK(worst(transport_infidelity(fig6(10.0, 2.0), tolerance(1e-8), 0.0)) > 0.1);
}

TEST_CASE("cd_scale 0 reproduces plain propagation") {
    const RampSchedule s = fig6(2.5, 2.0);
    const StepControl c = tolerance(1e-8);
    const Op4 a = propagate_with_cd(s, c, 0.0).propagator.matrix();
    const Op4 b = propagate(s, c).propagator.matrix();
    CHECK(max_abs(a - b) < 1e-8);
}

TEST_CASE("tightening the tolerance with the CD term") {
    const RampSchedule s = fig6(1.8, 1.5);
    const Op4 a = propagate_with_cd(s, tolerance(1e-6)).propagator.matrix();
    const Op4 b = propagate_with_cd(s, tolerance(5e-7)).propagator.matrix();
    CHECK(max_abs(a - b) < 1e-6);
}

TEST_CASE("away from phi = pi/4 the same term helps without being exact") {
    const RampSchedule s = fig6(2.5, 2.0, pi / 8);
    const double with_cd = worst(transport_infidelity(s, tolerance(1e-8), 1.0));
    const double without = worst(transport_infidelity(s, tolerance(1e-8), 0.0));
    CHECK(with_cd > 1e-3);
    CHECK(with_cd < without);
}

TEST_CASE("geometric phase is half the winding of the block coupling") {
    const RampSchedule s = fig6(0.55, 2.0);
    for (Branch b : {branch::nu_minus, branch::chi_minus}) {
        const int q = b == branch::nu_minus ? +1 : -1;
        const Coefficients c0 = s.coefficients_at(0.0), c1 = s.coefficients_at(s.t_max());
        const double start = std::arg(h3_block_coupling(q, c0.params.J, c0.params.omega2, s.phi()));
        const double end = std::arg(h3_block_coupling(q, c1.params.J, c1.params.omega2, s.phi()));
        // The coupling turns by less than pi along this ramp, so no unwrapping is needed.
        CHECK(geometric_phase(s, b) == doctest::Approx(0.5 * std::remainder(end - start, 2 * pi)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
