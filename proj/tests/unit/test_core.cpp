#include "circqft/core.hpp"
#include "circqft/errors.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/units.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace circqft;

TEST_SUITE("core") {

TEST_CASE("tensor of Pauli operators") {
    SUBCASE("identity with identity") {
        CHECK(max_abs(tensor(pauli::identity(), pauli::identity()) - Op4::Identity()) == 0.0);
    }
    SUBCASE("sigma_z on the first spin puts -1 on the down half") {
        const Op4 expected = Eigen::Vector4cd(-1, -1, 1, 1).asDiagonal();
        CHECK(max_abs(tensor(pauli::z(), pauli::identity()) - expected) == 0.0);
    }
    SUBCASE("sigma_x with sigma_x is the antidiagonal") {
        Op4 expected = Op4::Zero();
        for (int r = 0; r < 4; ++r) expected(r, 3 - r) = 1.0;
        CHECK(max_abs(tensor(pauli::x(), pauli::x()) - expected) == 0.0);
    }
    SUBCASE("matches the element-wise Kronecker expansion") {
        const Op2 ops[] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z(), pauli::raising()};
        for (const Op2& a : ops)
            for (const Op2& b : ops) CHECK(max_abs(tensor(a, b) - oracle::kron(a, b)) == 0.0);
    }
}

TEST_CASE("tensor is bilinear on small integers") {
    Op2 a, b, c;
    a << 1, 2, cplx(0, 3), -1;
    b << 0, cplx(1, 1), 4, 2;
    c << -2, 1, 1, cplx(0, -1);
    for (int alpha : {-3, 2, 5}) {
        CHECK(max_abs(tensor(Op2(double(alpha) * a), b) - double(alpha) * tensor(a, b)) == 0.0);
        CHECK(max_abs(tensor(a, Op2(b + c)) - (tensor(a, b) + tensor(a, c))) == 0.0);
    }
}

TEST_CASE("spin conventions") {
    CHECK(pauli::raising()(1, 0) == cplx(1.0));
    CHECK(pauli::raising()(0, 1) == cplx(0.0));
    CHECK(pauli::z()(0, 0) == cplx(-1.0));
    CHECK(computational_state(basis::ud)(2) == cplx(1.0));
    CHECK_THROWS_AS(computational_state(4), std::out_of_range);
}

TEST_CASE("HermitianOperator rejects non-Hermitian input") {
    Op4 m = Op4::Identity();
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianOperator{m}, SymmetryError);
    m(1, 0) = 1.0;
    CHECK_NOTHROW(HermitianOperator{m});
}

TEST_CASE("eigh of a diagonal matrix") {
    const Op4 d = Eigen::Vector4cd(3, 1, 4, 2).asDiagonal();
    const EigenSystem es = eigh(HermitianOperator(d));
    for (int p = 0; p < 4; ++p) CHECK(es.values[p] == doctest::Approx(p + 1.0));
    const int position[] = {1, 3, 0, 2};  // where value p + 1 sits on the diagonal
    for (int p = 0; p < 4; ++p) CHECK(std::abs(es.vectors[p](position[p])) == doctest::Approx(1.0));
}

TEST_CASE("eigh of the case-1 circulant at the Fig. 1(a) coupling") {
    const double J = units::from_khz(2.1), phi = units::pi / 8;
    const EigenSystem es = eigh(build_case1(J, phi));
    std::array<double, 4> expected{2 * J * std::cos(phi), -2 * J * std::cos(phi), 2 * J * std::sin(phi),
                                   -2 * J * std::sin(phi)};
    CHECK(oracle::spectrum_distance(es.values, expected) < 1e-13);
}

TEST_CASE("eigh against Eigen and by reconstruction over seeded draws") {
    std::mt19937_64 rng(20240611);
    for (int draw = 0; draw < 500; ++draw) {
        const Op4 h = oracle::random_hermitian(rng, draw % 2 ? 1.0 : 300.0);
        const EigenSystem es = eigh(HermitianOperator(h));
        CHECK(es.max_imag_diagonal < 1e-12 * std::max(1.0, oracle::max_abs(h)));
        CHECK(oracle::spectrum_distance(es.values, oracle::eigenvalues(h)) < 1e-12);
        Op4 rebuilt = Op4::Zero();
        for (int p = 0; p < 4; ++p) rebuilt += es.values[p] * es.vectors[p] * es.vectors[p].adjoint();
        CHECK((rebuilt - h).norm() < 1e-10 * std::max(1.0, h.norm()));
        for (int p = 1; p < 4; ++p) CHECK(es.values[p - 1] <= es.values[p]);
    }
}

TEST_CASE("eigh is bit-reproducible") {
    std::mt19937_64 rng(7);
    const HermitianOperator h(oracle::random_hermitian(rng));
    const EigenSystem a = eigh(h), b = eigh(h);
    for (int p = 0; p < 4; ++p) {
        CHECK(a.values[p] == b.values[p]);
        CHECK(a.vectors[p] == b.vectors[p]);
    }
}

TEST_CASE("expm_i") {
    std::mt19937_64 rng(99);
    const Op4 h = oracle::random_hermitian(rng, 5.0);

    SUBCASE("zero time step is the identity") {
        CHECK(max_abs(expm_i(HermitianOperator(h), 0.0).matrix() - Op4::Identity()) < 1e-15);
    }
    SUBCASE("diagonal generator") {
        const double w = 2.7, dt = 0.31;
        Op4 d = Op4::Zero();
        d(0, 0) = w;
        Op4 expected = Op4::Identity();
        expected(0, 0) = std::exp(-oracle::I * w * dt);
        CHECK(max_abs(expm_i(HermitianOperator(d), dt).matrix() - expected) < 1e-15);
    }
    SUBCASE("forward then backward is the identity") {
        const auto u = expm_i(HermitianOperator(h), 0.7) * expm_i(HermitianOperator(h), -0.7);
        CHECK(max_abs(u.matrix() - Op4::Identity()) < 1e-12);
    }
    SUBCASE("agrees with the Pade exponential") {
        for (double dt : {1e-4, 0.01, 0.3, 2.0})
            CHECK(max_abs(expm_i(HermitianOperator(h), dt).matrix() - oracle::expm(h, dt)) < 1e-11);
    }
    SUBCASE("rejects a non-finite step") {
        CHECK_THROWS_AS(expm_i(HermitianOperator(h), std::nan("")), std::invalid_argument);
    }
}

TEST_CASE("expm_i is unitary to 1e-12 over seeded draws") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> dt(-10.0, 10.0);
    for (int draw = 0; draw < 500; ++draw) {
        const Op4 h = oracle::random_hermitian(rng, 50.0);
        CHECK(unitarity_defect(expm_i(HermitianOperator(h), dt(rng)).matrix()) < 1e-12);
    }
}

TEST_CASE("UnitaryOperator checks its input") {
    CHECK_THROWS_AS(UnitaryOperator(Op4(2.0 * Op4::Identity())), SymmetryError);
    std::mt19937_64 rng(3);
    const UnitaryOperator u(oracle::expm(oracle::random_hermitian(rng), 1.0));
    CHECK(max_abs((u.adjoint() * u).matrix() - Op4::Identity()) < 1e-13);
}

}  // TEST_SUITE
