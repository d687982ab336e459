#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace circqft {

using cplx = std::complex<double>;
using Op2 = Eigen::Matrix2cd;
using Op4 = Eigen::Matrix4cd;
using Spinor = Eigen::Vector2cd;

// Two-spin amplitudes in the fixed order (dd, du, ud, uu), where the first
// letter is spin 1 and d/u stand for down/up.
using StateVector = Eigen::Vector4cd;

inline constexpr cplx kI{0.0, 1.0};

namespace basis {
inline constexpr int dd = 0;
inline constexpr int du = 1;
inline constexpr int ud = 2;
inline constexpr int uu = 3;
}  // namespace basis

// Single-spin operators on (down, up). sigma_z|up> = +|up>.
namespace pauli {
Op2 identity();
Op2 x();
Op2 y();
Op2 z();
Op2 raising();   // |up><down|
Op2 lowering();  // |down><up|
Op2 projector_down();
Op2 projector_up();
}  // namespace pauli

// Kronecker product: result(2i+k, 2j+l) = a(i,j) * b(k,l).
Op4 tensor(const Op2& a, const Op2& b);

StateVector tensor(const Spinor& a, const Spinor& b);

StateVector computational_state(int index);

// Returns v / |v|; a zero vector is returned unchanged.
StateVector normalize(const StateVector& v);

double max_abs(const Op4& m);

// 4x4 complex matrix that is Hermitian to within a relative tolerance.
class HermitianOperator {
public:
    HermitianOperator() : m_(Op4::Zero()) {}

    // Throws SymmetryError when |m - m^dagger|_max > tol * max(1, |m|_max).
    explicit HermitianOperator(const Op4& m, double tol = 1e-12);

    static HermitianOperator zero() { return HermitianOperator(); }

    const Op4& matrix() const noexcept { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    // Frobenius norm.
    double norm() const { return m_.norm(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    HermitianOperator operator*(double s) const;

private:
    struct Trusted {};
    HermitianOperator(const Op4& m, Trusted) : m_(m) {}

    Op4 m_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

// |U^dagger U - 1|_max.
double unitarity_defect(const Op4& u);

class UnitaryOperator {
public:
    UnitaryOperator() : m_(Op4::Identity()) {}

    // Throws SymmetryError when the unitarity defect exceeds tol.
    explicit UnitaryOperator(const Op4& m, double tol = 1e-10);

    static UnitaryOperator identity() { return UnitaryOperator(); }

    const Op4& matrix() const noexcept { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }
    double defect() const { return unitarity_defect(m_); }

    UnitaryOperator operator*(const UnitaryOperator& o) const;
    StateVector operator*(const StateVector& v) const { return m_ * v; }
    UnitaryOperator adjoint() const;

private:
    Op4 m_;
};

struct EigenSystem {
    std::array<double, 4> values{};        // ascending
    std::array<StateVector, 4> vectors{};  // orthonormal, vectors[p] <-> values[p]
    double max_imag_diagonal = 0.0;        // largest |Im| on the diagonal before truncation
};

// Cyclic complex Jacobi with the fixed pivot order (0,1) (0,2) (0,3) (1,2)
// (1,3) (2,3); bit-reproducible for identical input.
EigenSystem eigh(const HermitianOperator& h);

// Same as eigh, without the Hermiticity check. For hot loops whose inputs
// are Hermitian by construction.
EigenSystem eigh_trusted(const Op4& h);

// exp(-i h dt) from the spectral decomposition of h.
UnitaryOperator expm_i(const HermitianOperator& h, double dt);

Op4 expm_i_trusted(const Op4& h, double dt);

}  // namespace circqft
