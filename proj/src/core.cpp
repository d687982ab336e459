#include "circqft/core.hpp"

#include "circqft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace circqft {

namespace pauli {

Op2 identity() { return Op2::Identity(); }

Op2 x() {
    Op2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Op2 y() {
    Op2 m;
    m << 0.0, kI, -kI, 0.0;
    return m;
}

Op2 z() {
    Op2 m;
    m << -1.0, 0.0, 0.0, 1.0;
    return m;
}

Op2 raising() {
    Op2 m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}

Op2 lowering() {
    Op2 m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}

Op2 projector_down() {
    Op2 m;
    m << 1.0, 0.0, 0.0, 0.0;
    return m;
}

Op2 projector_up() {
    Op2 m;
    m << 0.0, 0.0, 0.0, 1.0;
    return m;
}

}  // namespace pauli

Op4 tensor(const Op2& a, const Op2& b) {
    Op4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

StateVector tensor(const Spinor& a, const Spinor& b) {
    StateVector r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            r(2 * i + k) = a(i) * b(k);
    return r;
}

StateVector computational_state(int index) {
    if (index < 0 || index > 3)
        throw std::out_of_range("computational_state: index must be in 0..3");
    StateVector v = StateVector::Zero();
    v(index) = 1.0;
    return v;
}

StateVector normalize(const StateVector& v) {
    const double n = v.norm();
    return n > 0.0 ? StateVector(v / n) : v;
}

double max_abs(const Op4& m) { return m.cwiseAbs().maxCoeff(); }

HermitianOperator::HermitianOperator(const Op4& m, double tol) : m_(m) {
    const double asym = max_abs(m - m.adjoint());
    if (asym > tol * std::max(1.0, max_abs(m)))
        throw SymmetryError("matrix is not Hermitian (max |H - H^dagger| = " +
                            std::to_string(asym) + ")");
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    return HermitianOperator(m_ + o.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    return HermitianOperator(m_ - o.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
    return HermitianOperator(m_ * s, Trusted{});
}

double unitarity_defect(const Op4& u) { return max_abs(u.adjoint() * u - Op4::Identity()); }

UnitaryOperator::UnitaryOperator(const Op4& m, double tol) : m_(m) {
    const double d = unitarity_defect(m);
    if (!(d <= tol))
        throw SymmetryError("matrix is not unitary (defect " + std::to_string(d) + ")");
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& o) const {
    UnitaryOperator r;
    r.m_ = m_ * o.m_;
    return r;
}

UnitaryOperator UnitaryOperator::adjoint() const {
    UnitaryOperator r;
    r.m_ = m_.adjoint();
    return r;
}

namespace {

constexpr std::array<std::pair<int, int>, 6> kPivots{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int kMaxSweeps = 64;

double off_diagonal_sq(const Op4& a) {
    double s = 0.0;
    for (auto [p, q] : kPivots) s += std::norm(a(p, q));
    return s;
}

}  // namespace

EigenSystem eigh_trusted(const Op4& h) {
    Op4 a = h;
    Op4 v = Op4::Identity();

    const double scale = a.norm();
    const double stop = scale * 1e-17;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (std::sqrt(off_diagonal_sq(a)) <= stop) break;
        for (auto [p, q] : kPivots) {
            const cplx apq = a(p, q);
            const double mag = std::abs(apq);
            if (mag <= stop * 1e-3) continue;

            // Strip the phase of a(p,q), then a real 2x2 rotation zeroes it.
            const cplx phase = std::conj(apq / mag);  // e^{-i theta}
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double theta = (aqq - app) / (2.0 * mag);
            const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;

            // W = [[c, s], [-s e^{-i theta}, c e^{-i theta}]] on (p, q).
            const cplx wqp = -s * phase;
            const cplx wqq = c * phase;

            for (int k = 0; k < 4; ++k) {
                const cplx akp = a(k, p);
                const cplx akq = a(k, q);
                a(k, p) = c * akp + wqp * akq;
                a(k, q) = s * akp + wqq * akq;
                const cplx vkp = v(k, p);
                const cplx vkq = v(k, q);
                v(k, p) = c * vkp + wqp * vkq;
                v(k, q) = s * vkp + wqq * vkq;
            }
            for (int k = 0; k < 4; ++k) {
                const cplx apk = a(p, k);
                const cplx aqk = a(q, k);
                a(p, k) = c * apk + std::conj(wqp) * aqk;
                a(q, k) = s * apk + std::conj(wqq) * aqk;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
        }
    }

    EigenSystem es;
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag{};
    for (int i = 0; i < 4; ++i) {
        diag[i] = a(i, i).real();
        es.max_imag_diagonal = std::max(es.max_imag_diagonal, std::abs(a(i, i).imag()));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int r) { return diag[l] < diag[r]; });
    for (int i = 0; i < 4; ++i) {
        es.values[i] = diag[order[i]];
        es.vectors[i] = v.col(order[i]);
    }
    return es;
}

EigenSystem eigh(const HermitianOperator& h) { return eigh_trusted(h.matrix()); }

Op4 expm_i_trusted(const Op4& h, double dt) {
    if (dt == 0.0) return Op4::Identity();
    const EigenSystem es = eigh_trusted(h);
    Op4 u = Op4::Zero();
    for (int p = 0; p < 4; ++p) {
        const cplx ph = std::exp(-kI * (es.values[p] * dt));
        u.noalias() += ph * es.vectors[p] * es.vectors[p].adjoint();
    }
    return u;
}

UnitaryOperator expm_i(const HermitianOperator& h, double dt) {
    if (!std::isfinite(dt)) throw std::invalid_argument("expm_i: dt must be finite");
    return UnitaryOperator(expm_i_trusted(h.matrix(), dt));
}

}  // namespace circqft
