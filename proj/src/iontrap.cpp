#include "circqft/iontrap.hpp"

#include "circqft/errors.hpp"
#include "circqft/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace circqft::ions {

std::vector<double> residual_forces(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<double> f(n);
    for (int m = 0; m < n; ++m) {
        double s = u[m];
        for (int j = 0; j < n; ++j) {
            if (j == m) continue;
            const double d = u[m] - u[j];
            s += (j < m ? -1.0 : 1.0) / (d * d);
        }
        f[m] = s;
    }
    return f;
}

std::vector<double> equilibrium_positions(int N) {
    if (N < 2 || N > 20) throw std::invalid_argument("equilibrium_positions: need 2 <= N <= 20");

    const double spacing = 2.0 * std::pow(N, -0.56);
    Eigen::VectorXd u(N);
    for (int i = 0; i < N; ++i) u(i) = (i - 0.5 * (N - 1)) * spacing;

    auto force = [](const Eigen::VectorXd& x) {
        const auto f = residual_forces(std::vector<double>(x.data(), x.data() + x.size()));
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(f.data(), f.size()));
    };
    auto ordered = [](const Eigen::VectorXd& x) {
        for (int i = 1; i < x.size(); ++i)
            if (!(x(i) > x(i - 1))) return false;
        return true;
    };

    Eigen::VectorXd f = force(u);
    for (int it = 0; it < 200 && f.cwiseAbs().maxCoeff() >= 1e-13; ++it) {
        Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(N, N);
        for (int m = 0; m < N; ++m)
            for (int j = 0; j < N; ++j) {
                if (j == m) continue;
                const double c = 2.0 / std::pow(std::abs(u(m) - u(j)), 3);
                jac(m, m) += c;
                jac(m, j) -= c;
            }
        const Eigen::VectorXd step = -jac.partialPivLu().solve(f);
        double lambda = 1.0;
        bool moved = false;
        for (int back = 0; back < 40; ++back, lambda *= 0.5) {
            const Eigen::VectorXd trial = u + lambda * step;
            if (!ordered(trial)) continue;
            const Eigen::VectorXd ft = force(trial);
            if (ft.norm() < f.norm()) {
                u = trial;
                f = ft;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (!(f.cwiseAbs().maxCoeff() < 1e-10))
        throw NonConvergenceError("equilibrium_positions: Newton iteration did not converge");

    // Exact reflection symmetry.
    std::vector<double> out(N);
    for (int i = 0; i < N; ++i) out[i] = 0.5 * (u(i) - u(N - 1 - i));
    return out;
}

TransverseModes transverse_modes(const std::vector<double>& u, double omega_x, double omega_z) {
    const int n = static_cast<int>(u.size());
    if (n < 1) throw std::invalid_argument("transverse_modes: empty chain");
    if (!(omega_x > 0.0 && omega_z > 0.0))
        throw ConfigError("omega_x", "trap frequencies must be positive");

    const double aniso = (omega_x / omega_z) * (omega_x / omega_z);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = aniso;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double c = 1.0 / std::pow(std::abs(u[i] - u[j]), 3);
            a(i, i) -= c;
            a(i, j) = c;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw NonConvergenceError("transverse_modes: eigensolver failed");
    if (!(es.eigenvalues()(0) > 0.0))
        throw InstabilityError("transverse_modes: negative transverse eigenvalue " +
                               std::to_string(es.eigenvalues()(0)) +
                               "; the linear chain is unstable at this anisotropy");

    TransverseModes m;
    m.frequencies.resize(n);
    m.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;
        m.frequencies[k] = omega_z * std::sqrt(es.eigenvalues()(src));
        Eigen::VectorXd v = es.eigenvectors().col(src);
        // Sign convention: the first component above 1e-8 is positive.
        for (int i = 0; i < n; ++i)
            if (std::abs(v(i)) > 1e-8) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        m.vectors.col(k) = v;
    }
    return m;
}

double IonChain::length_scale() const {
    using namespace constants;
    const double wz = units::to_per_second(omega_z);
    return std::cbrt(elementary_charge * elementary_charge /
                     (4.0 * units::pi * epsilon0 * mass * wz * wz));
}

IonChain make_chain(int N, double omega_x, double omega_z, double mass, double k_laser) {
    if (!(mass > 0.0)) throw ConfigError("mass", "must be positive");
    if (!(k_laser > 0.0)) throw ConfigError("k_laser", "must be positive");
    IonChain c;
    c.N = N;
    c.omega_x = omega_x;
    c.omega_z = omega_z;
    c.mass = mass;
    c.k_laser = k_laser;
    c.equilibrium = equilibrium_positions(N);
    c.modes = transverse_modes(c.equilibrium, omega_x, omega_z);
    return c;
}

double lamb_dicke(double b, double k_laser, double mass, double omega_n) {
    return b * k_laser * std::sqrt(constants::hbar / (2.0 * mass * units::to_per_second(omega_n)));
}

double lamb_dicke(const IonChain& chain, int ion, int mode) {
    if (ion < 0 || ion >= chain.N || mode < 0 || mode >= chain.N)
        throw std::out_of_range("lamb_dicke: index out of range");
    return lamb_dicke(chain.modes.vectors(ion, mode), chain.k_laser, chain.mass,
                      chain.modes.frequencies[mode]);
}

namespace {

void check_drive(const IonChain& chain, const DriveParams& d) {
    if (d.ion_k < 0 || d.ion_k >= chain.N) throw ConfigError("ion_k", "ion index out of range");
    if (d.ion_m < 0 || d.ion_m >= chain.N) throw ConfigError("ion_m", "ion index out of range");
    if (d.ion_k == d.ion_m) throw ConfigError("ion_m", "the two target ions must differ");
    if (!std::isfinite(d.rabi)) throw ConfigError("rabi", "must be finite");
    if (!(d.beatnote > 0.0)) throw ConfigError("beatnote", "must be positive");
}

}  // namespace

Coupling effective_J(const IonChain& chain, const DriveParams& drive) {
    check_drive(chain, drive);
    Coupling c;
    c.per_mode.resize(chain.N);
    const double mu = drive.beatnote;
    for (int n = 0; n < chain.N; ++n) {
        const double wn = chain.modes.frequencies[n];
        if (std::abs(mu - wn) <= 1e-9 * wn)
            throw InstabilityError("effective_J: beatnote resonant with mode " + std::to_string(n));
        const double gk = lamb_dicke(chain, drive.ion_k, n) * drive.rabi;
        const double gm = lamb_dicke(chain, drive.ion_m, n) * drive.rabi;
        c.per_mode[n] = gk * gm * wn / (mu * mu - wn * wn);
        c.J += c.per_mode[n];
    }
    return c;
}

double dispersive_margin(const IonChain& chain, const DriveParams& drive) {
    check_drive(chain, drive);
    double margin = std::numeric_limits<double>::infinity();
    for (int n = 0; n < chain.N; ++n) {
        const double g = std::max(std::abs(lamb_dicke(chain, drive.ion_k, n)),
                                  std::abs(lamb_dicke(chain, drive.ion_m, n))) *
                         std::abs(drive.rabi);
        if (g > 0.0)
            margin = std::min(margin, std::abs(chain.modes.frequencies[n] - drive.beatnote) / g);
    }
    return margin;
}

double rabi_for_coupling(const IonChain& chain, DriveParams drive, double target_J) {
    drive.rabi = 1.0;
    const double unit = effective_J(chain, drive).J;
    if (!(unit != 0.0) || target_J / unit <= 0.0)
        throw ConfigError("beatnote", "coupling sign at this beatnote cannot reach the target J");
    return std::sqrt(target_J / unit);
}

}  // namespace circqft::ions
