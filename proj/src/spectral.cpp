#include "circqft/spectral.hpp"

#include "circqft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace circqft {

std::string_view to_string(Branch b) {
    switch (b) {
    case Branch::lambda_plus: return "lambda+";
    case Branch::lambda_minus: return "lambda-";
    case Branch::mu_plus: return "mu+";
    case Branch::mu_minus: return "mu-";
    }
    return "?";
}

int fourier_index(Branch b) {
    switch (b) {
    case Branch::lambda_plus: return 0;
    case Branch::mu_minus: return 1;
    case Branch::mu_plus: return 2;
    case Branch::lambda_minus: return 3;
    }
    return -1;
}

StateVector initial_state(const RampSchedule& s, Branch b) {
    if (s.variant() == Variant::rabi_controlled) {
        switch (b) {
        case branch::nu_plus: return rotating_basis_state(+1, +1, s.phi());
        case branch::chi_minus: return rotating_basis_state(-1, -1, s.phi());
        case branch::nu_minus: return rotating_basis_state(+1, -1, s.phi());
        case branch::chi_plus: return rotating_basis_state(-1, +1, s.phi());
        }
    }
    switch (b) {
    case Branch::lambda_plus: return computational_state(basis::uu);
    case Branch::lambda_minus: return computational_state(basis::dd);
    case Branch::mu_plus: return computational_state(basis::ud);
    case Branch::mu_minus: return computational_state(basis::du);
    }
    throw std::invalid_argument("initial_state: bad branch");
}

double SpectrumValues::operator[](Branch b) const {
    switch (b) {
    case Branch::lambda_plus: return lambda_plus;
    case Branch::lambda_minus: return lambda_minus;
    case Branch::mu_plus: return mu_plus;
    case Branch::mu_minus: return mu_minus;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::array<double, 4> SpectrumValues::sorted() const {
    std::array<double, 4> v{lambda_plus, lambda_minus, mu_plus, mu_minus};
    std::sort(v.begin(), v.end());
    return v;
}

namespace {

// Values +-sqrt(a + 2r) and +-sqrt(a - 2r); the small root is formed from
// the cancellation-free numerator a^2 - 4r^2 supplied by the caller.
SpectrumValues from_roots(double a, double r, double a2_minus_4r2) {
    const double big = a + 2.0 * r;
    const double small = big > 0.0 ? std::max(a2_minus_4r2, 0.0) / big : 0.0;
    SpectrumValues v;
    v.lambda_plus = std::sqrt(big);
    v.lambda_minus = -v.lambda_plus;
    v.mu_plus = std::sqrt(small);
    v.mu_minus = -v.mu_plus;
    return v;
}

}  // namespace

SpectrumValues analytic_case1(double J, double delta1, double delta2, double phi) {
    const double J2 = J * J, d1 = delta1 * delta1, d2 = delta2 * delta2;
    const double c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
    const double a = 2.0 * J2 + d1 + d2;
    const double r2 = J2 * J2 * c2 * c2 + d1 * (J2 + d2);
    if (r2 < 0.0) throw std::logic_error("analytic_case1: negative radicand");
    const double r = std::sqrt(r2);
    const double num = 4.0 * J2 * J2 * s2 * s2 + (d1 - d2) * (d1 - d2) + 4.0 * J2 * d2;
    return from_roots(a, r, num);
}

SpectrumValues analytic_case2(double J, double omega1, double delta1, double delta2) {
    const double J2 = J * J, w2 = omega1 * omega1, d1 = delta1 * delta1, d2 = delta2 * delta2;
    const double a = 2.0 * J2 + w2 + d1 + d2;
    const double r = std::sqrt(J2 * (2.0 * w2 + d1) + d2 * (w2 + d1));
    const double t = 2.0 * J2 - w2 + d2 - d1;
    return from_roots(a, r, t * t + 4.0 * J2 * d1);
}

std::array<LabeledValue, 4> final_case2(double J, double omega1, double phi) {
    const double c = 2.0 * J * std::cos(phi), s = 2.0 * J * std::sin(phi);
    const std::array<LabeledValue, 4> out{{
        {Branch::lambda_plus, omega1 + c, 0},
        {Branch::lambda_minus, -omega1 - s, 3},
        {Branch::mu_plus, omega1 - c, 2},
        {Branch::mu_minus, -omega1 + s, 1},
    }};
    double scale = 0.0;
    for (const auto& v : out) scale = std::max(scale, std::abs(v.value));
    const double tol = 1e-9 * scale;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (scale == 0.0 || std::abs(out[i].value - out[j].value) <= tol)
                throw DegeneracyError("final case-2 spectrum degenerate: " +
                                      std::string(to_string(out[i].branch)) + " and " +
                                      std::string(to_string(out[j].branch)) + " collide");
    return out;
}

std::vector<double> uniform_grid(double t_max, int n) {
    if (n < 1) throw std::invalid_argument("uniform_grid: need at least one interval");
    std::vector<double> g(n + 1);
    for (int k = 0; k <= n; ++k) g[k] = t_max * k / n;
    g[n] = t_max;
    return g;
}

namespace {

[[noreturn]] void throw_at(const std::string& what, double t) {
    std::ostringstream os;
    os.precision(10);
    os << what << " at t = " << t << " ms";
    throw DegeneracyError(os.str());
}

}  // namespace

SpectralPath track(const HamiltonianFn& h, const std::vector<double>& grid,
                   const std::array<StateVector, 4>& initial) {
    if (grid.size() < 2) throw std::invalid_argument("track: grid needs at least 2 points");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("track: grid must be increasing");

    SpectralPath path;
    path.times = grid;
    path.spectra.reserve(grid.size());
    path.gaps.reserve(grid.size());

    std::array<StateVector, 4> prev;
    for (int b = 0; b < 4; ++b) prev[b] = normalize(initial[b]);

    for (double t : grid) {
        const EigenSystem es = eigh_trusted(h(t));
        const double scale = std::max(std::abs(es.values[0]), std::abs(es.values[3]));

        double gap = std::numeric_limits<double>::infinity();
        for (int p = 0; p + 1 < 4; ++p) gap = std::min(gap, es.values[p + 1] - es.values[p]);
        if (!(gap > 1e-9 * scale)) throw_at("degenerate spectrum", t);

        Spectrum sp;
        std::array<bool, 4> taken{};
        for (int b = 0; b < 4; ++b) {
            int best = -1;
            double o1 = -1.0, o2 = -1.0;
            for (int j = 0; j < 4; ++j) {
                const double o = std::abs(prev[b].dot(es.vectors[j]));
                if (o > o1) {
                    o2 = o1;
                    o1 = o;
                    best = j;
                } else if (o > o2) {
                    o2 = o;
                }
            }
            if (o1 - o2 < 1e-6) throw_at("ambiguous branch matching for " +
                                             std::string(to_string(static_cast<Branch>(b))), t);
            if (taken[best]) throw_at("two branches matched one eigenvector", t);
            taken[best] = true;

            const cplx ov = prev[b].dot(es.vectors[best]);  // <prev|new>
            sp.vectors[b] = es.vectors[best] * (std::conj(ov) / std::abs(ov));
            const double e = es.values[best];
            switch (static_cast<Branch>(b)) {
            case Branch::lambda_plus: sp.values.lambda_plus = e; break;
            case Branch::lambda_minus: sp.values.lambda_minus = e; break;
            case Branch::mu_plus: sp.values.mu_plus = e; break;
            case Branch::mu_minus: sp.values.mu_minus = e; break;
            }
        }

        if (!path.spectra.empty()) {
            const Spectrum& last = path.spectra.back();
            const double dt = t - path.times[path.spectra.size() - 1];
            Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (a != b)
                        c(a, b) = std::abs(last.vectors[a].dot(sp.vectors[b] - last.vectors[b])) / dt;
            path.couplings.push_back(c);
        }

        prev = sp.vectors;
        path.gaps.push_back(gap);
        path.spectra.push_back(std::move(sp));
    }
    return path;
}

SpectralPath track(const RampSchedule& s, const std::vector<double>& grid) {
    std::array<StateVector, 4> init;
    for (Branch b : kBranches) init[index(b)] = initial_state(s, b);
    return track([&s](double t) { return s.matrix_at(t); }, grid, init);
}

double adiabaticity_margin(const SpectralPath& path) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.couplings.size(); ++k) {
        const SpectrumValues& v = path.spectra[k].values;
        for (Branch a : kBranches)
            for (Branch b : kBranches) {
                if (a == b) continue;
                const double c = path.couplings[k](index(a), index(b));
                if (c > 0.0) margin = std::min(margin, std::abs(v[a] - v[b]) / c);
            }
    }
    return margin;
}

}  // namespace circqft
