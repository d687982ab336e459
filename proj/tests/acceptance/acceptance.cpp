// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "circqft/dynamics.hpp"
#include "circqft/errors.hpp"
#include "circqft/gatecheck.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/iontrap.hpp"
#include "circqft/runner.hpp"
#include "circqft/schedule.hpp"
#include "circqft/spectral.hpp"
#include "circqft/sta.hpp"
#include "circqft/tuner.hpp"
#include "circqft/units.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace circqft;
using units::from_khz;
using units::pi;
using units::to_khz;

namespace {

class Ledger {
public:
    void record(const std::string& id, bool pass, const std::string& detail) {
        fmt::print("{} [{}] {}\n", pass ? "PASS" : "FAIL", id, detail);
        if (!pass) ++failures_;
    }
    void note(const std::string& text) { fmt::print("INFO {}\n", text); }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

// Largest unitarity defect over every propagation run by the harness.
double g_worst_defect = 0.0;

EvolutionResult tracked(EvolutionResult r) {
    g_worst_defect = std::max(g_worst_defect, r.unitarity_defect);
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::array<double, 4> eigenvalues(const Op4& h) {
    Eigen::SelfAdjointEigenSolver<Op4> es(h, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2), es.eigenvalues()(3)};
}

double relative_distance(std::array<double, 4> a, std::array<double, 4> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double scale = 1.0, d = 0.0;
    for (int i = 0; i < 4; ++i) {
        scale = std::max(scale, std::abs(b[i]));
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d / scale;
}

std::array<double, 4> as_array(const SpectrumValues& v) {
    return {v.lambda_plus, v.lambda_minus, v.mu_plus, v.mu_minus};
}

RampSchedule fig4a() {
    return RampSchedule::case2(from_khz(2), from_khz(40), {from_khz(59.96), from_khz(27.76)}, from_khz(0.18), pi / 4);
}

RampSchedule fig5(double omega_khz) {
    return RampSchedule::rabi_controlled(from_khz(2), from_khz(2.0), from_khz(30), from_khz(omega_khz), pi / 4);
}

void gate_infidelity(Ledger& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const RampSchedule s = fig4a();
    const EvolutionResult r = tracked(propagate(s));
    const double infid = 1.0 - gate_fidelity(r.propagator, target_gate(GateBranch::plus_quarter));
    const double secs = seconds_since(t0);
    out.record("1 gate infidelity", infid <= 1e-3 && secs < 30.0 && std::abs(s.t_max() - 1.389) < 1e-3,
               fmt::format("1-F = {:.4e} (<= 1e-3), t_max = {:.4f} ms, {} steps, {:.1f} s (< 30 s)", infid,
                           s.t_max(), r.steps, secs));
}

void detuning_tuning(Ledger& out) {
    const RampSchedule base =
        RampSchedule::case2(from_khz(2), from_khz(40), {from_khz(1), from_khz(0.5)}, from_khz(0.18), pi / 4);
    auto check = [&](int k, int p) -> std::string {
        const TuneResult r = tune(TuneTarget(k, p, base));
        const double e1 = std::abs(to_khz(r.detuning.delta1) / 59.96 - 1.0);
        const double e2 = std::abs(to_khz(r.detuning.delta2) / 27.76 - 1.0);
        const double ea = std::abs(r.phases.alpha2 - 2.0 * k * pi);
        const double eb = std::abs(r.phases.beta2 - 2.0 * p * pi);
        const bool ok = e1 < 5e-3 && e2 < 5e-3 && ea < 0.05 && eb < 0.05;
        return fmt::format("{}(k,p) = ({},{}): Delta = ({:.4f}, {:.4f}) kHz, rel. err ({:.2e}, {:.2e}) < 5e-3, "
                           "|alpha2 - {}pi| = {:.1e}, |beta2 - {}pi| = {:.1e} < 0.05",
                           ok ? "" : "mismatch ", k, p, to_khz(r.detuning.delta1), to_khz(r.detuning.delta2), e1,
                           e2, 2 * k, ea, 2 * p, eb);
    };
    try {
        const std::string detail = check(40, 20);
        out.record("2 detuning tuning", detail.rfind("mismatch", 0) != 0, detail);
    } catch (const Error& e) {
        out.record("2 detuning tuning", false, fmt::format("(k,p) = (40,20): {}", e.what()));
    }
    try {
        out.note("diagnostic, not a criterion: " + check(80, 40));
    } catch (const Error& e) {
        out.note(fmt::format("diagnostic (k,p) = (80,40): {}", e.what()));
    }
}

void state_transfer(Ledger& out) {
    const RampSchedule a =
        RampSchedule::case2(from_khz(2), from_khz(50), {from_khz(30), from_khz(10)}, from_khz(0.2), pi / 4);
    const EvolutionResult ra = tracked(propagate(a, computational_state(basis::dd)));
    const double pa = std::norm(fourier_state(3).dot(*ra.final_state));

    const RampSchedule b = RampSchedule::rabi_controlled(from_khz(2), from_khz(3.8), from_khz(30), from_khz(0.6), pi / 4);
    const EvolutionResult rb = tracked(propagate(b, rotating_basis_state(-1, -1, pi / 4)));
    const double pb = std::norm(fourier_state(3).dot(*rb.final_state));

    const bool ok = pa >= 0.999 && pb >= 0.999 && std::abs(a.t_max() - 1.25) < 1e-12 &&
                    std::abs(b.t_max() - 0.417) < 1e-3;
    out.record("3 state transfer", ok,
               fmt::format("Fig. 2(a) |<psi3|U|dd>|^2 = {:.6f} at {:.4f} ms; Fig. 2(b) |<psi3|U|-->|^2 = {:.6f} at "
                           "{:.1f} us (both >= 0.999)",
                           pa, a.t_max(), pb, b.t_max() * 1e3));
}

void entangled_state(Ledger& out) {
    const StepControl c;
    std::vector<double> fid;
    std::string series;
    for (double omega : {0.2, 0.4, 0.8, 1.6}) {
        const RampSchedule s = fig5(omega);
        tracked(propagate(s, c));
        fid.push_back(entangled_fidelity(s, c));
        series += fmt::format(" {:g}:{:.3e}", omega, 1.0 - fid.back());
    }
    const double at08 = 1.0 - fid[2];
    bool monotone = true;
    for (std::size_t i = 1; i < fid.size(); ++i) monotone = monotone && fid[i] <= fid[i - 1];
    out.record("4 entangled state", at08 <= 1e-3 && monotone && std::abs(fig5(0.8).t_max() - 0.3125) < 1e-12,
               fmt::format("1-F at omega/2pi = 0.8 kHz is {:.4e} (<= 1e-3); F non-increasing in omega: {}; "
                           "1-F by omega/2pi [kHz]:{}",
                           at08, monotone ? "yes" : "no", series));
}

void shortcut(Ledger& out) {
    const RampSchedule s =
        RampSchedule::rabi_controlled(from_khz(2.0), from_khz(0.5), from_khz(80), from_khz(2.5), pi / 4);
    tracked(propagate_with_cd(s, {}, 1.0));
    tracked(propagate_with_cd(s, {}, 0.0));
    const auto with = transport_infidelity(s, {}, 1.0);
    const auto without = transport_infidelity(s, {}, 0.0);
    double worst_with = 0.0, best_without = 1.0;
    for (int i = 0; i < 4; ++i) {
        worst_with = std::max(worst_with, std::abs(with[i]));
        best_without = std::min(best_without, without[i]);
    }
    // With the field on, the residual sits at rounding level; it is floored at
    // 1e-12 before forming the ratio.
    const bool ok = worst_with <= 1e-6 && best_without >= 100.0 * std::max(worst_with, 1e-12) &&
                    std::abs(s.t_max() - 0.1) < 1e-12;
    out.record("5 shortcut", ok,
               fmt::format("t_max = {:.1f} us; worst infidelity with CD {:.2e} (<= 1e-6); best without CD {:.4e} "
                           "(>= 100x)",
                           s.t_max() * 1e3, worst_with, best_without));
}

void circulant_suite(Ledger& out) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> scale_exp(-3.0, 3.0);
    double worst = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
        const double scale = std::pow(10.0, scale_exp(rng));
        const CirculantSpec spec =
            CirculantSpec::hermitian(scale * n(rng), scale * cplx(n(rng), n(rng)), scale * n(rng));
        const Op4 h = spec.hermitian_matrix().matrix();
        for (int p = 0; p < 4; ++p) {
            const StateVector psi = fourier_state(p);
            const cplx lambda = psi.dot(h * psi);
            worst = std::max(worst, (h * psi - lambda * psi).norm() / std::max(1.0, h.norm()));
        }
    }
    out.record("6 circulant eigenvectors", worst < 1e-10,
               fmt::format("worst Fourier-mode residual over 1000 draws (scales 1e-3..1e3) = {:.2e} (< 1e-10)", worst));
}

void analytic_spectrum(Ledger& out) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 100.0), angle(-pi, pi);
    std::uniform_int_distribution<int> quarter(-4, 4);
    double worst1 = 0.0, worst2 = 0.0, worst_final = 0.0;
    int flagged = 0, missed_flags = 0, false_flags = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        const double J = u(rng), d1 = u(rng), d2 = u(rng);

        const double phi1 = draw % 4 == 0 ? quarter(rng) * pi / 4 : angle(rng);
        const Op4 h1 = build_case1(J, phi1).matrix() + build_detuning({d1, d2}).matrix();
        worst1 = std::max(worst1, relative_distance(as_array(analytic_case1(J, d1, d2, phi1)), eigenvalues(h1)));

        const double w1 = draw % 4 == 0 ? 2 * J : draw % 4 == 1 ? std::sqrt(2.0) * J : u(rng);
        const Op4 h2 = build_case2(J, w1, pi / 4).matrix() + build_detuning({d1, d2}).matrix();
        worst2 = std::max(worst2, relative_distance(as_array(analytic_case2(J, w1, d1, d2)), eigenvalues(h2)));

        // Circulant endpoint: phi = n pi/2 and Omega1 = 2J cos(pi/4) collide and must be flagged.
        double phi2 = angle(rng), w2 = u(rng);
        if (draw % 4 == 0) phi2 = quarter(rng) * pi / 2;
        if (draw % 4 == 1) phi2 = pi / 4, w2 = std::sqrt(2.0) * J;
        const auto exact = eigenvalues(build_case2(J, w2, phi2).matrix());
        double min_gap = 1e300;
        for (int i = 1; i < 4; ++i) min_gap = std::min(min_gap, exact[i] - exact[i - 1]);
        const bool degenerate = min_gap <= 1e-9 * std::max(std::abs(exact[0]), std::abs(exact[3]));
        try {
            const auto lv = final_case2(J, w2, phi2);
            if (degenerate) ++missed_flags;
            worst_final = std::max(worst_final,
                                   relative_distance({lv[0].value, lv[1].value, lv[2].value, lv[3].value}, exact));
        } catch (const DegeneracyError&) {
            ++flagged;
            if (!degenerate) ++false_flags;
        }
    }
    const double worst = std::max({worst1, worst2, worst_final});
    out.record("7 analytic spectrum", worst < 1e-10 && missed_flags == 0 && false_flags == 0 && flagged > 0,
               fmt::format("1000 draws each: case1 {:.1e}, case2 {:.1e}, circulant endpoint {:.1e} (< 1e-10 rel.); "
                           "degenerate flags raised {} (missed {}, spurious {})",
                           worst1, worst2, worst_final, flagged, missed_flags, false_flags));
}

void unitarity_linearity(Ledger& out) {
    const RampSchedule s =
        RampSchedule::case2(from_khz(2), from_khz(50), {from_khz(30), from_khz(10)}, from_khz(1.0), pi / 4);
    const Op4 u = tracked(propagate(s)).propagator.matrix();
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n(0.0, 1.0);
    auto random_state = [&] {
        StateVector v;
        for (int j = 0; j < 4; ++j) v(j) = cplx(n(rng), n(rng));
        return StateVector(v.normalized());
    };
    double worst_linear = 0.0;
    for (int draw = 0; draw < 10; ++draw) {
        const StateVector a = random_state(), b = random_state();
        const cplx ca(n(rng), n(rng)), cb(n(rng), n(rng));
        const StateVector mix = ca * a + cb * b;
        const double norm = mix.norm();
        const EvolutionResult r = tracked(propagate(s, StateVector(mix / norm)));
        const StateVector expected = (ca * (u * a) + cb * (u * b)) / norm;
        worst_linear = std::max(worst_linear, (*r.final_state - expected).cwiseAbs().maxCoeff());
    }
    out.record("8 unitarity and linearity", g_worst_defect < 1e-9 && worst_linear < 1e-9,
               fmt::format("worst unitarity defect over all propagations = {:.2e} (< 1e-9); superposition error "
                           "= {:.2e} (< 1e-9)",
                           g_worst_defect, worst_linear));
}

void gate_identities(Ledger& out) {
    const Op4 plus = target_gate(GateBranch::plus_quarter).matrix.matrix();
    const Op4 minus = target_gate(GateBranch::minus_quarter).matrix.matrix();
    const double det_err = std::abs(plus.determinant() - 1.0);
    const bool conj_ok = (minus - plus.conjugate()).cwiseAbs().maxCoeff() == 0.0;
    double col_err = 0.0;
    for (GateBranch b : {GateBranch::plus_quarter, GateBranch::minus_quarter}) {
        const Op4 g = target_gate(b).matrix.matrix();
        for (const Transition& t : transition_map(b, 0.0, 0.0))
            col_err = std::max(col_err, (g.col(t.input) - t.output).cwiseAbs().maxCoeff());
    }
    out.record("9 target gate identities", det_err < 1e-12 && conj_ok && col_err == 0.0,
               fmt::format("|det G - 1| = {:.1e} (< 1e-12); G(-pi/4) == conj G(pi/4): {}; column mismatch = {:g}",
                           det_err, conj_ok ? "yes" : "no", col_err));
}

void ion_chain(Ledger& out) {
    using namespace ions;
    const auto two = equilibrium_positions(2);
    const auto three = equilibrium_positions(3);
    const double x2 = std::pow(2.0, -2.0 / 3.0), x3 = std::cbrt(1.25);
    const double pos_err = std::max({std::abs(two[0] + x2), std::abs(two[1] - x2), std::abs(three[0] + x3),
                                     std::abs(three[1]), std::abs(three[2] - x3)});

    const double wx = from_khz(3000), wz = from_khz(2000);
    const double mass = 171.0 * constants::atomic_mass, k = 2.0 * pi / 355e-9;
    const IonChain chain = make_chain(2, wx, wz, mass, k);
    const double rock = std::sqrt(wx * wx - wz * wz);
    const double mode_err = std::max(std::abs(chain.modes.frequencies[0] / wx - 1.0),
                                     std::abs(chain.modes.frequencies[1] / rock - 1.0));

    const double mu = wx + from_khz(25), rabi = from_khz(150);
    auto eta = [&](double w) {
        return std::sqrt(0.5) * k * std::sqrt(constants::hbar / (2.0 * mass * w * 1e3));
    };
    const double g0 = eta(wx) * rabi, g1 = eta(rock) * rabi;
    const double hand = g0 * g0 * wx / (mu * mu - wx * wx) - g1 * g1 * rock / (mu * mu - rock * rock);
    const double J = effective_J(chain, {rabi, mu, 0, 1}).J;
    const double J2 = effective_J(chain, {2.0 * rabi, mu, 0, 1}).J;
    const double hand_err = std::abs(J / hand - 1.0);
    const double scale_err = std::abs(J2 / J - 4.0) / 4.0;
    out.record("10 ion-chain oracle", pos_err < 1e-10 && mode_err < 1e-10 && hand_err < 1e-12 && scale_err < 1e-12,
               fmt::format("positions {:.1e}, modes {:.1e} rel. (< 1e-10); J vs two-mode sum {:.1e} rel. (< 1e-12); "
                           "Omega_x^2 scaling {:.1e}",
                           pos_err, mode_err, hand_err, scale_err));
}

std::vector<std::vector<double>> csv_rows(const std::string& path) {
    std::ifstream f(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header = true;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

void figure_endpoints(Ledger& out, const std::string& dir) {
    RunOptions opt;
    opt.out_dir = dir;

    for (const std::string id : {"1a", "1b"}) {
        const auto rows = csv_rows(run_figure(id, opt).files.at(0));
        // Tracked branches sit in columns 1..4, their closed forms in 5..8.
        double worst = 0.0;
        for (const auto& row : rows)
            for (int j = 1; j <= 4; ++j) worst = std::max(worst, std::abs(row[j] - row[j + 4]) / std::max(1.0, std::abs(row[j + 4])));
        const auto& first = rows.front();
        const bool start_ok = std::abs(first[1] - 150) < 1e-9 && std::abs(first[2] + 150) < 1e-9 &&
                              std::abs(first[3] - 90) < 1e-9 && std::abs(first[4] + 90) < 1e-9;
        out.record("Fig. " + id + " spectrum", start_ok && worst < 1e-10,
                   fmt::format("start (150, -150, 90, -90) kHz: {}; tracked vs closed form along the ramp {:.1e}",
                               start_ok ? "yes" : "no", worst));
    }

    ScenarioConfig c = figure_configs("3").front();
    c.prefix = "fig3_acceptance";
    const ScenarioReport r = run_scenario(c, opt);
    tracked(r.evolution);
    const double target[] = {0.0, -pi / 2, pi, pi / 2};
    double worst = 0.0;
    std::string args;
    for (int j = 0; j < 4; ++j) {
        worst = std::max(worst, std::abs(std::remainder(r.arguments[j] - target[j], 2 * pi)));
        args += fmt::format(" {:.4f}", r.arguments[j]);
    }
    out.record("Fig. 3 arguments", worst < 0.02,
               fmt::format("final arguments{} rad vs (0, -pi/2, pi, pi/2): worst {:.4f} (< 0.02)", args, worst));
}

}  // namespace

int main() {
    Ledger out;
    const auto dir = std::filesystem::temp_directory_path() / "circqft_acceptance";
    std::filesystem::create_directories(dir);

    auto guarded = [&](const char* id, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.record(id, false, fmt::format("raised: {}", e.what()));
        }
    };
    guarded("1 gate infidelity", [&] { gate_infidelity(out); });
    guarded("2 detuning tuning", [&] { detuning_tuning(out); });
    guarded("3 state transfer", [&] { state_transfer(out); });
    guarded("4 entangled state", [&] { entangled_state(out); });
    guarded("5 shortcut", [&] { shortcut(out); });
    guarded("6 circulant eigenvectors", [&] { circulant_suite(out); });
    guarded("7 analytic spectrum", [&] { analytic_spectrum(out); });
    guarded("9 target gate identities", [&] { gate_identities(out); });
    guarded("10 ion-chain oracle", [&] { ion_chain(out); });
    guarded("Fig. 1 and 3 endpoints", [&] { figure_endpoints(out, dir.string()); });
    // Last, so that it covers every propagation above.
    guarded("8 unitarity and linearity", [&] { unitarity_linearity(out); });

    std::filesystem::remove_all(dir);
    fmt::print("{} criteria failed\n", out.failures());
    return out.failures() == 0 ? 0 : 1;
}
