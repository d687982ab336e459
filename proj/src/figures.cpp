#include "circqft/runner.hpp"

#include "runner_util.hpp"

#include "circqft/gatecheck.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/spectral.hpp"
#include "circqft/sta.hpp"
#include "circqft/units.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace circqft {

namespace {

ScenarioConfig make(const std::string& variant, double J0, double omega1, double V0, double d1,
                    double d2, double omega, double phi, const std::string& prefix) {
    ScenarioConfig c;
    c.variant = variant;
    c.J0_khz = J0;
    c.Omega1_khz = omega1;
    c.V0_khz = V0;
    c.Delta1_khz = d1;
    c.Delta2_khz = d2;
    c.omega_khz = omega;
    c.phi_pi = phi;
    c.prefix = prefix;
    return c;
}

ScenarioConfig computational(ScenarioConfig c, int basis_index, const std::string& phase = "") {
    c.initial.kind = InitialSpec::Kind::computational;
    c.initial.basis_index = basis_index;
    c.initial.phase = phase;
    return c;
}

ScenarioConfig rotating(ScenarioConfig c, int q1, int q2) {
    c.initial.kind = InitialSpec::Kind::rotating;
    c.initial.q1 = q1;
    c.initial.q2 = q2;
    return c;
}

const std::vector<double>& fig5a_omegas() {
    static const std::vector<double> v{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6};
    return v;
}

const std::vector<double>& fig5b_couplings() {
    static const std::vector<double> v{1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0};
    return v;
}

// (omega, J0) pairs of the counterdiabatic-rate curves.
const std::vector<std::pair<double, double>>& fig6_curves() {
    static const std::vector<std::pair<double, double>> v{{2.5, 2.0}, {1.8, 1.5}, {1.2, 1.0}};
    return v;
}

std::string spectrum_csv(const ScenarioConfig& c, const RunOptions& opt) {
    const RampSchedule s = c.schedule();
    const SpectralPath path = track(s, uniform_grid(s.t_max(), c.samples));
    const bool use_case1 = s.variant() == Variant::case1;
    const bool use_case2 =
        s.variant() == Variant::case2 && std::abs(s.phi() - units::pi / 4.0) < 1e-12;

    const std::string file = output_path(opt, c.prefix + ".csv");
    CsvWriter w(file);
    echo_config(w, c);
    std::vector<std::string> cols{"t_ms"};
    for (Branch b : kBranches) cols.push_back(branch_label(s.variant(), b) + "_khz");
    if (use_case1 || use_case2)
        for (Branch b : kBranches) cols.push_back("analytic_" + branch_label(s.variant(), b) + "_khz");
    cols.push_back("min_gap_khz");
    w.header(cols);

    for (std::size_t k = 0; k < path.times.size(); ++k) {
        const double t = path.times[k];
        std::vector<double> row{t};
        for (Branch b : kBranches) row.push_back(units::to_khz(path.spectra[k].values[b]));
        if (use_case1 || use_case2) {
            const Coefficients co = s.coefficients_at(t);
            const SpectrumValues a =
                use_case1
                    ? circqft::analytic_case1(co.params.J, co.detuning.delta1, co.detuning.delta2, s.phi())
                    : circqft::analytic_case2(co.params.J, co.params.omega1, co.detuning.delta1,
                                              co.detuning.delta2);
            for (Branch b : kBranches) row.push_back(units::to_khz(a[b]));
        }
        row.push_back(units::to_khz(path.gaps[k]));
        w.row(row);
    }
    return file;
}

std::string scenario_figure(const ScenarioConfig& c, const RunOptions& opt,
                            std::vector<std::string>& notes) {
    const ScenarioReport r = run_scenario(c, opt);
    std::string text = describe(r);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string line = text.substr(pos, nl - pos);
        if (line.rfind("csv = ", 0) != 0) notes.push_back(line);
        pos = nl == std::string::npos ? text.size() : nl + 1;
    }
    return r.csv_path;
}

std::string fig5_csv(const std::string& id, const RunOptions& opt, std::vector<std::string>& notes) {
    const std::vector<ScenarioConfig> curves = figure_configs(id);
    std::vector<ScenarioConfig> runs;
    if (id == "5a") {
        for (const ScenarioConfig& base : curves)
            for (double omega : fig5a_omegas()) {
                ScenarioConfig c = base;
                c.omega_khz = omega;
                runs.push_back(with_options(c, opt));
            }
    } else {
        for (double J0 : fig5b_couplings()) {
            ScenarioConfig c = curves.front();
            c.J0_khz = J0;
            runs.push_back(with_options(c, opt));
        }
    }
    const auto rows = parallel_rows(runs.size(), opt.threads, [&](std::size_t i) {
        const RampSchedule s = runs[i].schedule();
        return std::vector<double>{runs[i].J0_khz, runs[i].omega_khz, s.t_max(),
                                   1.0 - entangled_fidelity(s, runs[i].step_control())};
    });

    const std::string file = output_path(opt, "fig" + id + ".csv");
    CsvWriter w(file);
    echo_config(w, runs.front());
    w.comment(id == "5a" ? "sweep over omega_khz for each J0_khz" : "sweep over J0_khz");
    w.header({"J0_khz", "omega_khz", "t_max_ms", "infidelity"});
    for (const auto& row : rows) {
        w.row(row);
        notes.push_back(fmt::format("J0_khz = {:g}, omega_khz = {:g}: infidelity = {}", row[0], row[1],
                                    format_number(row[3])));
    }
    return file;
}

std::string fig6_csv(const RunOptions& opt, std::vector<std::string>& notes) {
    const std::vector<ScenarioConfig> curves = figure_configs("6");
    const std::string file = output_path(opt, "fig6.csv");
    CsvWriter w(file);
    echo_config(w, curves.front());
    w.comment("curve index selects (omega_khz, J0_khz) = (2.5, 2.0), (1.8, 1.5), (1.2, 1.0)");
    w.header({"curve", "omega_khz", "J0_khz", "t_ms", "dxi_dt_khz"});
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const ScenarioConfig c = with_options(curves[i], opt);
        const RampSchedule s = c.schedule();
        for (double t : uniform_grid(s.t_max(), c.samples))
            w.row({static_cast<double>(i), c.omega_khz, c.J0_khz, t, units::to_khz(cd_rate(s, t))});

        const auto on = transport_infidelity(s, c.step_control(), 1.0);
        const auto off = transport_infidelity(s, c.step_control(), 0.0);
        notes.push_back(fmt::format("curve {}: worst transport infidelity with CD = {}, without = {}", i,
                                    format_number(*std::max_element(on.begin(), on.end())),
                                    format_number(*std::max_element(off.begin(), off.end()))));
    }
    return file;
}

}  // namespace

std::vector<std::string> figure_ids() { return {"1a", "1b", "2a", "2b", "3", "4a", "4b", "5a", "5b", "6"}; }

std::vector<ScenarioConfig> figure_configs(const std::string& id) {
    if (id == "1a") return {make("case1", 2.1, 0.0, 0.0, 120.0, 30.0, 0.25, 0.125, "fig1a")};
    if (id == "1b") return {make("case2", 2.1, 100.0, 0.0, 120.0, 30.0, 0.25, 0.25, "fig1b")};
    if (id == "2a")
        return {computational(make("case2", 2.0, 50.0, 0.0, 30.0, 10.0, 0.2, 0.25, "fig2a"), basis::dd)};
    if (id == "2b") return {rotating(make("rabi_controlled", 2.0, 30.0, 3.8, 0.0, 0.0, 0.6, 0.25, "fig2b"), -1, -1)};
    if (id == "3")
        return {computational(make("case2", 2.0, 50.0, 0.0, 30.0, 10.0, 0.2, 0.25, "fig3"), basis::dd,
                              "-alpha2")};
    if (id == "4a") return {make("case2", 2.0, 40.0, 0.0, 59.96, 27.76, 0.18, 0.25, "fig4a")};
    if (id == "4b") return {make("rabi_controlled", 2.0, 146.3, 2.02, 0.0, 0.0, 0.55, 0.25, "fig4b")};
    if (id == "5a") {
        std::vector<ScenarioConfig> v;
        for (double J0 : {2.0, 1.8, 1.6})
            v.push_back(make("rabi_controlled", J0, 30.0, 2.0, 0.0, 0.0, fig5a_omegas().front(), 0.25,
                             "fig5a"));
        return v;
    }
    if (id == "5b")
        return {make("rabi_controlled", fig5b_couplings().front(), 30.0, 2.0, 0.0, 0.0, 0.8, 0.25, "fig5b")};
    if (id == "6") {
        std::vector<ScenarioConfig> v;
        for (const auto& [omega, J0] : fig6_curves())
            v.push_back(make("rabi_controlled", J0, 80.0, 0.5, 0.0, 0.0, omega, 0.25, "fig6"));
        return v;
    }
    throw std::invalid_argument("unknown figure '" + id + "'; expected one of 1a 1b 2a 2b 3 4a 4b 5a 5b 6");
}

FigureOutput run_figure(const std::string& id, const RunOptions& opt) {
    const std::vector<ScenarioConfig> configs = figure_configs(id);
    FigureOutput out;
    if (id == "1a" || id == "1b") {
        out.files.push_back(spectrum_csv(with_options(configs.front(), opt), opt));
    } else if (id == "5a" || id == "5b") {
        out.files.push_back(fig5_csv(id, opt, out.notes));
    } else if (id == "6") {
        out.files.push_back(fig6_csv(opt, out.notes));
    } else {
        out.files.push_back(scenario_figure(configs.front(), opt, out.notes));
    }
    return out;
}

}  // namespace circqft
