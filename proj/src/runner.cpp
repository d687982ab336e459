#include "circqft/runner.hpp"

#include "runner_util.hpp"

#include "circqft/csv.hpp"
#include "circqft/errors.hpp"
#include "circqft/gatecheck.hpp"
#include "circqft/hamiltonian.hpp"
#include "circqft/iontrap.hpp"
#include "circqft/spectral.hpp"
#include "circqft/units.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

namespace circqft {

namespace {

constexpr const char* kBasisNames[] = {"dd", "du", "ud", "uu"};

double squared_overlap(const StateVector& a, const StateVector& b) {
    return std::norm(a.dot(b));
}

}  // namespace

std::string output_path(const RunOptions& opt, const std::string& file) {
    std::filesystem::path dir(opt.out_dir.empty() ? "." : opt.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::ios_base::failure("cannot create '" + dir.string() + "': " + ec.message());
    return (dir / file).string();
}

std::string branch_label(Variant v, Branch b) {
    if (v == Variant::rabi_controlled) {
        switch (b) {
        case branch::nu_plus: return "nu_plus";
        case branch::chi_minus: return "chi_minus";
        case branch::nu_minus: return "nu_minus";
        case branch::chi_plus: return "chi_plus";
        }
    }
    switch (b) {
    case Branch::lambda_plus: return "lambda_plus";
    case Branch::lambda_minus: return "lambda_minus";
    case Branch::mu_plus: return "mu_plus";
    case Branch::mu_minus: return "mu_minus";
    }
    return "unknown";
}

bool gate_applicable(const RampSchedule& s) {
    return (s.variant() == Variant::case2 || s.variant() == Variant::exponential) &&
           has_closed_form_phases(s);
}

bool branches_end_on_fourier(const RampSchedule& s) { return s.variant() != Variant::case1; }

std::array<double, 4> branch_transfer(const RampSchedule& s, const Op4& u) {
    std::array<double, 4> out{};
    for (Branch b : kBranches) {
        const StateVector evolved = u * initial_state(s, b);
        out[index(b)] = squared_overlap(fourier_state(fourier_index(b)), evolved);
    }
    return out;
}

void echo_config(CsvWriter& w, const ScenarioConfig& c) {
    w.comment("frequencies in kHz (value/2pi), time in ms, phases in rad");
    w.comment(to_ini(c));
}

ScenarioConfig with_options(ScenarioConfig c, const RunOptions& opt) {
    if (opt.tolerance) c.tolerance = *opt.tolerance;
    c.validate();
    return c;
}

ScenarioReport run_scenario(const ScenarioConfig& config, const RunOptions& opt) {
    const ScenarioConfig c = with_options(config, opt);
    const RampSchedule s = c.schedule();
    const StepControl control = c.step_control();

    ScenarioReport r{propagate(s, control)};
    r.variant = s.variant();
    r.t_max_ms = s.t_max();
    r.phases = r.evolution.phases;
    const Op4& u = r.evolution.propagator.matrix();
    const std::optional<StateVector> init = c.initial_state(r.phases);

    const bool gate = gate_applicable(s);
    if (gate) r.gate_infidelity = 1.0 - gate_fidelity(r.evolution.propagator, target_gate(GateBranch::plus_quarter));
    if (branches_end_on_fourier(s)) r.branch_transfer = branch_transfer(s, u);
    if (init) {
        r.final_state = u * *init;
        for (int j = 0; j < 4; ++j) {
            r.populations[j] = std::norm((*r.final_state)(j));
            r.arguments[j] = std::arg((*r.final_state)(j));
            r.fourier_populations[j] = squared_overlap(fourier_state(j), *r.final_state);
        }
    }

    const Trajectory traj = propagate_sampled(s, c.samples, control);
    r.csv_path = output_path(opt, c.prefix + ".csv");
    CsvWriter w(r.csv_path);
    echo_config(w, c);
    std::vector<std::string> cols{"t_ms"};
    if (init) {
        for (const char* n : kBasisNames) cols.push_back(std::string("pop_") + n);
        for (const char* n : kBasisNames) cols.push_back(std::string("arg_") + n);
        for (int p = 0; p < 4; ++p) cols.push_back("pop_psi" + std::to_string(p));
    } else if (gate) {
        cols.push_back("infidelity");
    } else if (r.branch_transfer) {
        for (Branch b : kBranches) cols.push_back("transfer_" + branch_label(s.variant(), b));
    } else {
        cols.push_back("unitarity_defect");
    }
    w.header(cols);

    const TargetGate target = target_gate(GateBranch::plus_quarter);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Op4& uk = traj.propagators[k];
        std::vector<double> row{traj.times[k]};
        if (init) {
            const StateVector psi = uk * *init;
            for (int j = 0; j < 4; ++j) row.push_back(std::norm(psi(j)));
            for (int j = 0; j < 4; ++j) row.push_back(std::arg(psi(j)));
            for (int p = 0; p < 4; ++p) row.push_back(squared_overlap(fourier_state(p), psi));
        } else if (gate) {
            row.push_back(1.0 - gate_fidelity(uk, target, 1e-8));
        } else if (r.branch_transfer) {
            for (double x : branch_transfer(s, uk)) row.push_back(x);
        } else {
            row.push_back(unitarity_defect(uk));
        }
        w.row(row);
    }
    return r;
}

std::string describe(const ScenarioReport& r) {
    std::string s;
    auto line = [&s](const std::string& k, double v) { s += k + " = " + format_number(v) + "\n"; };
    line("t_max_ms", r.t_max_ms);
    line("steps", static_cast<double>(r.evolution.steps));
    line("unitarity_defect", r.evolution.unitarity_defect);
    line("last_change", r.evolution.last_change);
    if (r.phases) {
        line("alpha2", r.phases->alpha2);
        line("beta2", r.phases->beta2);
        line("alpha2_over_2pi", r.phases->alpha2 / units::two_pi);
        line("beta2_over_2pi", r.phases->beta2 / units::two_pi);
    }
    if (r.gate_infidelity) line("gate_infidelity", *r.gate_infidelity);
    if (r.branch_transfer)
        for (Branch b : kBranches)
            line("transfer_" + branch_label(r.variant, b), (*r.branch_transfer)[index(b)]);
    if (r.final_state) {
        for (int j = 0; j < 4; ++j) line(std::string("pop_") + kBasisNames[j], r.populations[j]);
        for (int j = 0; j < 4; ++j) line(std::string("arg_") + kBasisNames[j], r.arguments[j]);
        for (int p = 0; p < 4; ++p) line("pop_psi" + std::to_string(p), r.fourier_populations[p]);
    }
    s += "csv = " + r.csv_path + "\n";
    return s;
}

// ---------------------------------------------------------------- tune

TuneReport run_tune(int k, int p, const ScenarioConfig& base, const RunOptions& opt) {
    const ScenarioConfig c = with_options(base, opt);
    const RampSchedule s = c.schedule();
    const TuneTarget target(k, p, s);
    if (!gate_applicable(s))
        throw ConfigError("schedule.variant", "tuning needs case2 or exponential at phi_pi = 0.25");

    TuneReport r{tune(target)};
    const StepControl control = c.step_control();
    const TargetGate gate = target_gate(GateBranch::plus_quarter);
    auto infidelity = [&](const DetuningPair& d) {
        return 1.0 - gate_fidelity(propagate(s.with_detuning(d), control).propagator, gate);
    };
    r.gate_infidelity = infidelity(r.result.detuning);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> factor(0.8, 1.2);
    for (int trial = 0; trial < 10; ++trial) {
        DetuningPair d{r.result.detuning.delta1 * factor(rng), r.result.detuning.delta2 * factor(rng)};
        r.untuned.push_back({d, infidelity(d)});
    }

    r.csv_path = output_path(opt, c.prefix + "_tune.csv");
    CsvWriter w(r.csv_path);
    echo_config(w, c);
    w.comment(fmt::format("k = {}, p = {}, seed = {}; trial 0 is the tuned solution", k, p, opt.seed));
    w.header({"trial", "Delta1_khz", "Delta2_khz", "gate_infidelity"});
    w.row({0.0, units::to_khz(r.result.detuning.delta1), units::to_khz(r.result.detuning.delta2),
           r.gate_infidelity});
    for (std::size_t i = 0; i < r.untuned.size(); ++i)
        w.row({static_cast<double>(i + 1), units::to_khz(r.untuned[i].detuning.delta1),
               units::to_khz(r.untuned[i].detuning.delta2), r.untuned[i].gate_infidelity});
    return r;
}

std::string describe(const TuneReport& r) {
    std::string s;
    auto line = [&s](const std::string& k, double v) { s += k + " = " + format_number(v) + "\n"; };
    line("Delta1_khz", units::to_khz(r.result.detuning.delta1));
    line("Delta2_khz", units::to_khz(r.result.detuning.delta2));
    line("alpha2", r.result.phases.alpha2);
    line("beta2", r.result.phases.beta2);
    line("residual_alpha", r.result.residual[0]);
    line("residual_beta", r.result.residual[1]);
    line("iterations", r.result.iterations);
    line("gate_infidelity", r.gate_infidelity);
    int worse = 0;
    for (const TuneTrial& t : r.untuned) worse += t.gate_infidelity > r.gate_infidelity;
    s += fmt::format("untuned_worse = {}/{}\n", worse, r.untuned.size());
    s += "csv = " + r.csv_path + "\n";
    return s;
}

// ---------------------------------------------------------------- sweep

std::vector<std::string> observable_columns(Observable o) {
    switch (o) {
    case Observable::gate_infidelity: return {"gate_infidelity"};
    case Observable::state_infidelity: return {"state_infidelity", "closest_psi"};
    case Observable::entangled_infidelity: return {"entangled_infidelity"};
    case Observable::phases: return {"alpha", "beta"};
    case Observable::spectrum:
        return {"adiabaticity_margin", "min_gap_khz", "final_lambda_plus_khz",
                "final_lambda_minus_khz", "final_mu_plus_khz", "final_mu_minus_khz"};
    }
    return {};
}

std::vector<double> evaluate_observable(const ScenarioConfig& c, Observable o) {
    const RampSchedule s = c.schedule();
    const StepControl control = c.step_control();
    switch (o) {
    case Observable::gate_infidelity: {
        if (!gate_applicable(s))
            throw ConfigError("sweep.observable",
                              "gate_infidelity needs case2 or exponential at phi_pi = 0.25");
        const auto u = propagate(s, control).propagator;
        return {1.0 - gate_fidelity(u, target_gate(GateBranch::plus_quarter))};
    }
    case Observable::state_infidelity: {
        const std::optional<AdiabaticPhases> ph =
            has_closed_form_phases(s) ? std::optional(adiabatic_phases(s)) : std::nullopt;
        const auto init = c.initial_state(ph);
        if (!init) throw ConfigError("sweep.observable", "state_infidelity needs an [initial] state");
        const StateVector out = propagate(s, *init, control).final_state.value();
        double best = -1.0;
        int which = 0;
        for (int p = 0; p < 4; ++p) {
            const double f = squared_overlap(fourier_state(p), out);
            if (f > best) best = f, which = p;
        }
        return {1.0 - best, static_cast<double>(which)};
    }
    case Observable::entangled_infidelity:
        if (s.variant() != Variant::rabi_controlled)
            throw ConfigError("sweep.observable", "entangled_infidelity needs rabi_controlled");
        return {1.0 - entangled_fidelity(s, control)};
    case Observable::phases:
        if (s.variant() == Variant::rabi_controlled) {
            const EntanglementPhases e = entanglement_phases(s);
            return {e.alpha, e.beta};
        } else {
            const AdiabaticPhases a = adiabatic_phases(s);
            return {a.alpha2, a.beta2};
        }
    case Observable::spectrum: {
        const SpectralPath path = track(s, uniform_grid(s.t_max(), c.samples));
        std::vector<double> row{adiabaticity_margin(path),
                                units::to_khz(*std::min_element(path.gaps.begin(), path.gaps.end()))};
        const SpectrumValues& last = path.spectra.back().values;
        for (Branch b : kBranches) row.push_back(units::to_khz(last[b]));
        return row;
    }
    }
    return {};
}

std::vector<std::vector<double>> parallel_rows(std::size_t n, int threads,
                                               const std::function<std::vector<double>(std::size_t)>& fn) {
    std::vector<std::vector<double>> rows(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                rows[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int count = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

SweepReport run_sweep(const SweepSpec& spec, const RunOptions& opt) {
    spec.validate();
    const ScenarioConfig base = with_options(spec.base, opt);
    std::vector<ScenarioConfig> configs;
    for (double v : spec.values) {
        ScenarioConfig c = base;
        set_parameter(c, spec.parameter, v);
        c.validate();
        configs.push_back(c);
    }

    SweepReport r;
    r.columns = {spec.parameter, "t_max_ms"};
    for (const auto& col : observable_columns(spec.observable)) r.columns.push_back(col);
    r.rows = parallel_rows(configs.size(), opt.threads, [&](std::size_t i) {
        std::vector<double> row{spec.values[i], configs[i].schedule().t_max()};
        for (double x : evaluate_observable(configs[i], spec.observable)) row.push_back(x);
        return row;
    });

    r.csv_path = output_path(opt, base.prefix + "_sweep.csv");
    CsvWriter w(r.csv_path);
    echo_config(w, base);
    w.comment("sweep over " + spec.parameter + ", observable " + to_string(spec.observable));
    w.header(r.columns);
    for (const auto& row : r.rows) w.row(row);
    return r;
}

// ---------------------------------------------------------------- ion chain

namespace {

namespace pt = boost::property_tree;

double ini_number(const pt::ptree& sec, const std::string& section, const std::string& key) {
    const auto v = sec.get_optional<std::string>(key);
    if (!v) throw ConfigError(section + "." + key, "missing");
    try {
        std::size_t used = 0;
        const double x = std::stod(*v, &used);
        if (v->find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("");
        if (!std::isfinite(x)) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(section + "." + key, "expected a number, got '" + *v + "'");
    }
}

int ini_int(const pt::ptree& sec, const std::string& section, const std::string& key) {
    const double x = ini_number(sec, section, key);
    if (x != std::floor(x) || std::abs(x) > 1e6) throw ConfigError(section + "." + key, "expected an integer");
    return static_cast<int>(x);
}

void only_keys(const pt::ptree& sec, const std::string& section, std::initializer_list<const char*> keys) {
    for (const auto& kv : sec) {
        bool ok = false;
        for (const char* k : keys) ok = ok || kv.first == k;
        if (!ok) throw ConfigError(section + "." + kv.first, "unknown key");
    }
}

}  // namespace

IonReport run_ion_chain(const std::string& path, const RunOptions& opt) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "'");
    pt::ptree tree;
    try {
        pt::read_ini(f, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("file", e.what());
    }
    for (const auto& kv : tree)
        if (kv.first != "chain" && kv.first != "drive" && kv.first != "output")
            throw ConfigError(kv.first, "unknown section");
    const auto chain_sec = tree.get_child_optional("chain");
    const auto drive_sec = tree.get_child_optional("drive");
    if (!chain_sec) throw ConfigError("chain", "missing section");
    if (!drive_sec) throw ConfigError("drive", "missing section");
    only_keys(*chain_sec, "chain", {"N", "omega_x_khz", "omega_z_khz", "mass_u", "wavelength_nm"});
    only_keys(*drive_sec, "drive", {"beatnote_khz", "rabi_khz", "target_J_khz", "ion_k", "ion_m"});
    std::string prefix = "ion_chain";
    if (auto out = tree.get_child_optional("output")) {
        only_keys(*out, "output", {"prefix"});
        prefix = out->get<std::string>("prefix", prefix);
    }

    const int N = ini_int(*chain_sec, "chain", "N");
    if (N < 2 || N > 20) throw ConfigError("chain.N", "expected 2 <= N <= 20");
    const double wx = units::from_khz(ini_number(*chain_sec, "chain", "omega_x_khz"));
    const double wz = units::from_khz(ini_number(*chain_sec, "chain", "omega_z_khz"));
    const double mass = ini_number(*chain_sec, "chain", "mass_u") * ions::constants::atomic_mass;
    const double lambda = ini_number(*chain_sec, "chain", "wavelength_nm") * 1e-9;
    if (!(lambda > 0.0)) throw ConfigError("chain.wavelength_nm", "must be positive");
    if (!(wx > 0.0)) throw ConfigError("chain.omega_x_khz", "must be positive");
    if (!(wz > 0.0)) throw ConfigError("chain.omega_z_khz", "must be positive");

    const ions::IonChain chain = ions::make_chain(N, wx, wz, mass, units::two_pi / lambda);

    ions::DriveParams drive;
    drive.beatnote = units::from_khz(ini_number(*drive_sec, "drive", "beatnote_khz"));
    drive.ion_k = ini_int(*drive_sec, "drive", "ion_k");
    drive.ion_m = ini_int(*drive_sec, "drive", "ion_m");
    const bool has_rabi = drive_sec->count("rabi_khz") > 0;
    const bool has_target = drive_sec->count("target_J_khz") > 0;
    if (has_rabi == has_target)
        throw ConfigError("drive.rabi_khz", "give exactly one of rabi_khz and target_J_khz");
    drive.rabi = has_rabi ? units::from_khz(ini_number(*drive_sec, "drive", "rabi_khz"))
                          : ions::rabi_for_coupling(
                                chain, drive, units::from_khz(ini_number(*drive_sec, "drive", "target_J_khz")));

    const ions::Coupling cpl = ions::effective_J(chain, drive);
    IonReport r;
    r.J_khz = units::to_khz(cpl.J);
    r.rabi_khz = units::to_khz(drive.rabi);
    r.margin = ions::dispersive_margin(chain, drive);
    for (double w : chain.modes.frequencies) r.mode_khz.push_back(units::to_khz(w));
    if (r.margin < 3.0)
        throw InstabilityError(fmt::format(
            "ion-chain: dispersive margin {:.4g} is below 3; the spin-phonon elimination is not valid",
            r.margin));
    if (r.margin < 10.0)
        r.warnings.push_back(fmt::format("dispersive margin {:.4g} is below 10", r.margin));

    r.csv_path = output_path(opt, prefix + "_modes.csv");
    CsvWriter w(r.csv_path);
    std::ifstream echo(path);
    w.comment(std::string(std::istreambuf_iterator<char>(echo), {}));
    w.comment(fmt::format("J_khz = {}, rabi_khz = {}, margin = {}", format_number(r.J_khz),
                          format_number(r.rabi_khz), format_number(r.margin)));
    w.header({"mode", "frequency_khz", "b_k", "b_m", "eta_k", "eta_m", "J_contribution_khz"});
    for (int n = 0; n < N; ++n)
        w.row({static_cast<double>(n), r.mode_khz[n], chain.modes.vectors(drive.ion_k, n),
               chain.modes.vectors(drive.ion_m, n), ions::lamb_dicke(chain, drive.ion_k, n),
               ions::lamb_dicke(chain, drive.ion_m, n), units::to_khz(cpl.per_mode[n])});
    return r;
}

std::string describe(const IonReport& r) {
    std::string s;
    auto line = [&s](const std::string& k, double v) { s += k + " = " + format_number(v) + "\n"; };
    line("J_khz", r.J_khz);
    line("rabi_khz", r.rabi_khz);
    line("margin", r.margin);
    for (std::size_t n = 0; n < r.mode_khz.size(); ++n) line(fmt::format("mode{}_khz", n), r.mode_khz[n]);
    s += "csv = " + r.csv_path + "\n";
    return s;
}

}  // namespace circqft
