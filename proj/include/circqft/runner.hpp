#pragma once

#include "circqft/config.hpp"
#include "circqft/dynamics.hpp"
#include "circqft/tuner.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace circqft {

struct RunOptions {
    std::string out_dir = ".";
    std::optional<double> tolerance;  // overrides the config's integrator tolerance
    int threads = 1;
    std::uint64_t seed = 1;
};

// Applies the option overrides to a config.
ScenarioConfig with_options(ScenarioConfig c, const RunOptions& opt);

struct ScenarioReport {
    EvolutionResult evolution;
    Variant variant = Variant::case2;
    double t_max_ms = 0.0;
    std::optional<AdiabaticPhases> phases{};
    std::optional<StateVector> final_state{};
    std::array<double, 4> populations{};          // computational basis, final state
    std::array<double, 4> arguments{};            // arg of each final amplitude
    std::array<double, 4> fourier_populations{};  // |<psi_p|final>|^2
    std::optional<double> gate_infidelity{};       // case2 or exponential at phi = pi/4
    // |<psi_f(b)|U|b(0)>|^2 per Branch, for protocols whose branches end on
    // Fourier modes (case2, exponential, rabi_controlled).
    std::optional<std::array<double, 4>> branch_transfer{};
    std::string csv_path{};
};

// Propagates the scenario and writes <prefix>.csv with a sampled time
// series: populations and arguments when an initial state is given,
// otherwise the gate infidelity (or unitarity defect) along the ramp.
ScenarioReport run_scenario(const ScenarioConfig& config, const RunOptions& opt);

// Human-readable "key = value" summary.
std::string describe(const ScenarioReport& r);

struct TuneTrial {
    DetuningPair detuning;  // rad/ms
    double gate_infidelity = 0.0;
};

struct TuneReport {
    TuneResult result;
    double gate_infidelity = 0.0;
    std::vector<TuneTrial> untuned{};  // seeded +-20% perturbations of the solution
    std::string csv_path{};
};

// Tunes the base config's detunings for windings (k, p), verifies by
// propagation, and compares with seeded untuned detunings.
TuneReport run_tune(int k, int p, const ScenarioConfig& base, const RunOptions& opt);
std::string describe(const TuneReport& r);

struct SweepReport {
    std::vector<std::string> columns;  // first column is the swept parameter
    std::vector<std::vector<double>> rows;
    std::string csv_path{};
};

// Column names produced for an observable.
std::vector<std::string> observable_columns(Observable o);

// Evaluates the observable for one config; the row matches observable_columns.
std::vector<double> evaluate_observable(const ScenarioConfig& c, Observable o);

// Fans the grid over opt.threads workers and writes <prefix>_sweep.csv in
// grid order. The first failing grid point (in grid order) is rethrown.
SweepReport run_sweep(const SweepSpec& spec, const RunOptions& opt);

struct IonReport {
    double J_khz = 0.0;
    double rabi_khz = 0.0;
    double margin = 0.0;
    std::vector<double> mode_khz;
    std::string csv_path{};
    std::vector<std::string> warnings;
};

// Reads [chain] and [drive] sections, computes modes and the effective
// coupling, and writes <prefix>_modes.csv. Margin below 10 adds a warning,
// below 3 raises InstabilityError.
IonReport run_ion_chain(const std::string& path, const RunOptions& opt);
std::string describe(const IonReport& r);

// Figure reproduction.
std::vector<std::string> figure_ids();

// Scenario configs embedded from the figure captions. Sweep figures return
// one config per curve; the swept parameter takes its first grid value.
std::vector<ScenarioConfig> figure_configs(const std::string& id);

struct FigureOutput {
    std::vector<std::string> files;
    std::vector<std::string> notes;  // "key = value" lines for the console
};

// Throws std::invalid_argument for an unknown id.
FigureOutput run_figure(const std::string& id, const RunOptions& opt);

}  // namespace circqft
