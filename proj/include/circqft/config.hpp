#pragma once

#include "circqft/core.hpp"
#include "circqft/dynamics.hpp"
#include "circqft/schedule.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace circqft {

// Initial state of a scenario, optionally decorated by a phase factor.
struct InitialSpec {
    enum class Kind { none, computational, rotating, custom };

    Kind kind = Kind::none;
    int basis_index = 0;            // computational: dd, du, ud, uu
    int q1 = -1, q2 = -1;           // rotating
    std::vector<cplx> amplitudes;   // custom, normalized on use
    // Phase factor e^{i x}: "" (none), "+alpha2", "-alpha2", "+beta2",
    // "-beta2", or a number in units of pi.
    std::string phase;

    bool operator==(const InitialSpec&) const = default;
};

// User-facing scenario. Frequencies are "/2pi in kHz", phi in units of pi.
struct ScenarioConfig {
    std::string variant = "case2";
    double J0_khz = 0.0;
    double Omega1_khz = 0.0;
    double V0_khz = 0.0;
    double Delta1_khz = 0.0;
    double Delta2_khz = 0.0;
    double omega_khz = 1.0;  // ramp rate omega/2pi (gamma/2pi for exponential)
    double phi_pi = 0.25;

    InitialSpec initial;

    double tolerance = 1e-9;
    double dt_initial_ms = 0.0;
    std::int64_t max_steps = std::int64_t{1} << 22;
    int samples = 200;

    std::string prefix = "scenario";

    bool operator==(const ScenarioConfig&) const = default;

    RampSchedule schedule() const;
    StepControl step_control() const;

    // Resolves the initial state; phase tokens use `phases`. Returns nullopt
    // for Kind::none. Throws ConfigError if a token needs phases that are
    // not available.
    std::optional<StateVector> initial_state(const std::optional<AdiabaticPhases>& phases) const;

    // Throws ConfigError naming the offending key.
    void validate() const;
};

// Sets one schedule key by its config name (J0_khz, omega_khz, ...).
void set_parameter(ScenarioConfig& c, const std::string& key, double value);
double get_parameter(const ScenarioConfig& c, const std::string& key);

// Reads the INI sections [schedule], [initial], [integrator], [output].
// Unknown keys and malformed values raise ConfigError.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

// Lossless INI text (17 significant digits); parse_config(to_ini(c)) == c.
std::string to_ini(const ScenarioConfig& c);

enum class Observable { gate_infidelity, state_infidelity, entangled_infidelity, phases, spectrum };

std::string to_string(Observable o);
Observable observable_from_string(const std::string& s);

struct SweepSpec {
    std::string parameter;  // a schedule key
    std::vector<double> values;
    Observable observable = Observable::gate_infidelity;
    ScenarioConfig base;

    // Throws ConfigError unless values are strictly monotone and the key is known.
    void validate() const;
};

// A scenario file with an extra [sweep] section holding parameter,
// observable and either `values` (comma list) or `start`, `stop`, `count`.
SweepSpec parse_sweep(std::istream& in);
SweepSpec load_sweep(const std::string& path);

}  // namespace circqft
