#include "circqft/config.hpp"

#include "circqft/errors.hpp"
#include "circqft/units.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace circqft {

namespace pt = boost::property_tree;

namespace {

constexpr const char* kBasisNames[] = {"dd", "du", "ud", "uu"};

const std::vector<std::string>& schedule_keys() {
    static const std::vector<std::string> keys{"J0_khz",     "Omega1_khz", "V0_khz", "Delta1_khz",
                                               "Delta2_khz", "omega_khz",  "phi_pi"};
    return keys;
}

template <class Config>
auto parameter_slot(Config& c, const std::string& key) -> decltype(&c.J0_khz) {
    if (key == "J0_khz") return &c.J0_khz;
    if (key == "Omega1_khz") return &c.Omega1_khz;
    if (key == "V0_khz") return &c.V0_khz;
    if (key == "Delta1_khz") return &c.Delta1_khz;
    if (key == "Delta2_khz") return &c.Delta2_khz;
    if (key == "omega_khz") return &c.omega_khz;
    if (key == "phi_pi") return &c.phi_pi;
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError(field, "expected a number, got '" + text + "'");
    }
    if (used != t.size()) throw ConfigError(field, "expected a number, got '" + text + "'");
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

long long parse_integer(const std::string& field, const std::string& text) {
    const double v = parse_double(field, text);
    if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError(field, "expected an integer");
    return static_cast<long long>(v);
}

int parse_sign(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    if (t == "+" || t == "+1" || t == "1") return +1;
    if (t == "-" || t == "-1") return -1;
    throw ConfigError(field, "expected + or -");
}

std::vector<cplx> parse_amplitudes(const std::string& text) {
    std::vector<cplx> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        const auto colon = tok.find(':');
        const double re = parse_double("initial.amplitudes", tok.substr(0, colon));
        const double im =
            colon == std::string::npos ? 0.0 : parse_double("initial.amplitudes", tok.substr(colon + 1));
        out.emplace_back(re, im);
    }
    return out;
}

void check_phase_token(const std::string& token) {
    if (token.empty() || token == "+alpha2" || token == "-alpha2" || token == "+beta2" ||
        token == "-beta2")
        return;
    parse_double("initial.phase", token);
}

// Visits every key of a section, rejecting the ones not in `allowed`.
void check_keys(const pt::ptree& section, const std::string& name,
                const std::set<std::string>& allowed) {
    for (const auto& kv : section)
        if (!allowed.count(kv.first))
            throw ConfigError(name + "." + kv.first, "unknown key");
}

ScenarioConfig from_tree(const pt::ptree& tree, bool allow_sweep) {
    for (const auto& kv : tree) {
        const std::string& s = kv.first;
        if (s != "schedule" && s != "initial" && s != "integrator" && s != "output" &&
            !(allow_sweep && s == "sweep"))
            throw ConfigError(s, "unknown section");
    }

    ScenarioConfig c;
    if (auto sec = tree.get_child_optional("schedule")) {
        std::set<std::string> allowed(schedule_keys().begin(), schedule_keys().end());
        allowed.insert("variant");
        check_keys(*sec, "schedule", allowed);
        if (auto v = sec->get_optional<std::string>("variant")) c.variant = trim(*v);
        for (const auto& key : schedule_keys())
            if (auto v = sec->get_optional<std::string>(key))
                *parameter_slot(c, key) = parse_double("schedule." + key, *v);
    }
    if (auto sec = tree.get_child_optional("initial")) {
        check_keys(*sec, "initial", {"kind", "state", "q1", "q2", "amplitudes", "phase"});
        const std::string kind = trim(sec->get<std::string>("kind", "none"));
        InitialSpec& in = c.initial;
        if (kind == "none") {
            in.kind = InitialSpec::Kind::none;
        } else if (kind == "computational") {
            in.kind = InitialSpec::Kind::computational;
            const std::string st = trim(sec->get<std::string>("state", "dd"));
            int idx = -1;
            for (int i = 0; i < 4; ++i)
                if (st == kBasisNames[i]) idx = i;
            if (idx < 0) throw ConfigError("initial.state", "expected dd, du, ud or uu");
            in.basis_index = idx;
        } else if (kind == "rotating") {
            in.kind = InitialSpec::Kind::rotating;
            in.q1 = parse_sign("initial.q1", sec->get<std::string>("q1", "-"));
            in.q2 = parse_sign("initial.q2", sec->get<std::string>("q2", "-"));
        } else if (kind == "custom") {
            in.kind = InitialSpec::Kind::custom;
            in.amplitudes = parse_amplitudes(sec->get<std::string>("amplitudes", ""));
        } else {
            throw ConfigError("initial.kind", "expected none, computational, rotating or custom");
        }
        in.phase = trim(sec->get<std::string>("phase", ""));
    }
    if (auto sec = tree.get_child_optional("integrator")) {
        check_keys(*sec, "integrator", {"tolerance", "dt_initial_ms", "max_steps", "samples"});
        if (auto v = sec->get_optional<std::string>("tolerance"))
            c.tolerance = parse_double("integrator.tolerance", *v);
        if (auto v = sec->get_optional<std::string>("dt_initial_ms"))
            c.dt_initial_ms = parse_double("integrator.dt_initial_ms", *v);
        if (auto v = sec->get_optional<std::string>("max_steps"))
            c.max_steps = parse_integer("integrator.max_steps", *v);
        if (auto v = sec->get_optional<std::string>("samples"))
            c.samples = static_cast<int>(parse_integer("integrator.samples", *v));
    }
    if (auto sec = tree.get_child_optional("output")) {
        check_keys(*sec, "output", {"prefix"});
        c.prefix = trim(sec->get<std::string>("prefix", c.prefix));
    }
    c.validate();
    return c;
}

pt::ptree read_ini(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("file", e.what());
    }
    return tree;
}

std::ifstream open(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "'");
    return f;
}

}  // namespace

void ScenarioConfig::validate() const {
    Variant v;
    try {
        v = variant_from_string(variant);
    } catch (const ConfigError&) {
        throw ConfigError("schedule.variant",
                          "expected case1, case2, rabi_controlled or exponential");
    }
    auto nonneg = [](double x, const char* key) {
        if (!(x >= 0.0)) throw ConfigError(key, "must be non-negative");
    };
    nonneg(J0_khz, "schedule.J0_khz");
    nonneg(Omega1_khz, "schedule.Omega1_khz");
    nonneg(V0_khz, "schedule.V0_khz");
    if (!(omega_khz > 0.0)) throw ConfigError("schedule.omega_khz", "must be positive");
    if (v == Variant::case1 && Omega1_khz != 0.0)
        throw ConfigError("schedule.Omega1_khz", "case1 has no Omega1 drive");
    if (v == Variant::rabi_controlled && (Delta1_khz != 0.0 || Delta2_khz != 0.0))
        throw ConfigError("schedule.Delta1_khz", "rabi_controlled has no detuning");
    if (v != Variant::rabi_controlled && V0_khz != 0.0)
        throw ConfigError("schedule.V0_khz", "only rabi_controlled uses V0");

    if (initial.kind == InitialSpec::Kind::custom) {
        if (initial.amplitudes.size() != 4)
            throw ConfigError("initial.amplitudes", "expected 4 complex amplitudes re:im");
        double n = 0.0;
        for (const cplx& a : initial.amplitudes) n += std::norm(a);
        if (!(n > 0.0)) throw ConfigError("initial.amplitudes", "zero vector");
    }
    if (initial.kind == InitialSpec::Kind::none && !initial.phase.empty())
        throw ConfigError("initial.phase", "phase given without an initial state");
    check_phase_token(initial.phase);

    if (!(tolerance > 0.0)) throw ConfigError("integrator.tolerance", "must be positive");
    if (!(dt_initial_ms >= 0.0)) throw ConfigError("integrator.dt_initial_ms", "must be non-negative");
    if (max_steps < 1) throw ConfigError("integrator.max_steps", "must be positive");
    if (samples < 1) throw ConfigError("integrator.samples", "must be positive");
    if (prefix.empty() || prefix.find('/') != std::string::npos)
        throw ConfigError("output.prefix", "must be a plain file-name prefix");
}

RampSchedule ScenarioConfig::schedule() const {
    using units::from_khz;
    const DetuningPair d{from_khz(Delta1_khz), from_khz(Delta2_khz)};
    const double phi = units::from_pi_units(phi_pi);
    switch (variant_from_string(variant)) {
    case Variant::case1: return RampSchedule::case1(from_khz(J0_khz), d, from_khz(omega_khz), phi);
    case Variant::case2:
        return RampSchedule::case2(from_khz(J0_khz), from_khz(Omega1_khz), d, from_khz(omega_khz),
                                   phi);
    case Variant::rabi_controlled:
        return RampSchedule::rabi_controlled(from_khz(J0_khz), from_khz(V0_khz),
                                             from_khz(Omega1_khz), from_khz(omega_khz), phi);
    case Variant::exponential:
        return RampSchedule::exponential(from_khz(J0_khz), from_khz(Omega1_khz), d,
                                         from_khz(omega_khz), phi);
    }
    throw ConfigError("schedule.variant", "unknown");
}

StepControl ScenarioConfig::step_control() const {
    StepControl s;
    s.dt_initial = dt_initial_ms;
    s.tolerance = tolerance;
    s.max_steps = max_steps;
    return s;
}

std::optional<StateVector> ScenarioConfig::initial_state(
    const std::optional<AdiabaticPhases>& phases) const {
    StateVector v;
    switch (initial.kind) {
    case InitialSpec::Kind::none: return std::nullopt;
    case InitialSpec::Kind::computational: v = computational_state(initial.basis_index); break;
    case InitialSpec::Kind::rotating:
        v = rotating_basis_state(initial.q1, initial.q2, units::from_pi_units(phi_pi));
        break;
    case InitialSpec::Kind::custom:
        for (int j = 0; j < 4; ++j) v(j) = initial.amplitudes[j];
        v = normalize(v);
        break;
    }
    const std::string& tok = initial.phase;
    if (tok.empty()) return v;
    double x = 0.0;
    if (tok.find("alpha2") != std::string::npos || tok.find("beta2") != std::string::npos) {
        if (!phases)
            throw ConfigError("initial.phase",
                              "adiabatic phases need case1, or case2 at phi = 1/4");
        const double base = tok.find("alpha2") != std::string::npos ? phases->alpha2 : phases->beta2;
        x = tok[0] == '-' ? -base : base;
    } else {
        x = units::from_pi_units(parse_double("initial.phase", tok));
    }
    return StateVector(std::exp(kI * x) * v);
}

void set_parameter(ScenarioConfig& c, const std::string& key, double value) {
    double* slot = parameter_slot(c, key);
    if (!slot) throw ConfigError("sweep.parameter", "unknown schedule key '" + key + "'");
    *slot = value;
}

double get_parameter(const ScenarioConfig& c, const std::string& key) {
    const double* slot = parameter_slot(c, key);
    if (!slot) throw ConfigError("sweep.parameter", "unknown schedule key '" + key + "'");
    return *slot;
}

ScenarioConfig parse_config(std::istream& in) { return from_tree(read_ini(in), false); }

ScenarioConfig load_config(const std::string& path) {
    auto f = open(path);
    return parse_config(f);
}

std::string to_ini(const ScenarioConfig& c) {
    std::string s;
    auto num = [](double x) { return fmt::format("{:.17g}", x); };
    s += "[schedule]\n";
    s += "variant = " + c.variant + "\n";
    for (const auto& key : schedule_keys()) s += key + " = " + num(*parameter_slot(c, key)) + "\n";

    s += "\n[initial]\n";
    switch (c.initial.kind) {
    case InitialSpec::Kind::none: s += "kind = none\n"; break;
    case InitialSpec::Kind::computational:
        s += "kind = computational\n";
        s += std::string("state = ") + kBasisNames[c.initial.basis_index] + "\n";
        break;
    case InitialSpec::Kind::rotating:
        s += "kind = rotating\n";
        s += std::string("q1 = ") + (c.initial.q1 > 0 ? "+" : "-") + "\n";
        s += std::string("q2 = ") + (c.initial.q2 > 0 ? "+" : "-") + "\n";
        break;
    case InitialSpec::Kind::custom: {
        s += "kind = custom\namplitudes =";
        for (const cplx& a : c.initial.amplitudes) s += " " + num(a.real()) + ":" + num(a.imag());
        s += "\n";
        break;
    }
    }
    if (!c.initial.phase.empty()) s += "phase = " + c.initial.phase + "\n";

    s += "\n[integrator]\n";
    s += "tolerance = " + num(c.tolerance) + "\n";
    s += "dt_initial_ms = " + num(c.dt_initial_ms) + "\n";
    s += "max_steps = " + std::to_string(c.max_steps) + "\n";
    s += "samples = " + std::to_string(c.samples) + "\n";

    s += "\n[output]\nprefix = " + c.prefix + "\n";
    return s;
}

std::string to_string(Observable o) {
    switch (o) {
    case Observable::gate_infidelity: return "gate_infidelity";
    case Observable::state_infidelity: return "state_infidelity";
    case Observable::entangled_infidelity: return "entangled_infidelity";
    case Observable::phases: return "phases";
    case Observable::spectrum: return "spectrum";
    }
    return "unknown";
}

Observable observable_from_string(const std::string& s) {
    for (Observable o : {Observable::gate_infidelity, Observable::state_infidelity,
                         Observable::entangled_infidelity, Observable::phases, Observable::spectrum})
        if (to_string(o) == s) return o;
    throw ConfigError("sweep.observable", "unknown observable '" + s + "'");
}

void SweepSpec::validate() const {
    ScenarioConfig probe = base;
    set_parameter(probe, parameter, 0.0);
    if (values.empty()) throw ConfigError("sweep.values", "empty grid");
    if (values.size() > 1) {
        const bool up = values[1] > values[0];
        for (std::size_t i = 1; i < values.size(); ++i)
            if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1]))
                throw ConfigError("sweep.values", "grid must be strictly monotone");
    }
}

SweepSpec parse_sweep(std::istream& in) {
    const pt::ptree tree = read_ini(in);
    SweepSpec sw;
    sw.base = from_tree(tree, true);
    const auto sec = tree.get_child_optional("sweep");
    if (!sec) throw ConfigError("sweep", "missing [sweep] section");
    check_keys(*sec, "sweep", {"parameter", "observable", "values", "start", "stop", "count"});
    sw.parameter = trim(sec->get<std::string>("parameter", ""));
    sw.observable = observable_from_string(trim(sec->get<std::string>("observable", "gate_infidelity")));
    if (auto v = sec->get_optional<std::string>("values")) {
        std::istringstream is(*v);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!trim(tok).empty()) sw.values.push_back(parse_double("sweep.values", tok));
    } else {
        const double a = parse_double("sweep.start", sec->get<std::string>("start", ""));
        const double b = parse_double("sweep.stop", sec->get<std::string>("stop", ""));
        const long long n = parse_integer("sweep.count", sec->get<std::string>("count", ""));
        if (n < 1) throw ConfigError("sweep.count", "must be positive");
        for (long long i = 0; i < n; ++i) sw.values.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    }
    sw.validate();
    return sw;
}

SweepSpec load_sweep(const std::string& path) {
    auto f = open(path);
    return parse_sweep(f);
}

}  // namespace circqft
