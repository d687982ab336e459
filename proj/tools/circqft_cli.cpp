#include "circqft/config.hpp"
#include "circqft/errors.hpp"
#include "circqft/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum ExitCode { ok = 0, io_error = 1, config_error = 2, no_convergence = 3, degenerate = 4 };

int report(const char* kind, const std::exception& e, int code) {
    std::cerr << "circqft: " << kind << ": " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circulant two-qubit Fourier-gate simulator"};
    app.require_subcommand(1);

    circqft::RunOptions opt;
    double tolerance = 0.0;
    std::uint64_t seed = 1;
    app.add_option("--tolerance", tolerance, "integrator tolerance (overrides the config)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out_dir, "output directory for CSV files")->capture_default_str();
    app.add_option("--threads", opt.threads, "worker threads for sweeps")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized comparisons")->capture_default_str();

    std::string figure_id;
    auto* figure = app.add_subcommand("figure", "reproduce a figure as CSV");
    figure->add_option("id", figure_id, "figure id")->required()->check(CLI::IsMember(circqft::figure_ids()));

    std::string path;
    auto* scenario = app.add_subcommand("scenario", "propagate a scenario config");
    scenario->add_option("path", path, "scenario INI file")->required()->check(CLI::ExistingFile);

    int k = 0, p = 0;
    auto* tune = app.add_subcommand("tune", "tune detunings for winding numbers k > p");
    tune->add_option("k", k, "alpha2 winding")->required();
    tune->add_option("p", p, "beta2 winding")->required();
    tune->add_option("path", path, "base scenario INI file")->required()->check(CLI::ExistingFile);

    auto* sweep = app.add_subcommand("sweep", "sweep one schedule parameter");
    sweep->add_option("path", path, "sweep INI file")->required()->check(CLI::ExistingFile);

    auto* ion = app.add_subcommand("ion-chain", "transverse modes and effective coupling");
    ion->add_option("path", path, "ion-chain INI file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return config_error;
    }
    if (app.count("--tolerance")) opt.tolerance = tolerance;
    opt.seed = seed;

    try {
        if (*figure) {
            const auto out = circqft::run_figure(figure_id, opt);
            for (const auto& line : out.notes) std::cout << line << '\n';
            for (const auto& f : out.files) std::cout << "csv = " << f << '\n';
        } else if (*scenario) {
            std::cout << circqft::describe(circqft::run_scenario(circqft::load_config(path), opt));
        } else if (*tune) {
            std::cout << circqft::describe(circqft::run_tune(k, p, circqft::load_config(path), opt));
        } else if (*sweep) {
            const auto r = circqft::run_sweep(circqft::load_sweep(path), opt);
            std::cout << "points = " << r.rows.size() << "\ncsv = " << r.csv_path << '\n';
        } else if (*ion) {
            const auto r = circqft::run_ion_chain(path, opt);
            for (const auto& w : r.warnings) std::cerr << "circqft: warning: " << w << '\n';
            std::cout << circqft::describe(r);
        }
    } catch (const circqft::ConfigError& e) {
        return report("config error", e, config_error);
    } catch (const circqft::NonConvergenceError& e) {
        return report("no convergence", e, no_convergence);
    } catch (const circqft::DegeneracyError& e) {
        return report("degeneracy", e, degenerate);
    } catch (const circqft::InstabilityError& e) {
        return report("instability", e, degenerate);
    } catch (const circqft::SymmetryError& e) {
        return report("symmetry", e, degenerate);
    } catch (const std::ios_base::failure& e) {
        return report("io", e, io_error);
    } catch (const std::invalid_argument& e) {
        return report("invalid input", e, config_error);
    } catch (const std::exception& e) {
        return report("error", e, io_error);
    }
    return ok;
}
