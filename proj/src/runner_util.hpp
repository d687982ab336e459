#pragma once

// Helpers shared by the runner and figure sources.

#include "circqft/config.hpp"
#include "circqft/csv.hpp"
#include "circqft/runner.hpp"
#include "circqft/spectral.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace circqft {

// Joins a file name onto opt.out_dir, creating the directory.
std::string output_path(const RunOptions& opt, const std::string& file);

// Branch name, using nu/chi names for rabi_controlled.
std::string branch_label(Variant v, Branch b);

// The Fourier-gate target applies (case2 or exponential at phi = pi/4).
bool gate_applicable(const RampSchedule& s);

bool branches_end_on_fourier(const RampSchedule& s);

// |<psi_f(b)| u |b(0)>|^2 per Branch.
std::array<double, 4> branch_transfer(const RampSchedule& s, const Op4& u);

// Units note and the full INI text as comment lines.
void echo_config(CsvWriter& w, const ScenarioConfig& c);

// fn(i) for i < n on up to `threads` workers; results in index order. The
// first exception in index order is rethrown after all workers finish.
std::vector<std::vector<double>> parallel_rows(std::size_t n, int threads,
                                               const std::function<std::vector<double>(std::size_t)>& fn);

}  // namespace circqft
