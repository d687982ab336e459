#pragma once

#include <numbers>

// Internal units: angular frequency in rad/ms, time in ms. User-facing
// values are "frequency/2pi in kHz", the way figure captions quote them.
namespace circqft::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// kHz (cyclic) -> rad/ms.
constexpr double from_khz(double f_khz) { return two_pi * f_khz; }

// rad/ms -> kHz (cyclic).
constexpr double to_khz(double omega) { return omega / two_pi; }

// Phase given in units of pi -> rad.
constexpr double from_pi_units(double x) { return pi * x; }

constexpr double to_pi_units(double rad) { return rad / pi; }

// rad/ms -> rad/s.
constexpr double to_per_second(double omega) { return omega * 1e3; }

}  // namespace circqft::units
