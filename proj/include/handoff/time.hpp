// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_TIME_HPP
#define HANDOFF_TIME_HPP

#include <cstdint>

namespace handoff {

// Simulated time in microseconds since simulation start. Integer to keep
// event ordering free of float drift.
using SimTime = std::uint64_t;

constexpr SimTime us(std::uint64_t v) { return v; }
constexpr SimTime ms(std::uint64_t v) { return v * 1000ULL; }
constexpr SimTime seconds(std::uint64_t v) { return v * 1000000ULL; }

constexpr double to_ms(SimTime t) { return static_cast<double>(t) / 1000.0; }
constexpr double to_seconds(SimTime t) { return static_cast<double>(t) / 1e6; }

// Millisecond (possibly fractional) config value to SimTime.
constexpr SimTime ms_f(double v) { return static_cast<SimTime>(v * 1000.0 + 0.5); }

}  // namespace handoff

#endif
