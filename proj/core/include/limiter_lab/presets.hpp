#pragma once

#include <array>

#include "limiter_lab/opl_model.hpp"

namespace limlab::presets {

/// Prism lengths of the three characterized builds, in mm.
inline constexpr std::array<double, 3> kLengthsMm = {25.4, 50.8, 101.6};

/// Replicate sample groups of the c.w. cycle campaign.
enum class CycleGroup { kA, kB, kC };

const char* to_string(CycleGroup group);
CycleGroup cycle_group_from_string(const char* name);  // "a" | "b" | "c"

/// Bench-calibrated build: forward clamp ceilings 1.2 mW / 551 uW / 114 uW at
/// 200 mW input, clamping engaged from 40 mW.
opl::PrismSpec calibrated_build(double length_mm);

/// Per-group replicate sample used in the c.w. cycle scenario. Groups differ
/// in baseline transmission and in the leak multipliers.
opl::PrismSpec cycle_build(CycleGroup group, double length_mm);

/// Sample set used for the pulsed-injection campaign (noticeably more
/// transmissive than the calibrated build).
opl::PrismSpec pulse_build(double length_mm);

}  // namespace limlab::presets
