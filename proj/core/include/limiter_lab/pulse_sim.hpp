#pragma once

#include "limiter_lab/isolation.hpp"
#include "limiter_lab/opl_model.hpp"

namespace limlab::pulse {

/// Rectangular pulse train. duty = rep_rate * width must stay in (0, 1].
struct PulseTrain {
    double rep_rate_hz = 0.0;
    double width_s = 0.0;
    double peak_w = 0.0;
    double wavelength_nm = 1550.0;

    double duty() const { return rep_rate_hz * width_s; }
    void validate() const;
};

struct PulseResponse {
    double peak_out_w = 0.0;
    double cw_equivalent_out_w = 0.0;
    double ratio = 0.0;  // peak_out / cw_equivalent where the latter is > 0
};

/// peak * rep_rate * width. Throws if the train is invalid.
double average_power(const PulseTrain& train);

/// Photons per pulse at the train wavelength: peak * width / (h*c/lambda).
double photons_per_pulse(const PulseTrain& train);

/// Measured band of peak-to-c.w. transmission ratios for MHz-GHz trains.
inline constexpr double kPeakRatioMin = 5.627;
inline constexpr double kPeakRatioMax = 16.969;

/// Peak/c.w. transmission ratio interpolated from the measured anchor grid
/// (40 MHz and 1 GHz, three lengths, averages 10-80 mW), clamped to the
/// measured band. Queries outside the grid are clamped to its edge.
double peak_ratio(double rep_rate_hz, double length_mm, double average_w);

/// Elevated peak transmission of a fast pulse train. The c.w. equivalent is
/// the steady-state output at the train's average power; the peak applies the
/// anchor-grid ratio, corrected toward 1 as duty approaches 1.
PulseResponse transmitted_peak(const opl::PrismSpec& spec, const opl::OplState& state,
                               const PulseTrain& train);

/// One anchor-grid node (an observed transmitted peak).
struct PeakAnchor {
    double rep_rate_hz;
    double length_mm;
    double average_w;
    double peak_out_w;
};

/// Full anchor grid, row-major over (rate, length, average).
const std::vector<PeakAnchor>& peak_anchor_table();

/// Budget behind the published leakage counts: chi from the per-pulse energy
/// the published numbers correspond to (the measurement basis itself was not
/// reported). Accepts 40e6 or 1e9.
iso::LeakageBudget reported_leakage_budget(double clock_rate_hz);

/// Conservative budget: chi from the largest transmitted peak in the anchor
/// grid at that rate. Always at least the reported count.
iso::LeakageBudget worst_case_leakage_budget(double clock_rate_hz);

}  // namespace limlab::pulse
