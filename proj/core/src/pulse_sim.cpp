#include "limiter_lab/pulse_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "limiter_lab/presets.hpp"

namespace limlab::pulse {

namespace {

constexpr double kPlanckJs = 6.62607015e-34;
constexpr double kSpeedOfLightMps = 299792458.0;

constexpr std::array<double, 2> kRateGridHz = {40e6, 1e9};
constexpr std::array<double, 5> kAvgGridW = {0.010, 0.020, 0.030, 0.060, 0.080};

// Observed transmitted peaks, W, indexed [rate][length][average].
constexpr double kPeakGridW[2][3][5] = {
    {
        // 40 MHz, 4 ns pulses
        {15.0e-3, 27.0e-3, 38.83e-3, 56.59e-3, 45.2e-3},
        {6.3e-3, 10.8e-3, 13.8e-3, 38.83e-3, 18.0e-3},
        {4.0e-3, 4.5e-3, 5.0e-3, 13.69e-3, 4.84e-3},
    },
    {
        // 1 GHz, 200 ps pulses
        {28.87e-3, 45.0e-3, 55.31e-3, 52.0e-3, 45.5e-3},
        {7.0e-3, 11.0e-3, 14.0e-3, 19.33e-3, 18.6e-3},
        {4.3e-3, 5.2e-3, 5.41e-3, 4.9e-3, 4.85e-3},
    },
};

// Pulse widths the grid was measured with; defines the duty each ratio node
// corresponds to.
constexpr std::array<double, 2> kGridWidthS = {4e-9, 200e-12};

struct RatioGrid {
    double v[2][3][5];
};

// Ratio nodes: observed peak divided by the c.w. output of the matching pulse
// build at the same average power.
const RatioGrid& ratio_grid() {
    static const RatioGrid grid = [] {
        RatioGrid g{};
        const auto pristine = opl::initial_state();
        for (int r = 0; r < 2; ++r) {
            for (int l = 0; l < 3; ++l) {
                const auto spec = presets::pulse_build(presets::kLengthsMm[l]);
                for (int a = 0; a < 5; ++a) {
                    const double cw = opl::steady_state_output(spec, pristine, kAvgGridW[a],
                                                               opl::Direction::kForward);
                    g.v[r][l][a] = kPeakGridW[r][l][a] / cw;
                }
            }
        }
        return g;
    }();
    return grid;
}

double lerp_clamped(double x, double x0, double x1, double y0, double y1) {
    if (x <= x0) return y0;
    if (x >= x1) return y1;
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

double interp_avg(const double (&row)[5], double average_w) {
    if (average_w <= kAvgGridW.front()) return row[0];
    if (average_w >= kAvgGridW.back()) return row[4];
    std::size_t i = 1;
    while (kAvgGridW[i] < average_w) ++i;
    return lerp_clamped(average_w, kAvgGridW[i - 1], kAvgGridW[i], row[i - 1], row[i]);
}

double interp_length(const double (&plane)[3][5], double length_mm, double average_w) {
    const auto& lengths = presets::kLengthsMm;
    if (length_mm <= lengths.front()) return interp_avg(plane[0], average_w);
    if (length_mm >= lengths.back()) return interp_avg(plane[2], average_w);
    std::size_t i = 1;
    while (lengths[i] < length_mm) ++i;
    const double lo = interp_avg(plane[i - 1], average_w);
    const double hi = interp_avg(plane[i], average_w);
    return lerp_clamped(length_mm, lengths[i - 1], lengths[i], lo, hi);
}

double rate_fraction(double rep_rate_hz) {
    const double lr = std::log10(std::max(rep_rate_hz, 1.0));
    return std::clamp((lr - std::log10(kRateGridHz[0])) /
                          (std::log10(kRateGridHz[1]) - std::log10(kRateGridHz[0])),
                      0.0, 1.0);
}

}  // namespace

void PulseTrain::validate() const {
    if (rep_rate_hz <= 0.0) throw ValidationError("PulseTrain: rep_rate_hz must be > 0");
    if (width_s <= 0.0) throw ValidationError("PulseTrain: width_s must be > 0");
    if (peak_w < 0.0) throw ValidationError("PulseTrain: peak_w must be >= 0");
    if (wavelength_nm <= 0.0) throw ValidationError("PulseTrain: wavelength_nm must be > 0");
    if (duty() > 1.0 + 1e-12) {
        throw ValidationError("PulseTrain: duty cycle exceeds 1");
    }
}

double average_power(const PulseTrain& train) {
    train.validate();
    return train.peak_w * train.rep_rate_hz * train.width_s;
}

double photons_per_pulse(const PulseTrain& train) {
    train.validate();
    const double wavelength_m = train.wavelength_nm * 1e-9;
    return train.peak_w * train.width_s * wavelength_m / (kPlanckJs * kSpeedOfLightMps);
}

double peak_ratio(double rep_rate_hz, double length_mm, double average_w) {
    const auto& grid = ratio_grid();
    const double at_40mhz = interp_length(grid.v[0], length_mm, average_w);
    const double at_1ghz = interp_length(grid.v[1], length_mm, average_w);
    const double rho = at_40mhz + (at_1ghz - at_40mhz) * rate_fraction(rep_rate_hz);
    return std::clamp(rho, kPeakRatioMin, kPeakRatioMax);
}

PulseResponse transmitted_peak(const opl::PrismSpec& spec, const opl::OplState& state,
                               const PulseTrain& train) {
    const double avg_w = average_power(train);
    PulseResponse response;
    response.cw_equivalent_out_w =
        opl::steady_state_output(spec, state, avg_w, opl::Direction::kForward);
    if (state.regime == opl::Regime::kDamaged) {
        response.peak_out_w = response.cw_equivalent_out_w;
        response.ratio = response.cw_equivalent_out_w > 0.0 ? 1.0 : 0.0;
        return response;
    }
    const double rho_band = peak_ratio(train.rep_rate_hz, spec.length_mm, avg_w);
    // The grid ratios correspond to the duty of the measurement widths; scale
    // toward 1 as duty approaches the c.w. limit.
    const double f = rate_fraction(train.rep_rate_hz);
    const double duty_ref =
        kRateGridHz[0] * kGridWidthS[0] +
        f * (kRateGridHz[1] * kGridWidthS[1] - kRateGridHz[0] * kGridWidthS[0]);
    const double scale = (1.0 - train.duty()) / (1.0 - duty_ref);
    const double rho = std::clamp(1.0 + (rho_band - 1.0) * scale, 1.0, kPeakRatioMax);
    response.peak_out_w = std::min(rho * response.cw_equivalent_out_w, train.peak_w);
    response.ratio = response.cw_equivalent_out_w > 0.0
                         ? response.peak_out_w / response.cw_equivalent_out_w
                         : 0.0;
    return response;
}

const std::vector<PeakAnchor>& peak_anchor_table() {
    static const std::vector<PeakAnchor> table = [] {
        std::vector<PeakAnchor> t;
        for (int r = 0; r < 2; ++r) {
            for (int l = 0; l < 3; ++l) {
                for (int a = 0; a < 5; ++a) {
                    t.push_back({kRateGridHz[r], presets::kLengthsMm[l], kAvgGridW[a],
                                 kPeakGridW[r][l][a]});
                }
            }
        }
        return t;
    }();
    return table;
}

namespace {

int rate_index(double clock_rate_hz) {
    for (int r = 0; r < 2; ++r) {
        if (std::abs(clock_rate_hz - kRateGridHz[r]) < 1e-3 * kRateGridHz[r]) return r;
    }
    throw ValidationError("leakage budget: only the 40 MHz and 1 GHz rates are characterized");
}

}  // namespace

iso::LeakageBudget reported_leakage_budget(double clock_rate_hz) {
    const int r = rate_index(clock_rate_hz);
    // Per-pulse energies matching the published chi of 1.39113e9 photons at
    // 40 MHz and 7.461649e7 photons at 1 GHz.
    constexpr double kReportedPeakW[2] = {1.78e-10 / 4e-9, 47.8e-3};
    const PulseTrain train{kRateGridHz[r], kGridWidthS[r], kReportedPeakW[r], 1550.0};
    return {clock_rate_hz, photons_per_pulse(train), 1e-6};
}

iso::LeakageBudget worst_case_leakage_budget(double clock_rate_hz) {
    const int r = rate_index(clock_rate_hz);
    double peak_w = 0.0;
    for (int l = 0; l < 3; ++l) {
        for (int a = 0; a < 5; ++a) peak_w = std::max(peak_w, kPeakGridW[r][l][a]);
    }
    const PulseTrain train{kRateGridHz[r], kGridWidthS[r], peak_w, 1550.0};
    return {clock_rate_hz, photons_per_pulse(train), 1e-6};
}

}  // namespace limlab::pulse
