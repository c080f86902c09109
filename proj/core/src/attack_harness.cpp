#include "limiter_lab/attack_harness.hpp"

#include <algorithm>
#include <cmath>

namespace limlab::attack {

void CwCycleScenario::validate() const {
    if (start_w < 0.0 || start_w > stop_w) {
        throw ValidationError("CwCycleScenario: need 0 <= start_w <= stop_w");
    }
    if (step_w <= 0.0) throw ValidationError("CwCycleScenario: step_w must be > 0");
    if (eve_weak_w < 0.0 || alice_weak_w < 0.0) {
        throw ValidationError("CwCycleScenario: probe powers must be >= 0");
    }
    if (strong_duration_s <= 0.0 || weak_duration_s <= 0.0) {
        throw ValidationError("CwCycleScenario: durations must be > 0");
    }
}

void LongExposureScenario::validate() const {
    if (power_w < 0.0) throw ValidationError("LongExposureScenario: power must be >= 0");
    if (duration_s < 0.0) throw ValidationError("LongExposureScenario: duration must be >= 0");
    if (sample_dt_s <= 0.0) throw ValidationError("LongExposureScenario: sample_dt must be > 0");
}

void PulseInjectionScenario::validate() const {
    for (const auto& train : trains) train.validate();
    if (duration_s < 0.0) throw ValidationError("PulseInjectionScenario: negative duration");
    if (sample_dt_s <= 0.0) throw ValidationError("PulseInjectionScenario: sample_dt must be > 0");
}

std::vector<CycleRecord> run_cw_cycle(const opl::PrismSpec& spec, const CwCycleScenario& sc) {
    sc.validate();
    spec.validate();
    std::vector<CycleRecord> records;
    opl::OplState state = opl::initial_state();
    for (int k = 0;; ++k) {
        const double strong_w = sc.start_w + k * sc.step_w;
        CycleRecord rec;
        rec.k = k;
        rec.eve_strong_in_w = strong_w;

        // Eve-strong test: the prism degrades and heats through the full step.
        state = opl::update_regime(spec, state, strong_w);
        state = opl::step_thermal(spec, state, strong_w, sc.strong_duration_s);
        rec.eve_strong_out_w =
            opl::steady_state_output(spec, state, strong_w, opl::Direction::kForward);
        rec.max_temperature_c = state.temperature_c;

        // Eve-weak test (forward probe).
        state = opl::step_thermal(spec, state, sc.eve_weak_w, sc.weak_duration_s);
        rec.eve_weak_out_w =
            opl::steady_state_output(spec, state, sc.eve_weak_w, opl::Direction::kForward);

        // Alice-weak test (backward probe).
        state = opl::step_thermal(spec, state, sc.alice_weak_w, sc.weak_duration_s);
        rec.alice_weak_out_w =
            opl::steady_state_output(spec, state, sc.alice_weak_w, opl::Direction::kBackward);

        rec.regime_after = state.regime;
        records.push_back(rec);
        if (strong_w >= sc.stop_w) break;
    }
    return records;
}

TimeSeries run_long_exposure(const opl::PrismSpec& spec, const LongExposureScenario& sc) {
    sc.validate();
    spec.validate();
    TimeSeries series;
    opl::OplState state = opl::initial_state();
    state = opl::update_regime(spec, state, sc.power_w);
    const auto samples = static_cast<std::size_t>(std::floor(sc.duration_s / sc.sample_dt_s));
    series.reserve(samples);
    for (std::size_t i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) * sc.sample_dt_s;
        state = opl::step_thermal(spec, state, sc.power_w, sc.sample_dt_s);
        series.push_back({t, opl::transient_output(spec, state, sc.power_w, t),
                          state.temperature_c});
    }
    return series;
}

namespace {

// Slow train: replay through the transient model. Every on-phase restarts the
// activation exponential; off-phases transmit nothing.
TimeSeries slow_train_series(const opl::PrismSpec& spec, const pulse::PulseTrain& train,
                             double duration_s, double dt_s, pulse::PulseResponse& summary) {
    TimeSeries series;
    opl::OplState state = opl::initial_state();
    state = opl::update_regime(spec, state, train.peak_w);
    const double period = 1.0 / train.rep_rate_hz;
    const auto samples = static_cast<std::size_t>(std::floor(duration_s / dt_s));
    series.reserve(samples);
    summary.cw_equivalent_out_w =
        opl::steady_state_output(spec, state, train.peak_w, opl::Direction::kForward);
    summary.peak_out_w = 0.0;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) * dt_s;
        const double phase = std::fmod(t, period);
        const bool on = phase < train.width_s;
        state = opl::step_thermal(spec, state, on ? train.peak_w : 0.0, dt_s);
        const double out = on ? opl::transient_output(spec, state, train.peak_w, phase) : 0.0;
        summary.peak_out_w = std::max(summary.peak_out_w, out);
        series.push_back({t, out, state.temperature_c});
    }
    summary.ratio = summary.cw_equivalent_out_w > 0.0
                        ? summary.peak_out_w / summary.cw_equivalent_out_w
                        : 0.0;
    return series;
}

// Fast train: rectangular output waveform over a few periods at the
// anchor-model peak.
TimeSeries fast_train_series(const opl::PrismSpec& spec, const pulse::PulseTrain& train,
                             pulse::PulseResponse& summary) {
    constexpr int kPeriods = 3;
    constexpr int kSamplesPerPeriod = 64;
    const opl::OplState state = opl::initial_state();
    summary = pulse::transmitted_peak(spec, state, train);
    TimeSeries series;
    const double period = 1.0 / train.rep_rate_hz;
    const double dt = period / kSamplesPerPeriod;
    series.reserve(kPeriods * kSamplesPerPeriod);
    for (int i = 0; i < kPeriods * kSamplesPerPeriod; ++i) {
        const double t = i * dt;
        const bool on = std::fmod(t, period) < train.width_s;
        series.push_back({t, on ? summary.peak_out_w : 0.0, state.temperature_c});
    }
    return series;
}

}  // namespace

PulseRunResult run_pulse_injection(const opl::PrismSpec& spec,
                                   const PulseInjectionScenario& sc) {
    sc.validate();
    spec.validate();
    PulseRunResult result;
    for (const auto& train : sc.trains) {
        pulse::PulseResponse summary;
        if (train.width_s >= spec.activation_tau_s) {
            result.series.push_back(
                slow_train_series(spec, train, sc.duration_s, sc.sample_dt_s, summary));
        } else {
            result.series.push_back(fast_train_series(spec, train, summary));
        }
        result.summaries.push_back(summary);
    }
    return result;
}

}  // namespace limlab::attack
