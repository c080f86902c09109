#pragma once

#include <vector>

#include "limiter_lab/opl_model.hpp"
#include "limiter_lab/pulse_sim.hpp"

namespace limlab::attack {

/// Stepped c.w. injection protocol: a strong forward test, a weak forward
/// probe and a weak backward probe per round, with the strong power raised by
/// step_w each round until it reaches stop_w.
struct CwCycleScenario {
    double start_w = 0.223;
    double step_w = 0.2;
    double stop_w = 5.0;
    double eve_weak_w = 0.223;
    double alice_weak_w = 0.003;
    double strong_duration_s = 120.0;
    double weak_duration_s = 15.0;

    void validate() const;
};

struct LongExposureScenario {
    double power_w = 0.2;
    double duration_s = 1200.0;
    double sample_dt_s = 0.1;

    void validate() const;
};

struct PulseInjectionScenario {
    std::vector<pulse::PulseTrain> trains;
    double duration_s = 600.0;   // slow trains: scatter-sampling window
    double sample_dt_s = 0.1;

    void validate() const;
};

struct CycleRecord {
    int k = 0;
    double eve_strong_in_w = 0.0;
    double eve_strong_out_w = 0.0;
    double eve_weak_out_w = 0.0;
    double alice_weak_out_w = 0.0;
    double max_temperature_c = 0.0;
    opl::Regime regime_after = opl::Regime::kPristine;
};

struct SeriesSample {
    double t_s = 0.0;
    double output_w = 0.0;
    double temperature_c = 0.0;
};

using TimeSeries = std::vector<SeriesSample>;

struct PulseRunResult {
    std::vector<pulse::PulseResponse> summaries;  // one per train
    std::vector<TimeSeries> series;               // one per train
};

std::vector<CycleRecord> run_cw_cycle(const opl::PrismSpec& spec, const CwCycleScenario& sc);

TimeSeries run_long_exposure(const opl::PrismSpec& spec, const LongExposureScenario& sc);

/// Pulse trains whose width reaches the activation time are replayed through
/// the transient model (each on-phase restarts the activation exponential);
/// faster trains use the anchor-grid peak model and emit a few periods of the
/// output waveform.
PulseRunResult run_pulse_injection(const opl::PrismSpec& spec, const PulseInjectionScenario& sc);

}  // namespace limlab::attack
