#pragma once

#include <vector>

#include "limiter_lab/errors.hpp"

namespace limlab::opl {

enum class Direction { kForward, kBackward };

/// Irreversible degradation states, ordered by severity. Transitions only go
/// forward: Pristine -> BackwardLeaky -> ForwardLeaky -> Damaged.
enum class Regime { kPristine = 0, kBackwardLeaky = 1, kForwardLeaky = 2, kDamaged = 3 };

const char* to_string(Regime regime);
const char* to_string(Direction direction);

/// Two-piece steady-state transfer curve: linear below the knee, near-flat
/// clamp line above it. Continuous at the knee by construction.
struct SteadyStateModel {
    double linear_gain = 0.0;  // small-signal transmittance, in (0, 1]
    double knee_w = 0.0;
    double clamp_c0_w = 0.0;
    double clamp_c1 = 0.0;  // residual clamp-region slope, |c1| small

    double eval(double input_w) const;

    /// Builds the curve from a clamp ceiling measured at `ref_input_w` and the
    /// fraction of the ceiling already reached at the knee.
    static SteadyStateModel from_ceiling(double ceiling_w, double knee_w,
                                         double rise_fraction = 0.85,
                                         double ref_input_w = 0.2);
};

struct LeakThresholds {
    double backward_leak_w = 1.0;
    double forward_leak_w = 2.0;
    double destruction_w = 4.0;
};

struct LeakMultipliers {
    double backward = 1.0;  // applied to backward output once BackwardLeaky
    double forward = 1.0;   // applied to forward output once ForwardLeaky
};

/// Phenomenological parameters of one limiter build.
struct PrismSpec {
    double length_mm = 25.4;
    SteadyStateModel forward;
    SteadyStateModel backward;
    double activation_tau_s = 0.2;
    double thermal_rise_k_per_w_s = 1.75;  // a in dT/dt = a*P - b*(T - ambient)
    double thermal_decay_per_s = 0.01;     // b
    double thermal_substep_s = 0.004;      // integrator substep, default tau/50
    LeakThresholds leak_thresholds;
    LeakMultipliers leak_multipliers;
    double damaged_output_w = 4.0e-8;

    double clamp_ceiling_forward_w() const { return forward.eval(0.2); }
    double clamp_ceiling_backward_w() const { return backward.eval(0.2); }
    double linear_gain_low_power() const { return forward.linear_gain; }

    void validate() const;  // throws ValidationError
};

/// Mutable device condition. Regime never reverts.
struct OplState {
    double temperature_c = 20.0;
    double ambient_c = 20.0;
    Regime regime = Regime::kPristine;
    double max_exposure_w = 0.0;
    double elapsed_on_s = 0.0;
};

OplState initial_state(double ambient_c = 20.0);

struct CalibrationPoint {
    double input_w = 0.0;
    double output_w = 0.0;
};

struct CalibrationTable {
    Direction direction = Direction::kForward;
    std::vector<CalibrationPoint> points;

    void validate() const;  // throws ValidationError / FitError
};

struct FitReport {
    double max_abs_residual_w = 0.0;
    double max_rel_residual = 0.0;  // relative to |output|, zero outputs skipped
    double rmse_w = 0.0;
};

struct FitResult {
    SteadyStateModel model;
    FitReport report;
};

/// Fits the two-piece model to measured points by scanning knee candidates and
/// solving the continuity-constrained least squares problem for each.
FitResult fit_calibration(const CalibrationTable& table);

/// Steady-state transmitted power for the given device condition. Clamped to
/// the input (the device is passive).
double steady_state_output(const PrismSpec& spec, const OplState& state, double input_w,
                           Direction direction);

/// Output during limiter activation: decays exponentially from the cold
/// (small-signal) value to the steady value with time constant tau.
double transient_output(const PrismSpec& spec, const OplState& state, double input_w,
                        double t_since_on_s);

/// Advances prism temperature over dt_s under constant illumination.
OplState step_thermal(const PrismSpec& spec, const OplState& state, double input_w,
                      double dt_s);

/// Records exposure and promotes the degradation regime when thresholds are
/// crossed. Never demotes.
OplState update_regime(const PrismSpec& spec, const OplState& state, double exposure_w);

double equilibrium_temperature_c(const PrismSpec& spec, double input_w, double ambient_c);

}  // namespace limlab::opl
