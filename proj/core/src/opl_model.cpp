#include "limiter_lab/opl_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace limlab::opl {

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::kPristine: return "pristine";
        case Regime::kBackwardLeaky: return "backward-leaky";
        case Regime::kForwardLeaky: return "forward-leaky";
        case Regime::kDamaged: return "damaged";
    }
    return "unknown";
}

const char* to_string(Direction direction) {
    return direction == Direction::kForward ? "forward" : "backward";
}

double SteadyStateModel::eval(double input_w) const {
    if (input_w < 0.0) {
        throw ValidationError("SteadyStateModel: negative input power");
    }
    if (input_w <= knee_w) {
        return linear_gain * input_w;
    }
    return clamp_c0_w + clamp_c1 * input_w;
}

SteadyStateModel SteadyStateModel::from_ceiling(double ceiling_w, double knee_w,
                                                double rise_fraction, double ref_input_w) {
    if (ceiling_w < 0.0 || knee_w <= 0.0 || ref_input_w <= knee_w) {
        throw ValidationError("SteadyStateModel::from_ceiling: bad geometry");
    }
    if (rise_fraction <= 0.0 || rise_fraction > 1.0) {
        throw ValidationError("SteadyStateModel::from_ceiling: rise_fraction outside (0,1]");
    }
    SteadyStateModel m;
    m.knee_w = knee_w;
    m.linear_gain = rise_fraction * ceiling_w / knee_w;
    m.clamp_c1 = (1.0 - rise_fraction) * ceiling_w / (ref_input_w - knee_w);
    m.clamp_c0_w = ceiling_w - m.clamp_c1 * ref_input_w;
    return m;
}

void PrismSpec::validate() const {
    if (length_mm <= 0.0) throw ValidationError("PrismSpec: length_mm must be > 0");
    if (forward.linear_gain <= 0.0 || forward.linear_gain > 1.0) {
        throw ValidationError("PrismSpec: forward linear gain outside (0,1]");
    }
    if (backward.linear_gain <= 0.0 || backward.linear_gain > 1.0) {
        throw ValidationError("PrismSpec: backward linear gain outside (0,1]");
    }
    if (activation_tau_s <= 0.0) throw ValidationError("PrismSpec: activation_tau_s must be > 0");
    if (thermal_rise_k_per_w_s < 0.0 || thermal_decay_per_s <= 0.0 || thermal_substep_s <= 0.0) {
        throw ValidationError("PrismSpec: bad thermal coefficients");
    }
    const auto& t = leak_thresholds;
    if (!(t.backward_leak_w < t.forward_leak_w && t.forward_leak_w < t.destruction_w)) {
        throw ValidationError("PrismSpec: leak thresholds must be strictly increasing");
    }
    if (t.backward_leak_w <= 0.0) throw ValidationError("PrismSpec: thresholds must be positive");
    if (leak_multipliers.backward < 1.0 || leak_multipliers.forward < 1.0) {
        throw ValidationError("PrismSpec: leak multipliers must be >= 1");
    }
    if (damaged_output_w < 0.0) throw ValidationError("PrismSpec: damaged_output_w must be >= 0");
}

OplState initial_state(double ambient_c) {
    OplState s;
    s.temperature_c = ambient_c;
    s.ambient_c = ambient_c;
    return s;
}

void CalibrationTable::validate() const {
    if (points.size() < 4) {
        throw FitError("calibration table needs at least 4 points, got " +
                       std::to_string(points.size()));
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].input_w < 0.0 || points[i].output_w < 0.0) {
            throw ValidationError("calibration point " + std::to_string(i) +
                                  " has a negative power");
        }
        if (i > 0 && points[i].input_w <= points[i - 1].input_w) {
            throw ValidationError("calibration inputs must be strictly increasing (point " +
                                  std::to_string(i) + ")");
        }
    }
}

namespace {

struct KneeFit {
    double sse = std::numeric_limits<double>::infinity();
    double linear_gain = 0.0;
    double clamp_c1 = 0.0;
};

// Least squares for a fixed knee k: left points on y = G*x, right points on
// y = G*k + c1*(x - k). Continuity at the knee is built into the parametrization.
KneeFit solve_at_knee(const std::vector<CalibrationPoint>& pts, double k) {
    double a = 0.0, b = 0.0;       // sum x^2, sum x*y over the left set
    double s1 = 0.0, s2 = 0.0;     // sum (x-k), sum (x-k)^2 over the right set
    double t0 = 0.0, t1 = 0.0;     // sum y, sum (x-k)*y over the right set
    std::size_t n_right = 0;
    for (const auto& p : pts) {
        if (p.input_w <= k) {
            a += p.input_w * p.input_w;
            b += p.input_w * p.output_w;
        } else {
            const double dx = p.input_w - k;
            s1 += dx;
            s2 += dx * dx;
            t0 += p.output_w;
            t1 += dx * p.output_w;
            ++n_right;
        }
    }
    // Normal equations for (G, c1).
    const double m00 = a + k * k * static_cast<double>(n_right);
    const double m01 = k * s1;
    const double m11 = s2;
    const double r0 = b + k * t0;
    const double r1 = t1;

    KneeFit fit;
    if (n_right == 0) {
        if (a <= 0.0) return fit;
        fit.linear_gain = b / a;
        fit.clamp_c1 = 0.0;
    } else {
        const double det = m00 * m11 - m01 * m01;
        if (std::abs(det) < 1e-300) return fit;
        fit.linear_gain = (r0 * m11 - m01 * r1) / det;
        fit.clamp_c1 = (m00 * r1 - m01 * r0) / det;
    }
    double sse = 0.0;
    for (const auto& p : pts) {
        const double predicted = p.input_w <= k
                                     ? fit.linear_gain * p.input_w
                                     : fit.linear_gain * k + fit.clamp_c1 * (p.input_w - k);
        const double r = predicted - p.output_w;
        sse += r * r;
    }
    fit.sse = sse;
    return fit;
}

}  // namespace

FitResult fit_calibration(const CalibrationTable& table) {
    table.validate();
    const auto& pts = table.points;
    const double lo = pts.front().input_w;
    const double hi = pts.back().input_w;
    if (hi <= lo) throw FitError("degenerate calibration input range");

    // Coarse scan over knee candidates, then golden-section refinement around
    // the best cell. The SSE has kinks at data abscissae, so the scan includes
    // every point and a dense grid between them.
    double best_k = hi;
    KneeFit best = solve_at_knee(pts, hi);
    const int kGridSteps = 512;
    for (int i = 0; i <= kGridSteps; ++i) {
        const double k = lo + (hi - lo) * static_cast<double>(i) / kGridSteps;
        const KneeFit f = solve_at_knee(pts, k);
        if (f.sse < best.sse) {
            best = f;
            best_k = k;
        }
    }
    const double cell = (hi - lo) / kGridSteps;
    double a = std::max(lo, best_k - cell);
    double b = std::min(hi, best_k + cell);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = solve_at_knee(pts, x1).sse;
    double f2 = solve_at_knee(pts, x2).sse;
    for (int it = 0; it < 200 && (b - a) > 1e-15 * hi; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = solve_at_knee(pts, x1).sse;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = solve_at_knee(pts, x2).sse;
        }
    }
    const double k_refined = 0.5 * (a + b);
    const KneeFit refined = solve_at_knee(pts, k_refined);
    if (refined.sse <= best.sse) {
        best = refined;
        best_k = k_refined;
    }
    if (!std::isfinite(best.sse)) throw FitError("calibration fit did not converge");

    FitResult result;
    result.model.linear_gain = std::clamp(best.linear_gain, 0.0, 1.0);
    result.model.knee_w = best_k;
    result.model.clamp_c1 = best.clamp_c1;
    result.model.clamp_c0_w = result.model.linear_gain * best_k - best.clamp_c1 * best_k;

    double sse = 0.0;
    for (const auto& p : pts) {
        const double r = result.model.eval(p.input_w) - p.output_w;
        sse += r * r;
        result.report.max_abs_residual_w = std::max(result.report.max_abs_residual_w, std::abs(r));
        if (p.output_w > 0.0) {
            result.report.max_rel_residual =
                std::max(result.report.max_rel_residual, std::abs(r) / p.output_w);
        }
    }
    result.report.rmse_w = std::sqrt(sse / static_cast<double>(pts.size()));
    return result;
}

double steady_state_output(const PrismSpec& spec, const OplState& state, double input_w,
                           Direction direction) {
    if (input_w < 0.0) throw ValidationError("steady_state_output: negative input power");
    if (state.regime == Regime::kDamaged) {
        // Scattering damage crushes transmission at every power; saturates at
        // the damaged floor for inputs of 1 W and above.
        return spec.damaged_output_w * std::min(input_w, 1.0);
    }
    const SteadyStateModel& m =
        direction == Direction::kForward ? spec.forward : spec.backward;
    double out = m.eval(input_w);
    if (direction == Direction::kBackward && state.regime >= Regime::kBackwardLeaky) {
        out *= spec.leak_multipliers.backward;
    }
    if (direction == Direction::kForward && state.regime >= Regime::kForwardLeaky) {
        out *= spec.leak_multipliers.forward;
    }
    return std::min(out, input_w);
}

double transient_output(const PrismSpec& spec, const OplState& state, double input_w,
                        double t_since_on_s) {
    if (t_since_on_s < 0.0) throw ValidationError("transient_output: negative time");
    const double steady = steady_state_output(spec, state, input_w, Direction::kForward);
    if (state.regime == Regime::kDamaged) return steady;
    double cold_gain = spec.forward.linear_gain;
    if (state.regime >= Regime::kForwardLeaky) cold_gain *= spec.leak_multipliers.forward;
    const double cold = std::min(cold_gain * input_w, input_w);
    return steady + (cold - steady) * std::exp(-t_since_on_s / spec.activation_tau_s);
}

OplState step_thermal(const PrismSpec& spec, const OplState& state, double input_w,
                      double dt_s) {
    if (dt_s <= 0.0) throw ValidationError("step_thermal: dt_s must be > 0");
    if (input_w < 0.0) throw ValidationError("step_thermal: negative input power");
    OplState next = state;
    const double a = spec.thermal_rise_k_per_w_s;
    const double b = spec.thermal_decay_per_s;
    // Forward-Euler with a fixed substep so that coarse and fine outer steps
    // integrate the same trajectory.
    double remaining = dt_s;
    while (remaining > 0.0) {
        const double h = std::min(remaining, spec.thermal_substep_s);
        next.temperature_c += h * (a * input_w - b * (next.temperature_c - next.ambient_c));
        remaining -= h;
    }
    next.elapsed_on_s += dt_s;
    return next;
}

OplState update_regime(const PrismSpec& spec, const OplState& state, double exposure_w) {
    if (exposure_w < 0.0) throw ValidationError("update_regime: negative exposure");
    OplState next = state;
    next.max_exposure_w = std::max(state.max_exposure_w, exposure_w);
    Regime reached = Regime::kPristine;
    if (next.max_exposure_w > spec.leak_thresholds.destruction_w) {
        reached = Regime::kDamaged;
    } else if (next.max_exposure_w >= spec.leak_thresholds.forward_leak_w) {
        reached = Regime::kForwardLeaky;
    } else if (next.max_exposure_w >= spec.leak_thresholds.backward_leak_w) {
        reached = Regime::kBackwardLeaky;
    }
    next.regime = std::max(state.regime, reached);
    return next;
}

double equilibrium_temperature_c(const PrismSpec& spec, double input_w, double ambient_c) {
    return ambient_c + spec.thermal_rise_k_per_w_s * input_w / spec.thermal_decay_per_s;
}

}  // namespace limlab::opl
