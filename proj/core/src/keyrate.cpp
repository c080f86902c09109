#include "limiter_lab/keyrate.hpp"

#include <algorithm>
#include <cmath>

namespace limlab::qkd {

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw ValidationError("binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// ---------------------------------------------------------------------------
// BB84
// ---------------------------------------------------------------------------

void Bb84Params::validate() const {
    if (!(0.0 < nu && nu < mu)) throw ValidationError("Bb84Params: need 0 < nu < mu");
    if (dark_count_y0 < 0.0) throw ValidationError("Bb84Params: negative dark count");
    for (double p : {misalignment_e_det, detector_efficiency, internal_transmittance,
                     sifting_q, dark_error_e0}) {
        if (p < 0.0 || p > 1.0) throw ValidationError("Bb84Params: probability outside [0,1]");
    }
    if (error_correction_f < 1.0) throw ValidationError("Bb84Params: f_ec must be >= 1");
    if (fiber_loss_db_per_km < 0.0) throw ValidationError("Bb84Params: negative fiber loss");
}

namespace {

double bb84_channel_eta(const Bb84Params& p, double distance_km) {
    return p.internal_transmittance * p.detector_efficiency *
           std::pow(10.0, -p.fiber_loss_db_per_km * distance_km / 10.0);
}

}  // namespace

Bb84Observables bb84_observables(const Bb84Params& params, double distance_km, double g) {
    params.validate();
    if (distance_km < 0.0) throw ValidationError("bb84_observables: negative distance");
    if (g < 1.0) throw ValidationError("bb84_observables: g must be >= 1");
    const double eta = bb84_channel_eta(params, distance_km);
    const auto gain = [&](double intensity) {
        return params.dark_count_y0 + 1.0 - std::exp(-eta * g * intensity);
    };
    const auto error_gain = [&](double intensity) {
        return params.dark_error_e0 * params.dark_count_y0 +
               params.misalignment_e_det * (1.0 - std::exp(-eta * g * intensity));
    };
    Bb84Observables obs;
    obs.q_mu = gain(params.mu);
    obs.e_mu = error_gain(params.mu) / obs.q_mu;
    obs.q_nu = gain(params.nu);
    obs.e_nu = error_gain(params.nu) / obs.q_nu;
    return obs;
}

DecoyBounds bb84_decoy_bounds(const Bb84Observables& obs, double assumed_mu,
                              double assumed_nu, const Bb84Params& params) {
    if (!(0.0 < assumed_nu && assumed_nu < assumed_mu)) {
        throw ValidationError("bb84_decoy_bounds: need 0 < nu < mu");
    }
    const double mu = assumed_mu;
    const double nu = assumed_nu;
    const double y0 = params.dark_count_y0;
    DecoyBounds bounds;
    bounds.y1_lower = mu / (mu * nu - nu * nu) *
                      (obs.q_nu * std::exp(nu) -
                       obs.q_mu * std::exp(mu) * (nu * nu) / (mu * mu) -
                       (mu * mu - nu * nu) / (mu * mu) * y0);
    if (bounds.y1_lower > 0.0) {
        bounds.e1_upper = (obs.e_nu * obs.q_nu * std::exp(nu) - params.dark_error_e0 * y0) /
                          (bounds.y1_lower * nu);
    }
    return bounds;
}

double bb84_rate(const Bb84Observables& obs, double assumed_mu, double assumed_nu,
                 const Bb84Params& params) {
    DecoyBounds bounds = bb84_decoy_bounds(obs, assumed_mu, assumed_nu, params);
    if (bounds.y1_lower <= 0.0) return 0.0;
    bounds.y1_lower = std::min(bounds.y1_lower, 1.0);
    if (bounds.e1_upper > 0.5) return 0.0;
    bounds.e1_upper = std::max(bounds.e1_upper, 0.0);
    const double q1 = bounds.y1_lower * assumed_mu * std::exp(-assumed_mu);
    const double rate = params.sifting_q *
                        (-obs.q_mu * params.error_correction_f * binary_entropy(obs.e_mu) +
                         q1 * (1.0 - binary_entropy(bounds.e1_upper)));
    return std::max(rate, 0.0);
}

double bb84_rate_incorrect(const Bb84Params& params, double distance_km, double g) {
    return bb84_rate(bb84_observables(params, distance_km, g), params.mu, params.nu, params);
}

double bb84_rate_correct(const Bb84Params& params, double distance_km, double g) {
    return bb84_rate(bb84_observables(params, distance_km, g), g * params.mu, g * params.nu,
                     params);
}

// ---------------------------------------------------------------------------
// MDI
// ---------------------------------------------------------------------------

void MdiParams::validate() const {
    if (!(vacuum < decoy_nu && decoy_nu < signal_mu)) {
        throw ValidationError("MdiParams: need vacuum < decoy < signal");
    }
    if (vacuum != 0.0) throw ValidationError("MdiParams: vacuum intensity must be 0");
    for (double p : {relay_detector_efficiency, misalignment_e_d, dark_error_e0}) {
        if (p < 0.0 || p > 1.0) throw ValidationError("MdiParams: probability outside [0,1]");
    }
    if (dark_count_prob < 0.0 || dark_count_prob > 1.0) {
        throw ValidationError("MdiParams: dark count outside [0,1]");
    }
    if (error_correction_f < 1.0) throw ValidationError("MdiParams: f_ec must be >= 1");
    if (fiber_loss_db_per_km < 0.0) throw ValidationError("MdiParams: negative fiber loss");
}

MdiGains mdi_pair_gains(const MdiParams& params, double eta_a, double eta_b, double mu_a,
                        double mu_b) {
    const double la = eta_a * mu_a;
    const double lb = eta_b * mu_b;
    const double mu_total = la + lb;
    const double x = std::sqrt(la * lb) / 2.0;
    const double pd = params.dark_count_prob;
    const double q = 1.0 - pd;
    const double e0 = params.dark_error_e0;
    const double ed = params.misalignment_e_d;

    MdiGains gains;
    const double qc = 2.0 * q * q * std::exp(-mu_total / 2.0) *
                      (1.0 - q * std::exp(-la / 2.0)) * (1.0 - q * std::exp(-lb / 2.0));
    const double qe = 2.0 * pd * q * q * std::exp(-mu_total / 2.0) *
                      (std::cyl_bessel_i(0.0, 2.0 * x) - q * std::exp(-mu_total / 2.0));
    gains.q_rect = qc + qe;
    gains.eq_rect = ed * qc + (1.0 - ed) * qe;

    const double y = q * std::exp(-mu_total / 4.0);
    gains.q_diag = 2.0 * y * y *
                   (1.0 + 2.0 * y * y - 4.0 * y * std::cyl_bessel_i(0.0, x) +
                    std::cyl_bessel_i(0.0, 2.0 * x));
    gains.eq_diag = e0 * gains.q_diag -
                    2.0 * (e0 - ed) * y * y * (std::cyl_bessel_i(0.0, 2.0 * x) - 1.0);
    return gains;
}

double mdi_y11_true(const MdiParams& params, double eta_a, double eta_b) {
    const double pd = params.dark_count_prob;
    const double q = 1.0 - pd;
    return q * q *
           (eta_a * eta_b / 2.0 + (2.0 * eta_a + 2.0 * eta_b - 3.0 * eta_a * eta_b) * pd +
            4.0 * (1.0 - eta_a) * (1.0 - eta_b) * pd * pd);
}

namespace {

struct MdiChannel {
    const MdiParams& params;
    double eta;  // per-arm transmittance, detector efficiency included
    double g;    // true intensities are g times the assumed ones

    MdiGains observe(double assumed_a, double assumed_b) const {
        return mdi_pair_gains(params, eta, eta, g * assumed_a, g * assumed_b);
    }
};

// H(a,b) = e^{a+b} * observed value, with the analyst's intensity labels in
// the exponent. The four-term combination removes every yield with a vacuum
// component:  C(a) = sum_{n,m>=1} a^{n+m}/(n! m!) Y_nm.
struct IntensityCombos {
    double rect_gain;
    double diag_gain;
    double diag_error;
};

IntensityCombos combos_at(const MdiChannel& ch, double labeled, double analysis_value) {
    const auto h = [&](double la, double lb, double aa, double ab, int what) {
        const MdiGains gains = ch.observe(la, lb);
        const double v = what == 0 ? gains.q_rect : (what == 1 ? gains.q_diag : gains.eq_diag);
        return std::exp(aa + ab) * v;
    };
    IntensityCombos c{};
    const double a = analysis_value;
    c.rect_gain = h(labeled, labeled, a, a, 0) - h(labeled, 0, a, 0, 0) -
                  h(0, labeled, 0, a, 0) + h(0, 0, 0, 0, 0);
    c.diag_gain = h(labeled, labeled, a, a, 1) - h(labeled, 0, a, 0, 1) -
                  h(0, labeled, 0, a, 1) + h(0, 0, 0, 0, 1);
    c.diag_error = h(labeled, labeled, a, a, 2) - h(labeled, 0, a, 0, 2) -
                   h(0, labeled, 0, a, 2) + h(0, 0, 0, 0, 2);
    return c;
}

// Lower bound on Y11 from the signal/decoy combinations: the cubic terms
// cancel in mu^3*C(nu) - nu^3*C(mu) and the quartic-and-up terms only lower
// the left side.
double y11_lower(double mu, double nu, double c_nu, double c_mu) {
    return (mu * mu * mu * c_nu - nu * nu * nu * c_mu) / (mu * mu * nu * nu * (mu - nu));
}

}  // namespace

double mdi_rate(const MdiParams& params, double distance_km, double g, AnalysisMode mode) {
    params.validate();
    if (distance_km < 0.0) throw ValidationError("mdi_rate: negative distance");
    if (g < 1.0) throw ValidationError("mdi_rate: g must be >= 1");

    const double arm_km = distance_km / 2.0;
    const double eta = params.relay_detector_efficiency *
                       std::pow(10.0, -params.fiber_loss_db_per_km * arm_km / 10.0);
    const MdiChannel channel{params, eta, g};

    const double mu = mode == AnalysisMode::kCorrect ? g * params.signal_mu : params.signal_mu;
    const double nu = mode == AnalysisMode::kCorrect ? g * params.decoy_nu : params.decoy_nu;

    const IntensityCombos at_nu = combos_at(channel, params.decoy_nu, nu);
    const IntensityCombos at_mu = combos_at(channel, params.signal_mu, mu);

    double y11_rect = y11_lower(mu, nu, at_nu.rect_gain, at_mu.rect_gain);
    double y11_diag = y11_lower(mu, nu, at_nu.diag_gain, at_mu.diag_gain);
    if (y11_rect <= 0.0 || y11_diag <= 0.0) return 0.0;
    y11_rect = std::min(y11_rect, 1.0);
    y11_diag = std::min(y11_diag, 1.0);

    // Diagonal-basis error of single-photon pairs; the nu^2 term dominates the
    // vacuum-free combination from below.
    double e11 = at_nu.diag_error / (nu * nu * y11_diag);
    if (e11 > 0.5) return 0.0;
    e11 = std::max(e11, 0.0);

    const MdiGains signal = channel.observe(params.signal_mu, params.signal_mu);
    if (signal.q_rect <= 0.0) return 0.0;
    const double qber = signal.eq_rect / signal.q_rect;
    const double q11 = mu * mu * std::exp(-2.0 * mu) * y11_rect;
    const double rate = q11 * (1.0 - binary_entropy(std::min(e11, 1.0))) -
                        signal.q_rect * params.error_correction_f *
                            binary_entropy(std::min(qber, 1.0));
    return std::max(rate, 0.0);
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

const char* to_string(CurveLabel label) {
    switch (label) {
        case CurveLabel::kNoAttack: return "NoAttack";
        case CurveLabel::kIncorrect: return "R_I";
        case CurveLabel::kCorrect: return "R_C";
    }
    return "?";
}

namespace {

template <typename RateFn>
std::vector<RateCurve> sweep_curves(std::span<const double> gs, double max_km, double step_km,
                                    RateFn&& rate_fn) {
    if (step_km <= 0.0 || max_km < 0.0) {
        throw ValidationError("curve sweep: need step_km > 0 and max_km >= 0");
    }
    std::vector<double> distances;
    for (double d = 0.0; d <= max_km + 1e-9; d += step_km) distances.push_back(d);

    std::vector<RateCurve> curves;
    RateCurve no_attack{CurveLabel::kNoAttack, 1.0, {}};
    for (double d : distances) no_attack.points.push_back({d, rate_fn(d, 1.0, false)});
    curves.push_back(std::move(no_attack));
    for (double g : gs) {
        RateCurve incorrect{CurveLabel::kIncorrect, g, {}};
        RateCurve correct{CurveLabel::kCorrect, g, {}};
        for (double d : distances) {
            incorrect.points.push_back({d, rate_fn(d, g, false)});
            correct.points.push_back({d, rate_fn(d, g, true)});
        }
        curves.push_back(std::move(incorrect));
        curves.push_back(std::move(correct));
    }
    return curves;
}

}  // namespace

std::vector<RateCurve> bb84_curves(const Bb84Params& params, std::span<const double> gs,
                                   double max_km, double step_km) {
    return sweep_curves(gs, max_km, step_km, [&](double d, double g, bool correct) {
        return correct ? bb84_rate_correct(params, d, g) : bb84_rate_incorrect(params, d, g);
    });
}

std::vector<RateCurve> mdi_curves(const MdiParams& params, std::span<const double> gs,
                                  double max_km, double step_km) {
    return sweep_curves(gs, max_km, step_km, [&](double d, double g, bool correct) {
        return mdi_rate(params, d, g,
                        correct ? AnalysisMode::kCorrect : AnalysisMode::kEstimated);
    });
}

}  // namespace limlab::qkd
