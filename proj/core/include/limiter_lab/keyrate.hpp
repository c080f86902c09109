#pragma once

#include <array>
#include <span>
#include <vector>

#include "limiter_lab/errors.hpp"

namespace limlab::qkd {

/// H2(x) = -x log2 x - (1-x) log2(1-x); 0 at the boundaries.
double binary_entropy(double x);

/// Mean-photon-number inflation factors observed on the leaky limiter.
inline constexpr std::array<double, 3> kAttackPresets = {1.17, 4.41, 7.16};

// ---------------------------------------------------------------------------
// Decoy-state BB84 (one signal + one weak decoy, asymptotic)
// ---------------------------------------------------------------------------

struct Bb84Params {
    double mu = 0.1;    // signal intensity assumed by Alice
    double nu = 0.05;   // decoy intensity
    double dark_count_y0 = 2e-6;        // per gate
    double misalignment_e_det = 0.01;   // probability a photon hits the wrong detector
    double error_correction_f = 1.0;
    double detector_efficiency = 0.1;
    double internal_transmittance = 0.6;  // Bob's optics
    double fiber_loss_db_per_km = 0.2;
    double sifting_q = 0.5;
    double dark_error_e0 = 0.5;

    void validate() const;
};

struct Bb84Observables {
    double q_mu = 0.0;
    double e_mu = 0.0;
    double q_nu = 0.0;
    double e_nu = 0.0;
};

/// Channel observables when the true intensities are g*mu and g*nu.
Bb84Observables bb84_observables(const Bb84Params& params, double distance_km, double g);

struct DecoyBounds {
    double y1_lower = 0.0;
    double e1_upper = 0.0;
};

/// Analytic one-decoy bounds evaluated with the analyst's assumed intensities.
DecoyBounds bb84_decoy_bounds(const Bb84Observables& obs, double assumed_mu,
                              double assumed_nu, const Bb84Params& params);

/// GLLP rate from observables analyzed with the given assumed intensities.
/// Clamped at zero; zero when the decoy bounds are vacuous.
double bb84_rate(const Bb84Observables& obs, double assumed_mu, double assumed_nu,
                 const Bb84Params& params);

/// Rate Alice and Bob believe they have (assumed intensities on inflated
/// observables) and the rate a correct analysis yields.
double bb84_rate_incorrect(const Bb84Params& params, double distance_km, double g);
double bb84_rate_correct(const Bb84Params& params, double distance_km, double g);

// ---------------------------------------------------------------------------
// MDI-QKD with weak coherent pulses (symmetric links, two-decoy, asymptotic)
// ---------------------------------------------------------------------------

struct MdiParams {
    double signal_mu = 0.5;
    double decoy_nu = 0.03;
    double vacuum = 0.0;
    double relay_detector_efficiency = 0.145;
    double dark_count_prob = 3e-6;  // per relay detector per gate
    double misalignment_e_d = 0.015;
    double error_correction_f = 1.16;
    double fiber_loss_db_per_km = 0.2;
    double dark_error_e0 = 0.5;

    void validate() const;
};

/// Relay gains for one intensity pair: rectilinear (key) basis gain/error-gain
/// and diagonal (phase) basis gain/error-gain.
struct MdiGains {
    double q_rect = 0.0;
    double eq_rect = 0.0;
    double q_diag = 0.0;
    double eq_diag = 0.0;
};

/// Gain model for arm transmittances eta_a, eta_b (detector efficiency
/// included) and pulse intensities mu_a, mu_b.
MdiGains mdi_pair_gains(const MdiParams& params, double eta_a, double eta_b, double mu_a,
                        double mu_b);

/// Yield of single-photon pairs in the key basis (used as the oracle the decoy
/// bound must stay below).
double mdi_y11_true(const MdiParams& params, double eta_a, double eta_b);

enum class AnalysisMode { kEstimated, kCorrect };

/// Secret key rate per pulse at total distance `distance_km` (relay midway)
/// when both sources are inflated by g. Estimated mode analyzes with the
/// assumed intensities, Correct mode with the true ones.
double mdi_rate(const MdiParams& params, double distance_km, double g, AnalysisMode mode);

// ---------------------------------------------------------------------------
// Curve sweeps
// ---------------------------------------------------------------------------

enum class CurveLabel { kNoAttack, kIncorrect, kCorrect };
const char* to_string(CurveLabel label);

struct RatePoint {
    double distance_km = 0.0;
    double rate = 0.0;
};

struct RateCurve {
    CurveLabel label = CurveLabel::kNoAttack;
    double g = 1.0;
    std::vector<RatePoint> points;
};

std::vector<RateCurve> bb84_curves(const Bb84Params& params, std::span<const double> gs,
                                   double max_km, double step_km);
std::vector<RateCurve> mdi_curves(const MdiParams& params, std::span<const double> gs,
                                  double max_km, double step_km);

}  // namespace limlab::qkd
