#pragma once

#include <vector>

#include "limiter_lab/errors.hpp"

namespace limlab::iso {

/// 10*log10 of an absolute ratio. Throws ValidationError for ratio <= 0.
double to_db(double ratio);
double from_db(double db);

/// One candidate protection chain: n isolators, a double-passed attenuator
/// and the terminal reflectivity. All values are dB magnitudes.
struct IsolationStack {
    int n_isolators = 0;
    double isolator_db = 0.0;
    double attenuator_db = 0.0;
    double reflectivity_db = 0.0;

    /// n*I + 2*A + R. The limiter's own isolation is untrusted and counts zero.
    double achieved_db() const;
    void validate() const;
};

/// Photon-leakage budget for one clock rate.
struct LeakageBudget {
    double clock_rate_hz = 0.0;
    double chi_photons = 1.0;       // worst-case photons through the limiter per pulse
    double mu_out_target = 1e-6;    // mean photons allowed back out to the channel

    void validate() const;
};

/// Required total isolation, signed dB (negative): mu_out_db - chi_db.
/// With paper_rounding the leakage target snaps to integer dB and chi to the
/// nearest 10 dB, reproducing the published -150 / -140 dB figures.
double required_gamma_db(const LeakageBudget& budget, bool paper_rounding = false);

struct StackCheck {
    bool pass = false;
    double achieved_db = 0.0;
    double margin_db = 0.0;
};

/// Compares a stack against a required isolation magnitude.
StackCheck check_stack(const IsolationStack& stack, double required_db_magnitude);

/// Component options available when searching for a passing stack.
struct Catalog {
    std::vector<double> isolator_db;
    std::vector<double> attenuator_db;
    std::vector<double> reflectivity_db;
    int max_isolators = 2;
};

struct RankedStack {
    IsolationStack stack;
    double achieved_db = 0.0;
    double margin_db = 0.0;
    bool attenuator_free = false;
};

/// Exhaustive search over the catalog; passing stacks sorted by
/// (n_isolators, achieved dB, isolator, attenuator, reflectivity).
std::vector<RankedStack> search_stacks(const Catalog& catalog, double required_db_magnitude);

}  // namespace limlab::iso
