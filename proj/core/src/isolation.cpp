#include "limiter_lab/isolation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace limlab::iso {

double to_db(double ratio) {
    if (ratio <= 0.0) throw ValidationError("to_db: ratio must be > 0");
    return 10.0 * std::log10(ratio);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double IsolationStack::achieved_db() const {
    return n_isolators * isolator_db + 2.0 * attenuator_db + reflectivity_db;
}

void IsolationStack::validate() const {
    if (n_isolators < 0) throw ValidationError("IsolationStack: n_isolators must be >= 0");
    if (isolator_db < 0.0 || attenuator_db < 0.0 || reflectivity_db < 0.0) {
        throw ValidationError("IsolationStack: dB magnitudes must be >= 0");
    }
}

void LeakageBudget::validate() const {
    if (clock_rate_hz <= 0.0) throw ValidationError("LeakageBudget: clock rate must be > 0");
    if (chi_photons < 1.0) throw ValidationError("LeakageBudget: chi must be >= 1 photon");
    if (mu_out_target <= 0.0) throw ValidationError("LeakageBudget: mu_out must be > 0");
}

double required_gamma_db(const LeakageBudget& budget, bool paper_rounding) {
    budget.validate();
    double mu_db = to_db(budget.mu_out_target);
    double chi_db = to_db(budget.chi_photons);
    if (paper_rounding) {
        mu_db = std::round(mu_db);
        chi_db = 10.0 * std::round(chi_db / 10.0);
    }
    return mu_db - chi_db;
}

StackCheck check_stack(const IsolationStack& stack, double required_db_magnitude) {
    stack.validate();
    StackCheck check;
    check.achieved_db = stack.achieved_db();
    check.margin_db = check.achieved_db - required_db_magnitude;
    check.pass = check.margin_db >= -1e-9;
    return check;
}

std::vector<RankedStack> search_stacks(const Catalog& catalog, double required_db_magnitude) {
    std::vector<RankedStack> passing;
    std::set<std::tuple<int, double, double, double>> seen;
    std::vector<double> isolators = catalog.isolator_db;
    if (isolators.empty()) isolators.push_back(0.0);

    for (int n = 0; n <= catalog.max_isolators; ++n) {
        for (double i_db : isolators) {
            for (double a_db : catalog.attenuator_db) {
                for (double r_db : catalog.reflectivity_db) {
                    IsolationStack stack{n, n == 0 ? 0.0 : i_db, a_db, r_db};
                    if (!seen.insert({stack.n_isolators, stack.isolator_db, stack.attenuator_db,
                                      stack.reflectivity_db})
                             .second) {
                        continue;
                    }
                    const StackCheck check = check_stack(stack, required_db_magnitude);
                    if (!check.pass) continue;
                    passing.push_back({stack, check.achieved_db, check.margin_db,
                                       stack.attenuator_db == 0.0});
                }
            }
        }
    }
    std::sort(passing.begin(), passing.end(), [](const RankedStack& a, const RankedStack& b) {
        return std::tuple(a.stack.n_isolators, a.achieved_db, a.stack.isolator_db,
                          a.stack.attenuator_db, a.stack.reflectivity_db) <
               std::tuple(b.stack.n_isolators, b.achieved_db, b.stack.isolator_db,
                          b.stack.attenuator_db, b.stack.reflectivity_db);
    });
    return passing;
}

}  // namespace limlab::iso
