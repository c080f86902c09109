#include <doctest.h>

#include <cmath>

#include "limiter_lab/attack_harness.hpp"
#include "limiter_lab/presets.hpp"

using namespace limlab;
using attack::CwCycleScenario;
using attack::LongExposureScenario;
using attack::PulseInjectionScenario;
using opl::Regime;

TEST_CASE("cw cycle walks the full power ladder") {
    const auto spec = presets::cycle_build(presets::CycleGroup::kA, 25.4);
    const auto records = attack::run_cw_cycle(spec, CwCycleScenario{});
    REQUIRE(records.size() == 25);  // 0.223 + 24 * 0.2 = 5.023 W reaches the stop power
    CHECK(records.front().k == 0);
    CHECK(records.front().eve_strong_in_w == doctest::Approx(0.223));
    CHECK(records.back().eve_strong_in_w == doctest::Approx(5.023));
    CHECK(records.back().eve_strong_in_w >= 5.0);
}

TEST_CASE("cw cycle reproduces the group-a backward leak step") {
    const auto spec = presets::cycle_build(presets::CycleGroup::kA, 25.4);
    const auto records = attack::run_cw_cycle(spec, CwCycleScenario{});

    CHECK(records.front().regime_after == Regime::kPristine);
    CHECK(records.front().alice_weak_out_w == doctest::Approx(0.13e-3).epsilon(1e-9));

    for (const auto& r : records) {
        if (r.eve_strong_in_w < 1.0) {
            CHECK(r.regime_after == Regime::kPristine);
            CHECK(r.alice_weak_out_w == doctest::Approx(0.13e-3).epsilon(1e-9));
        } else if (r.eve_strong_in_w < 2.0) {
            CHECK(r.regime_after == Regime::kBackwardLeaky);
            CHECK(r.alice_weak_out_w == doctest::Approx(0.61e-3).epsilon(1e-9));
        }
    }
}

TEST_CASE("cw cycle ends in destruction with nanowatt leakage") {
    for (auto group : {presets::CycleGroup::kA, presets::CycleGroup::kB, presets::CycleGroup::kC}) {
        for (double len : presets::kLengthsMm) {
            const auto spec = presets::cycle_build(group, len);
            const auto records = attack::run_cw_cycle(spec, CwCycleScenario{});
            CHECK(records.back().regime_after == Regime::kDamaged);
            CHECK(records.back().eve_strong_out_w <= 1e-7);
            CHECK(records.back().eve_strong_out_w > 0.0);
        }
    }
}

TEST_CASE("cycle records never demote and weak forward output never drops") {
    const auto spec = presets::cycle_build(presets::CycleGroup::kB, 50.8);
    const auto records = attack::run_cw_cycle(spec, CwCycleScenario{});
    Regime prev = Regime::kPristine;
    double weak_after_leak = 0.0;
    for (const auto& r : records) {
        CHECK(r.regime_after >= prev);
        prev = r.regime_after;
        if (r.regime_after == Regime::kForwardLeaky) {
            if (weak_after_leak > 0.0) CHECK(r.eve_weak_out_w >= weak_after_leak - 1e-15);
            weak_after_leak = r.eve_weak_out_w;
        }
        CHECK(r.eve_strong_out_w <= r.eve_strong_in_w);
        CHECK(r.max_temperature_c > 20.0);
    }
}

TEST_CASE("cw cycle is deterministic") {
    const auto spec = presets::cycle_build(presets::CycleGroup::kC, 101.6);
    const auto a = attack::run_cw_cycle(spec, CwCycleScenario{});
    const auto b = attack::run_cw_cycle(spec, CwCycleScenario{});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].eve_strong_out_w == b[i].eve_strong_out_w);
        CHECK(a[i].alice_weak_out_w == b[i].alice_weak_out_w);
        CHECK(a[i].max_temperature_c == b[i].max_temperature_c);
    }
}

TEST_CASE("long exposure: activation spike then settled clamp") {
    const auto spec = presets::calibrated_build(101.6);

    LongExposureScenario quick{0.2, 0.05, 0.01};
    const auto early = attack::run_long_exposure(spec, quick);
    REQUIRE(early.size() == 5);
    const double steady =
        opl::steady_state_output(spec, opl::initial_state(), 0.2, opl::Direction::kForward);
    CHECK(early.front().t_s == doctest::Approx(0.01));
    CHECK(early.front().output_w > steady);

    LongExposureScenario full{0.2, 1200.0, 0.5};
    const auto series = attack::run_long_exposure(spec, full);
    REQUIRE(!series.empty());
    CHECK(series.back().t_s == doctest::Approx(1200.0));
    CHECK(series.back().output_w == doctest::Approx(114e-6).epsilon(0.05));

    // temperature climbs monotonically toward equilibrium
    double prev = 0.0;
    for (const auto& s : series) {
        CHECK(s.temperature_c >= prev - 1e-12);
        prev = s.temperature_c;
    }
    const double t_eq = opl::equilibrium_temperature_c(spec, 0.2, 20.0);
    CHECK(std::abs(series.back().temperature_c - t_eq) < 0.05 * (t_eq - 20.0));
}

TEST_CASE("long exposure edge cases") {
    const auto spec = presets::calibrated_build(25.4);
    CHECK(attack::run_long_exposure(spec, {0.2, 0.0, 0.1}).empty());
    CHECK_THROWS_AS(attack::run_long_exposure(spec, {0.2, 10.0, 0.0}), ValidationError);
}

TEST_CASE("0.5 Hz pulses ride the activation transient above the c.w. line") {
    const auto spec = presets::calibrated_build(101.6);
    PulseInjectionScenario sc;
    sc.trains = {{0.5, 1.0, 0.2, 1550.0}};
    sc.duration_s = 120.0;
    sc.sample_dt_s = 0.1;
    const auto result = attack::run_pulse_injection(spec, sc);
    REQUIRE(result.summaries.size() == 1);
    REQUIRE(result.series.size() == 1);

    const double cw_line = result.summaries[0].cw_equivalent_out_w;
    CHECK(cw_line == doctest::Approx(114e-6).epsilon(1e-6));
    std::size_t lit = 0, above = 0;
    for (const auto& s : result.series[0]) {
        CHECK(s.output_w <= 0.2 + 1e-12);
        if (s.output_w > 0.0) {
            ++lit;
            if (s.output_w > cw_line) ++above;
        }
    }
    REQUIRE(lit > 0);
    CHECK(static_cast<double>(above) / static_cast<double>(lit) > 0.8);
    CHECK(result.summaries[0].peak_out_w > cw_line);
}

TEST_CASE("fast trains report the anchor-model peak") {
    const auto spec = presets::pulse_build(50.8);
    PulseInjectionScenario sc;
    sc.trains = {{40e6, 4e-9, 0.030 / (40e6 * 4e-9), 1550.0}};
    const auto result = attack::run_pulse_injection(spec, sc);
    REQUIRE(result.summaries.size() == 1);
    // anchor value for (40 MHz, 50.8 mm, 30 mW average)
    double anchor = 0.0;
    for (const auto& a : pulse::peak_anchor_table()) {
        if (a.rep_rate_hz == 40e6 && a.length_mm == 50.8 && a.average_w == 0.030) {
            anchor = a.peak_out_w;
        }
    }
    REQUIRE(anchor > 0.0);
    CHECK(result.summaries[0].peak_out_w == doctest::Approx(anchor).epsilon(1e-6));
    // waveform alternates between the peak and darkness
    bool saw_high = false, saw_zero = false;
    for (const auto& s : result.series[0]) {
        if (s.output_w == 0.0) saw_zero = true;
        if (s.output_w > 0.0) {
            saw_high = true;
            CHECK(s.output_w == doctest::Approx(result.summaries[0].peak_out_w));
        }
    }
    CHECK(saw_high);
    CHECK(saw_zero);
}

TEST_CASE("empty train list produces empty outputs") {
    const auto spec = presets::pulse_build(25.4);
    const auto result = attack::run_pulse_injection(spec, PulseInjectionScenario{});
    CHECK(result.summaries.empty());
    CHECK(result.series.empty());
}
