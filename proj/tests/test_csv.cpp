#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "limiter_lab/csv.hpp"
#include "limiter_lab/opl_model.hpp"

using namespace limlab;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("format_sig9 round-trips at 9 significant digits") {
    for (double v : {0.0, 1.0, 0.223, 1.2e-3, 4.0e-8, 5.023, 1.39113e9, -60.0, 114e-6}) {
        const std::string s = io::format_sig9(v);
        const double parsed = std::stod(s);
        CHECK(io::format_sig9(parsed) == s);
        CHECK(parsed == doctest::Approx(v).epsilon(1e-9));
    }
}

TEST_CASE("calibration csv reader splits directions and keeps order") {
    const auto path = write_temp("limlab_calib.csv",
                                 "direction,input_w,output_w\n"
                                 "forward,0.01,0.000255\n"
                                 "forward,0.02,0.00051\n"
                                 "backward,0.01,0.000433\n"
                                 "forward,0.04,0.00102\n");
    const auto csv = io::read_calibration_csv(path);
    REQUIRE(csv.forward.has_value());
    REQUIRE(csv.backward.has_value());
    CHECK(csv.forward->points.size() == 3);
    CHECK(csv.backward->points.size() == 1);
    CHECK(csv.forward->points[2].input_w == doctest::Approx(0.04));
    std::filesystem::remove(path);
}

TEST_CASE("calibration csv reader reports the offending line") {
    const auto path = write_temp("limlab_bad.csv",
                                 "direction,input_w,output_w\n"
                                 "forward,0.01,0.000255\n"
                                 "forward,abc,0.1\n");
    try {
        io::read_calibration_csv(path);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    std::filesystem::remove(path);

    const auto empty = write_temp("limlab_empty.csv", "");
    CHECK_THROWS_AS(io::read_calibration_csv(empty), IoError);
    std::filesystem::remove(empty);

    const auto bad_header = write_temp("limlab_hdr.csv", "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(io::read_calibration_csv(bad_header), IoError);
    std::filesystem::remove(bad_header);
}

TEST_CASE("cycle and series writers emit headers and parseable rows") {
    std::ostringstream cycle;
    io::write_cycle_csv(cycle, {{0, 0.223, 1.5e-3, 1.5e-3, 0.13e-3, 48.0,
                                 opl::Regime::kPristine}});
    const std::string text = cycle.str();
    CHECK(text.find("k,eve_strong_in_w") == 0);
    CHECK(text.find("pristine") != std::string::npos);

    std::ostringstream series;
    io::write_series_csv(series, {{0.1, 5e-4, 21.0}, {0.2, 4e-4, 22.0}});
    CHECK(series.str().find("t_s,output_w,temperature_c\n0.1,0.0005,21\n") == 0);
}

TEST_CASE("rate-curve writer drops non-positive rates") {
    qkd::RateCurve curve;
    curve.label = qkd::CurveLabel::kCorrect;
    curve.g = 4.41;
    curve.points = {{0.0, 1e-4}, {10.0, 0.0}, {20.0, 3e-6}};
    std::ostringstream out;
    io::write_rate_curves_csv(out, {curve});
    const std::string text = out.str();
    CHECK(text.find("0,0.0001,R_C,4.41") != std::string::npos);
    CHECK(text.find("20,3e-06,R_C,4.41") != std::string::npos);
    CHECK(text.find("10,") == std::string::npos);
}

TEST_CASE("bundled calibration data round-trips through the fitter") {
    const std::filesystem::path data_dir(LIMITER_LAB_DATA_DIR);
    const double expected_ceiling[3] = {1.2e-3, 551e-6, 114e-6};
    const char* files[3] = {"calibration-25.4mm.csv", "calibration-50.8mm.csv",
                            "calibration-101.6mm.csv"};
    for (int i = 0; i < 3; ++i) {
        const auto csv = io::read_calibration_csv(data_dir / files[i]);
        REQUIRE(csv.forward.has_value());
        REQUIRE(csv.backward.has_value());
        const auto fit = opl::fit_calibration(*csv.forward);
        CHECK(fit.model.eval(0.2) == doctest::Approx(expected_ceiling[i]).epsilon(1e-6));
        CHECK(fit.report.max_rel_residual < 1e-9);
        CHECK_NOTHROW(opl::fit_calibration(*csv.backward));
    }
}
