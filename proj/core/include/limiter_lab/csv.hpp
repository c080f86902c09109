#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "limiter_lab/attack_harness.hpp"
#include "limiter_lab/keyrate.hpp"
#include "limiter_lab/opl_model.hpp"

namespace limlab::io {

/// Shortest representation that parses back identically at 9 significant
/// digits ("%.9g").
std::string format_sig9(double value);

struct CalibrationCsv {
    std::optional<opl::CalibrationTable> forward;
    std::optional<opl::CalibrationTable> backward;
};

/// Reads `direction,input_w,output_w` rows. Parse failures report the line
/// number. Rows keep file order; table invariants are checked by the fitter.
CalibrationCsv read_calibration_csv(const std::filesystem::path& path);

void write_cycle_csv(std::ostream& out, const std::vector<attack::CycleRecord>& records);
void write_series_csv(std::ostream& out, const attack::TimeSeries& series);
void write_waveform_csv(std::ostream& out, const attack::TimeSeries& series);

/// `distance_km,rate,label,g` rows; points with rate <= 0 are omitted so the
/// file is directly usable on a log axis.
void write_rate_curves_csv(std::ostream& out, const std::vector<qkd::RateCurve>& curves);

/// Opens for writing, creating parent directories; throws IoError on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace limlab::io
