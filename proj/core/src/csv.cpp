#include "limiter_lab/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>

namespace limlab::io {

std::string format_sig9(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(const std::string& field, const std::filesystem::path& path, int line) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw IoError(path.string() + ":" + std::to_string(line) + ": cannot parse number '" +
                      field + "'");
    }
    return value;
}

}  // namespace

CalibrationCsv read_calibration_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open calibration file " + path.string());

    CalibrationCsv result;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (!header_seen) {
            if (lower(stripped) != "direction,input_w,output_w") {
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": expected header 'direction,input_w,output_w'");
            }
            header_seen = true;
            continue;
        }
        const auto c1 = stripped.find(',');
        const auto c2 = stripped.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected 3 comma-separated fields");
        }
        const std::string dir = lower(trim(stripped.substr(0, c1)));
        const double input_w = parse_double(trim(stripped.substr(c1 + 1, c2 - c1 - 1)), path, line_no);
        const double output_w = parse_double(trim(stripped.substr(c2 + 1)), path, line_no);

        opl::CalibrationTable* table = nullptr;
        if (dir == "forward") {
            if (!result.forward) result.forward.emplace();
            result.forward->direction = opl::Direction::kForward;
            table = &*result.forward;
        } else if (dir == "backward") {
            if (!result.backward) result.backward.emplace();
            result.backward->direction = opl::Direction::kBackward;
            table = &*result.backward;
        } else {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": direction must be 'forward' or 'backward', got '" + dir + "'");
        }
        table->points.push_back({input_w, output_w});
    }
    if (!header_seen) throw IoError(path.string() + ": empty calibration file");
    if (!result.forward && !result.backward) {
        throw IoError(path.string() + ": no calibration rows");
    }
    return result;
}

void write_cycle_csv(std::ostream& out, const std::vector<attack::CycleRecord>& records) {
    out << "k,eve_strong_in_w,eve_strong_out_w,eve_weak_out_w,alice_weak_out_w,"
           "max_temperature_c,regime_after\n";
    for (const auto& r : records) {
        out << r.k << ',' << format_sig9(r.eve_strong_in_w) << ','
            << format_sig9(r.eve_strong_out_w) << ',' << format_sig9(r.eve_weak_out_w) << ','
            << format_sig9(r.alice_weak_out_w) << ',' << format_sig9(r.max_temperature_c)
            << ',' << opl::to_string(r.regime_after) << '\n';
    }
}

void write_series_csv(std::ostream& out, const attack::TimeSeries& series) {
    out << "t_s,output_w,temperature_c\n";
    for (const auto& s : series) {
        out << format_sig9(s.t_s) << ',' << format_sig9(s.output_w) << ','
            << format_sig9(s.temperature_c) << '\n';
    }
}

void write_waveform_csv(std::ostream& out, const attack::TimeSeries& series) {
    out << "t_s,power_w\n";
    for (const auto& s : series) {
        out << format_sig9(s.t_s) << ',' << format_sig9(s.output_w) << '\n';
    }
}

void write_rate_curves_csv(std::ostream& out, const std::vector<qkd::RateCurve>& curves) {
    out << "distance_km,rate,label,g\n";
    for (const auto& curve : curves) {
        for (const auto& p : curve.points) {
            if (p.rate <= 0.0) continue;
            out << format_sig9(p.distance_km) << ',' << format_sig9(p.rate) << ','
                << qkd::to_string(curve.label) << ',' << format_sig9(curve.g) << '\n';
        }
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string());
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace limlab::io
