#include "optospec/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& spectrum) {
    os << kCsvHeader << '\n' << kCsvUnitNote << '\n';
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        os << format_value(spectrum.deltas[i]) << ',' << format_value(spectrum.values[i]) << '\n';
    }
}

void write_spectrum_csv(const std::string& path, const SpectrumGrid& spectrum) {
    std::ofstream os(path);
    if (!os) throw UsageError(fmt::format("cannot open '{}' for writing", path));
    write_spectrum_csv(os, spectrum);
    if (!os) throw UsageError(fmt::format("failed writing '{}'", path));
}

SpectrumGrid read_spectrum_csv(std::istream& is) {
    SpectrumGrid out;
    out.meta.process = "external";
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        double d = 0.0;
        double s = 0.0;
        bool parsed = false;
        if (comma != std::string::npos) {
            try {
                std::size_t used_d = 0;
                std::size_t used_s = 0;
                d = std::stod(line.substr(0, comma), &used_d);
                const std::string rest = line.substr(comma + 1);
                s = std::stod(rest, &used_s);
                parsed = rest.find_first_not_of(" \t", used_s) == std::string::npos;
            } catch (const std::exception&) {
                parsed = false;
            }
        }
        if (!parsed) {
            if (!header_seen && out.deltas.empty()) {
                header_seen = true;
                continue;
            }
            throw UsageError(fmt::format("line {}: expected 'delta,S' with two numbers, got '{}'", line_no, line));
        }
        if (!out.deltas.empty() && d <= out.deltas.back()) {
            throw UsageError(fmt::format("line {}: detuning axis must be strictly increasing", line_no));
        }
        out.deltas.push_back(d);
        out.values.push_back(s);
    }
    if (out.deltas.size() < 3) throw UsageError("spectrum file holds fewer than 3 samples");
    return out;
}

SpectrumGrid read_spectrum_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError(fmt::format("cannot open spectrum file '{}'", path));
    return read_spectrum_csv(is);
}

json to_json(const ModelParams& p) {
    return {{"omega_m", p.omega_m}, {"g1", p.g1}, {"g2", p.g2}, {"kappa", p.kappa}};
}

json to_json(const WavepacketParams& wp) { return {{"delta0", wp.delta0}, {"epsilon", wp.epsilon}}; }

json to_json(const IntegralCheck& c) {
    return {{"window", c.window},       {"tail_left", c.tail_left}, {"tail_right", c.tail_right},
            {"total", c.total},         {"tolerance", c.tolerance}, {"ok", c.ok}};
}

json to_json(const SpectrumMeta& meta) {
    json j;
    j["process"] = meta.process;
    j["params"] = meta.params ? to_json(*meta.params) : json(nullptr);
    j["state"] = meta.state;
    if (meta.wavepacket) j["wavepacket"] = to_json(*meta.wavepacket);
    j["truncation"] = meta.truncation;
    j["truncation_tail"] = meta.truncation_tail;
    j["warnings"] = meta.warnings;
    return j;
}

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const PeakReport& report) {
    json peaks = json::array();
    for (const auto& pk : report.peaks) {
        peaks.push_back({{"location", pk.location},
                         {"height", pk.height},
                         {"prominence", pk.prominence},
                         {"class", to_string(pk.cls)},
                         {"cluster", opt(pk.cluster)}});
    }
    json dips = json::array();
    for (const auto& d : report.dips) dips.push_back({{"location", d.location}, {"depth", d.depth}});
    json j;
    j["peaks"] = std::move(peaks);
    j["dips"] = std::move(dips);
    j["zero_phonon_location"] = opt(report.zero_phonon_location);
    j["sub_peak_spacing"] = opt(report.sub_peak_spacing);
    j["inferred"] = {{"C", opt(report.inferred_C)}, {"g2", opt(report.inferred_g2)}, {"g1", opt(report.inferred_g1)}};
    j["resolution"] = {{"ok", report.resolution_ok}, {"margin", report.resolution_margin}};
    j["warnings"] = report.warnings;
    return j;
}

json sidecar_json(const SpectrumGrid& spectrum, const IntegralCheck& check) {
    json j = to_json(spectrum.meta);
    j["grid"] = {{"min", spectrum.deltas.empty() ? 0.0 : spectrum.deltas.front()},
                 {"max", spectrum.deltas.empty() ? 0.0 : spectrum.deltas.back()},
                 {"points", spectrum.size()}};
    j["integral_check"] = to_json(check);
    return j;
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream os(path);
    if (!os) throw UsageError(fmt::format("cannot open '{}' for writing", path));
    os << doc.dump(2) << '\n';
}

std::string sidecar_path(const std::string& csv_path) {
    const std::string ext = ".csv";
    if (csv_path.size() > ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
        return csv_path.substr(0, csv_path.size() - ext.size()) + ".json";
    }
    return csv_path + ".json";
}

}  // namespace optospec
