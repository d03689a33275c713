#pragma once

// Plain-text serialisation: spectrum CSV files and JSON metadata.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "optospec/analysis.hpp"
#include "optospec/spectrum.hpp"

namespace optospec {

using json = nlohmann::ordered_json;

inline constexpr const char* kCsvHeader = "delta_over_omega_m,S_times_omega_m";
inline constexpr const char* kCsvUnitNote = "# detuning in units of omega_m; spectral density in units of 1/omega_m";

/// 12 significant digits, fixed across platforms for identical doubles.
std::string format_value(double v);

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& spectrum);
void write_spectrum_csv(const std::string& path, const SpectrumGrid& spectrum);

/// Skips blank lines, '#' lines and a non-numeric header line.
/// Throws UsageError on malformed rows or a non-increasing axis.
SpectrumGrid read_spectrum_csv(std::istream& is);
SpectrumGrid read_spectrum_csv(const std::string& path);

json to_json(const ModelParams& p);
json to_json(const WavepacketParams& wp);
json to_json(const IntegralCheck& c);
json to_json(const SpectrumMeta& meta);
json to_json(const PeakReport& report);

/// Sidecar for a spectrum file: metadata, integral check and grid extent.
json sidecar_json(const SpectrumGrid& spectrum, const IntegralCheck& check);

void write_json(const std::string& path, const json& doc);

/// "out.csv" -> "out.json"; other names get ".json" appended.
std::string sidecar_path(const std::string& csv_path);

}  // namespace optospec
