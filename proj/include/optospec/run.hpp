#pragma once

// End-to-end runs: configuration, spectrum synthesis with its integral
// check, file output, and parameter sweeps.

#include <optional>
#include <string>
#include <vector>

#include "optospec/analysis.hpp"
#include "optospec/io.hpp"
#include "optospec/model.hpp"
#include "optospec/spectrum.hpp"
#include "optospec/states.hpp"

namespace optospec {

enum class Process { Emission, Scattering };

const char* to_string(Process p);

struct RunConfig {
    Process process{Process::Emission};
    ModelParams params{};
    StateSpec state{};
    std::optional<GridSpec> grid;     // default_grid() when absent
    std::optional<double> delta0;     // scattering; -C when absent
    double epsilon{2.0};              // scattering wavepacket half-width
    int n_max{60};
    std::string out;                  // CSV path; empty writes nothing

    /// Throws UsageError naming the offending field.
    void validate() const;
    /// Emission: -8..4, scattering: -10..10, both with step kappa / 10.
    GridSpec default_grid() const;
    GridSpec effective_grid() const;
    WavepacketParams wavepacket() const;
};

struct RunResult {
    SpectrumGrid spectrum;
    IntegralCheck check;
};

/// Synthesises the spectrum and its unit-integral check. Does not throw on
/// a failed check; callers inspect result.check.ok.
RunResult run_spectrum(const RunConfig& cfg);

/// Writes cfg.out and its JSON sidecar.
void write_run_outputs(const std::string& csv_path, const RunResult& result);

/// Dense T(m, n) table as CSV, rows m, columns n.
void write_transition_csv(const std::string& path, const ModelParams& p, int n_max);

struct SweepSpec {
    std::string parameter;  // g1, g2, kappa or epsilon
    std::vector<double> values;

    void validate() const;
};

/// Parses "g2=0.01,0.03,0.05". Throws UsageError.
SweepSpec parse_sweep_spec(const std::string& text);

struct SweepEntry {
    double value{0.0};
    std::string csv_path;
    std::optional<IntegralCheck> check;
    std::optional<PeakReport> report;
    std::string error;  // empty on success

    bool ok() const { return error.empty() && check && check->ok; }
};

struct SweepSummary {
    SweepSpec spec;
    std::vector<SweepEntry> entries;  // in value order
    std::string summary_path;

    bool all_ok() const;
};

/// Worker cap from OPTOSPEC_WORKERS, else the hardware concurrency.
int default_worker_count();

/// Runs every value independently (failures are recorded, not thrown), up
/// to `workers` at a time. Files go to out_dir as <stem>_<param>_<value>.csv
/// plus <stem>_summary.json.
SweepSummary run_sweep(const RunConfig& base, const SweepSpec& sweep, const std::string& out_dir,
                       const std::string& stem = "sweep", int workers = 0);

RunConfig apply_sweep_value(const RunConfig& base, const std::string& parameter, double value);

json to_json(const RunConfig& cfg);
json to_json(const SweepSummary& summary);

}  // namespace optospec
