#include "optospec/run.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <fmt/core.h>

#include "optospec/emission.hpp"
#include "optospec/errors.hpp"
#include "optospec/scattering.hpp"

namespace optospec {

const char* to_string(Process p) { return p == Process::Emission ? "emission" : "scattering"; }

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (n_max < 2 || n_max > 2000) {
        throw UsageError(fmt::format("--n-max must lie in [2, 2000] (got {})", n_max));
    }
    if (grid) grid->validate();
    if (process == Process::Scattering) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw UsageError(fmt::format("--epsilon must be positive and finite (got {})", epsilon));
        }
        if (delta0 && !std::isfinite(*delta0)) throw UsageError("--delta0 must be finite");
    }
    if (state.kind == StateKind::Number && state.m0 >= n_max) {
        throw UsageError(fmt::format("number state m0 = {} needs --n-max above it", state.m0));
    }
}

GridSpec RunConfig::default_grid() const {
    const double step = params.kappa / 10.0;
    return process == Process::Emission ? GridSpec{-8.0, 4.0, step} : GridSpec{-10.0, 10.0, step};
}

GridSpec RunConfig::effective_grid() const { return grid ? *grid : default_grid(); }

WavepacketParams RunConfig::wavepacket() const {
    return {delta0 ? *delta0 : default_wavepacket_center(params), epsilon};
}

RunResult run_spectrum(const RunConfig& cfg) {
    cfg.validate();
    const auto T = transition_matrix(cfg.params, cfg.n_max);
    const auto init = make_init_state(cfg.state, cfg.n_max, T);
    const auto grid = cfg.effective_grid().points();
    RunResult out;
    out.spectrum = cfg.process == Process::Emission ? emission_spectrum(init, grid, cfg.params, T)
                                                    : scattering_spectrum(init, cfg.wavepacket(), grid, cfg.params, T);
    out.check = unit_integral_check(out.spectrum);
    return out;
}

void write_run_outputs(const std::string& csv_path, const RunResult& result) {
    write_spectrum_csv(csv_path, result.spectrum);
    write_json(sidecar_path(csv_path), sidecar_json(result.spectrum, result.check));
}

void write_transition_csv(const std::string& path, const ModelParams& p, int n_max) {
    const auto T = transition_matrix(p, n_max);
    std::ofstream os(path);
    if (!os) throw UsageError(fmt::format("cannot open '{}' for writing", path));
    os << "m\\n";
    for (int n = 0; n < n_max; ++n) os << ',' << n;
    os << '\n';
    for (int m = 0; m < n_max; ++m) {
        os << m;
        for (int n = 0; n < n_max; ++n) os << ',' << format_value(T(m, n));
        os << '\n';
    }
}

void SweepSpec::validate() const {
    static const std::vector<std::string> allowed{"g1", "g2", "kappa", "epsilon"};
    if (std::find(allowed.begin(), allowed.end(), parameter) == allowed.end()) {
        throw UsageError(fmt::format("sweep parameter '{}' must be one of g1, g2, kappa, epsilon", parameter));
    }
    if (values.empty()) throw UsageError("sweep needs at least one value");
    for (double v : values)
        if (!std::isfinite(v)) throw UsageError("sweep values must be finite");
}

SweepSpec parse_sweep_spec(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw UsageError(fmt::format("sweep '{}' must have the form name=v1,v2,...", text));
    }
    SweepSpec s;
    s.parameter = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    std::size_t pos = 0;
    while (pos <= rest.size() && !rest.empty()) {
        const auto comma = rest.find(',', pos);
        const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            s.values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(fmt::format("sweep value '{}' is not a number", item));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    s.validate();
    return s;
}

bool SweepSummary::all_ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const SweepEntry& e) { return e.ok(); });
}

int default_worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("OPTOSPEC_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, hw));
    }
    return hw;
}

RunConfig apply_sweep_value(const RunConfig& base, const std::string& parameter, double value) {
    RunConfig cfg = base;
    if (parameter == "g1") {
        cfg.params.g1 = value;
    } else if (parameter == "g2") {
        cfg.params.g2 = value;
    } else if (parameter == "kappa") {
        cfg.params.kappa = value;
    } else if (parameter == "epsilon") {
        cfg.epsilon = value;
    } else {
        throw UsageError(fmt::format("unknown sweep parameter '{}'", parameter));
    }
    return cfg;
}

namespace {

std::string value_tag(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

SweepSummary run_sweep(const RunConfig& base, const SweepSpec& sweep, const std::string& out_dir,
                       const std::string& stem, int workers) {
    sweep.validate();
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw UsageError(fmt::format("cannot create output directory '{}': {}", out_dir, ec.message()));

    SweepSummary summary;
    summary.spec = sweep;
    summary.entries.resize(sweep.values.size());
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        summary.entries[i].value = sweep.values[i];
        summary.entries[i].csv_path =
            (fs::path(out_dir) / fmt::format("{}_{}_{}.csv", stem, sweep.parameter, value_tag(sweep.values[i]))).string();
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < summary.entries.size(); i = next++) {
            SweepEntry& e = summary.entries[i];
            try {
                const RunConfig cfg = apply_sweep_value(base, sweep.parameter, e.value);
                const RunResult r = run_spectrum(cfg);
                write_run_outputs(e.csv_path, r);
                e.check = r.check;
                if (!r.check.ok) {
                    e.error = fmt::format("unit integral {} outside 1 +- {}", r.check.total, r.check.tolerance);
                }
                try {
                    e.report = analyze_spectrum(r.spectrum, {cfg.params.omega_m, cfg.params.kappa, kDefaultProminence});
                } catch (const ValidationError& ve) {
                    PeakReport rep;
                    rep.warnings.emplace_back(ve.what());
                    e.report = rep;
                }
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
        }
    };
    const int n_workers =
        std::clamp(workers > 0 ? workers : default_worker_count(), 1, static_cast<int>(summary.entries.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    summary.summary_path = (fs::path(out_dir) / fmt::format("{}_summary.json", stem)).string();
    json doc = to_json(summary);
    doc["base"] = to_json(base);
    write_json(summary.summary_path, doc);
    return summary;
}

json to_json(const RunConfig& cfg) {
    json j;
    j["process"] = to_string(cfg.process);
    j["params"] = to_json(cfg.params);
    j["state"] = cfg.state.label();
    const GridSpec g = cfg.effective_grid();
    j["grid"] = {{"min", g.min}, {"max", g.max}, {"step", g.step}};
    if (cfg.process == Process::Scattering) j["wavepacket"] = to_json(cfg.wavepacket());
    j["n_max"] = cfg.n_max;
    return j;
}

json to_json(const SweepSummary& summary) {
    json entries = json::array();
    for (const auto& e : summary.entries) {
        json j;
        j["value"] = e.value;
        j["csv"] = e.csv_path;
        j["ok"] = e.ok();
        j["integral_check"] = e.check ? to_json(*e.check) : json(nullptr);
        j["peak_report"] = e.report ? to_json(*e.report) : json(nullptr);
        j["error"] = e.error.empty() ? json(nullptr) : json(e.error);
        entries.push_back(std::move(j));
    }
    return {{"parameter", summary.spec.parameter}, {"all_ok", summary.all_ok()}, {"entries", std::move(entries)}};
}

}  // namespace optospec
