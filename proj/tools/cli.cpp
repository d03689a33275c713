#include "cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "optospec/analysis.hpp"
#include "optospec/errors.hpp"
#include "optospec/io.hpp"
#include "optospec/verify.hpp"

namespace optospec::cli {

namespace {

struct RunFlags {
    double g1{0.0};
    double g2{0.0};
    double kappa{0.0};
    std::string state{"number:0"};
    std::string grid;
    int n_max{60};
    std::optional<double> delta0;
    double epsilon{2.0};
    std::string out;
};

void add_model_flags(CLI::App& app, RunFlags& f) {
    app.add_option("--g1", f.g1, "linear coupling g1/omega_m")->required();
    app.add_option("--g2", f.g2, "quadratic coupling g2/omega_m")->required();
    app.add_option("--kappa", f.kappa, "cavity decay kappa/omega_m")->required();
}

enum class OutFlag { Required, Optional, Absent };

void add_run_flags(CLI::App& app, RunFlags& f, Process process, OutFlag out) {
    add_model_flags(app, f);
    app.add_option("--state", f.state, "number:m0 | sdground | coherent:re,im | thermal:nbar")
        ->capture_default_str();
    const char* grid_help = out == OutFlag::Absent ? "min,max,step (default emit -8,4 or scatter -10,10, step kappa/10)"
                            : process == Process::Emission ? "min,max,step (default -8,4,kappa/10)"
                                                           : "min,max,step (default -10,10,kappa/10)";
    app.add_option("--grid", f.grid, grid_help);
    app.add_option("--n-max", f.n_max, "phonon truncation")->capture_default_str();
    if (process == Process::Scattering) {
        app.add_option("--delta0", f.delta0, "wavepacket centre (default -C)");
        app.add_option("--epsilon", f.epsilon, "wavepacket half-width")->capture_default_str();
    }
    if (out == OutFlag::Absent) return;
    auto* opt = app.add_option("--out", f.out, "output CSV (JSON sidecar written next to it)");
    if (out == OutFlag::Required) opt->required();
}

RunConfig to_config(const RunFlags& f, Process process) {
    RunConfig cfg;
    cfg.process = process;
    cfg.params = {1.0, f.g1, f.g2, f.kappa};
    cfg.state = parse_state_spec(f.state);
    if (!f.grid.empty()) cfg.grid = parse_grid_spec(f.grid);
    cfg.n_max = f.n_max;
    cfg.delta0 = f.delta0;
    cfg.epsilon = f.epsilon;
    cfg.out = f.out;
    cfg.validate();
    return cfg;
}

void parse(CLI::App& app, const std::vector<std::string>& args) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
}

void print_json(std::ostream& out, const std::string& path, const json& doc) {
    if (path.empty() || path == "-") {
        out << doc.dump(2) << '\n';
    } else {
        write_json(path, doc);
    }
}

int finish_run(const RunResult& r, const std::string& path, std::ostream& out, std::ostream& err) {
    write_run_outputs(path, r);
    out << fmt::format("wrote {} ({} points, integral {:.6f})\n", path, r.spectrum.size(), r.check.total);
    for (const auto& w : r.spectrum.meta.warnings) err << "warning: " << w << '\n';
    if (!r.check.ok) {
        err << fmt::format("error: spectrum integrates to {:.6f}, outside 1 +- {}\n", r.check.total,
                           r.check.tolerance);
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args, Process process) {
    CLI::App app{process == Process::Emission ? "emit" : "scatter"};
    app.set_config("--config");
    RunFlags f;
    add_run_flags(app, f, process, OutFlag::Optional);
    try {
        parse(app, args);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    return to_config(f, process);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-photon emission and scattering spectra of a linear + quadratic optomechanical cavity"};
    app.name("optospec");
    app.set_config("--config", "", "read flags from a TOML/INI file");
    app.require_subcommand(1);

    RunFlags emit_flags;
    auto* emit = app.add_subcommand("emit", "emission spectrum of a photon initially in the cavity");
    add_run_flags(*emit, emit_flags, Process::Emission, OutFlag::Required);

    RunFlags scatter_flags;
    auto* scatter = app.add_subcommand("scatter", "scattering spectrum of a Lorentzian single-photon wavepacket");
    add_run_flags(*scatter, scatter_flags, Process::Scattering, OutFlag::Required);

    std::string analyze_in;
    std::string analyze_out;
    AnalysisOptions analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "find peaks and dips and infer g1, g2 from a spectrum CSV");
    analyze->add_option("input", analyze_in, "spectrum CSV")->required();
    analyze->add_option("--omega-m", analyze_opts.omega_m, "mechanical frequency")->capture_default_str();
    analyze->add_option("--kappa", analyze_opts.kappa, "cavity decay")->required();
    analyze->add_option("--prominence", analyze_opts.prominence_frac, "minimum prominence, fraction of max(S)")
        ->capture_default_str();
    analyze->add_option("--out", analyze_out, "report JSON (default stdout)");

    bool verify_quick = false;
    std::string verify_out;
    auto* verify = app.add_subcommand("verify", "run the oracle suite and print a JSON report");
    verify->add_flag("--quick", verify_quick, "skip the time-domain comparisons");
    verify->add_option("--out", verify_out, "report JSON (default stdout)");

    RunFlags sweep_flags;
    std::string sweep_process{"emit"};
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string sweep_dir{"."};
    std::string sweep_stem{"sweep"};
    int sweep_workers = 0;
    auto* sweep = app.add_subcommand("sweep", "run one spectrum per parameter value");
    add_run_flags(*sweep, sweep_flags, Process::Scattering, OutFlag::Absent);
    sweep->add_option("--process", sweep_process, "emit or scatter")
        ->check(CLI::IsMember({"emit", "scatter"}))
        ->capture_default_str();
    sweep->add_option("--param", sweep_param, "g1, g2, kappa or epsilon")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',')
        ->check([](const std::string& s) { return s.empty() ? std::string("empty sweep value") : std::string(); });
    sweep->add_option("--out-dir", sweep_dir, "output directory")->capture_default_str();
    sweep->add_option("--stem", sweep_stem, "file name prefix")->capture_default_str();
    sweep->add_option("--workers", sweep_workers, "parallel runs (default OPTOSPEC_WORKERS or all cores)");

    RunFlags tm_flags;
    auto* transition = app.add_subcommand("transition", "dump the transition matrix T(m, n) as CSV");
    add_model_flags(*transition, tm_flags);
    transition->add_option("--n-max", tm_flags.n_max, "table size")->capture_default_str();
    transition->add_option("--out", tm_flags.out, "output CSV")->required();

    try {
        parse(app, args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        if (const auto subs = app.get_subcommands(); !subs.empty()) {
            err << subs.front()->help();
        } else {
            err << app.help();
        }
        return kExitUsage;
    }

    try {
        if (*emit) {
            return finish_run(run_spectrum(to_config(emit_flags, Process::Emission)), emit_flags.out, out, err);
        }
        if (*scatter) {
            return finish_run(run_spectrum(to_config(scatter_flags, Process::Scattering)), scatter_flags.out, out,
                              err);
        }
        if (*analyze) {
            const SpectrumGrid s = read_spectrum_csv(analyze_in);
            const PeakReport report = analyze_spectrum(s, analyze_opts);
            print_json(out, analyze_out, to_json(report));
            for (const auto& w : report.warnings) err << "warning: " << w << '\n';
            return kExitOk;
        }
        if (*verify) {
            const VerifyReport report = run_verification({!verify_quick});
            print_json(out, verify_out, to_json(report));
            for (const auto& c : report.checks) {
                if (!c.pass) err << fmt::format("FAIL {}: error {:.3e} > {:.3e}\n", c.name, c.abs_error, c.tolerance);
            }
            return report.all_pass() ? kExitOk : kExitValidation;
        }
        if (*sweep) {
            const Process process = sweep_process == "emit" ? Process::Emission : Process::Scattering;
            const RunConfig base = to_config(sweep_flags, process);
            const SweepSpec spec{sweep_param, sweep_values};
            const SweepSummary summary = run_sweep(base, spec, sweep_dir, sweep_stem, sweep_workers);
            for (const auto& e : summary.entries) {
                if (e.ok()) {
                    out << fmt::format("{}={}: wrote {}\n", spec.parameter, e.value, e.csv_path);
                } else {
                    err << fmt::format("{}={}: {}\n", spec.parameter, e.value, e.error);
                }
            }
            out << "summary: " << summary.summary_path << '\n';
            return summary.all_ok() ? kExitOk : kExitValidation;
        }
        if (*transition) {
            const ModelParams p{1.0, tm_flags.g1, tm_flags.g2, tm_flags.kappa};
            p.validate();
            write_transition_csv(tm_flags.out, p, tm_flags.n_max);
            out << "wrote " << tm_flags.out << '\n';
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace optospec::cli
