// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "optospec/analysis.hpp"
#include "optospec/emission.hpp"
#include "optospec/oracle.hpp"
#include "optospec/scattering.hpp"
#include "optospec/verify.hpp"

using namespace optospec;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

constexpr double kG1 = 0.8;
constexpr int kNmax = 60;

ModelParams params(double g2, double kappa = 0.02) { return {1.0, kG1, g2, kappa}; }

std::vector<double> emission_grid(double kappa) { return GridSpec{-8.0, 4.0, kappa / 10}.points(); }
std::vector<double> scattering_grid(double kappa) { return GridSpec{-10.0, 10.0, kappa / 10}.points(); }

SpectrumGrid ground_emission(double g2, double kappa = 0.02) {
    return emission_spectrum(number_state(0, kNmax), emission_grid(kappa), params(g2, kappa));
}

SpectrumGrid wide_packet_scattering(double g2) {
    const ModelParams p = params(g2);
    return scattering_spectrum(number_state(0, kNmax), {default_wavepacket_center(p), 2.0}, scattering_grid(p.kappa), p);
}

double nearest_resonance(double location, const ModelParams& p) {
    double best = 1e300;
    for (int n = 0; n < 40; ++n)
        for (int m = 0; m < 40; ++m) best = std::min(best, std::abs(location - sideband_location(n, m, p)));
    return best;
}

Outcome eigensystem() {
    double worst = 0.0;
    for (double g2 : {0.01, 0.05, 0.1}) {
        const ModelParams p = params(g2);
        for (int n = 0; n <= 1; ++n) {
            const auto ev = oracle::diagonalize_sector(n, p, 200);
            for (int m = 0; m <= 10; ++m) worst = std::max(worst, std::abs(eigen_energy(n, m, p) - ev[m]));
        }
    }
    return {worst < 1e-6, fmt::format("max |E_analytic - E_diag| = {:.2e} (tol 1e-6)", worst)};
}

Outcome overlaps() {
    const ModelParams p = params(0.1);
    const auto spec = single_photon_spec(p);
    const auto ref = oracle::converged_overlap_block(spec, 64);
    double worst = 0.0;
    for (int m = 0; m <= 15; ++m)
        for (int n = 0; n <= 15; ++n) worst = std::max(worst, std::abs(overlap_sd(m, n, spec) - ref.block(m, n)));
    return {worst < 1e-8, fmt::format("max |overlap - oracle| over m,n <= 15 = {:.2e} at N = {} (tol 1e-8)", worst, ref.dim)};
}

Outcome unitarity() {
    double worst = 0.0;
    int runs = 0;
    auto record = [&](const SpectrumGrid& s) {
        worst = std::max(worst, std::abs(unit_integral_check(s).total - 1.0));
        ++runs;
    };
    for (double g2 : {0.01, 0.03, 0.05, 0.1}) record(ground_emission(g2));
    for (double kappa : {0.05, 0.08, 0.15}) record(ground_emission(0.05, kappa));
    const ModelParams p = params(0.05);
    const auto T = transition_matrix(p, kNmax);
    for (const char* state : {"sdground", "number:0", "coherent:1,0", "thermal:1"})
        record(emission_spectrum(make_init_state(parse_state_spec(state), kNmax, T), emission_grid(0.02), p, T));
    for (double g2 : {0.01, 0.03, 0.05, 0.1}) record(wide_packet_scattering(g2));
    return {worst <= kUnitIntegralTolerance,
            fmt::format("{} spectra, max |integral - 1| = {:.2e} (tol 5e-3)", runs, worst)};
}

Outcome sub_peak_spacing_value() {
    const auto report = analyze_spectrum(ground_emission(0.05), {1.0, 0.02, kDefaultProminence});
    if (!report.sub_peak_spacing) return {false, "no sub-peak spacing measured"};
    const double expected = sub_peak_spacing(params(0.05)).exact;
    const double rel = std::abs(*report.sub_peak_spacing - expected) / expected;
    return {rel <= 0.05, fmt::format("measured {:.5f}, closed form {:.5f} (rel {:.2e}, tol 5%)",
                                     *report.sub_peak_spacing, expected, rel)};
}

Outcome main_sideband_spacing() {
    double worst = 0.0;
    int pairs = 0;
    for (double g2 : {0.01, 0.03, 0.05, 0.1}) {
        const auto report = analyze_spectrum(ground_emission(g2), {1.0, 0.02, kDefaultProminence});
        std::map<int, double> mains;
        for (const auto& pk : report.peaks)
            if ((pk.cls == PeakClass::MainSideband || pk.cls == PeakClass::ZeroPhonon) && *pk.cluster >= 0)
                mains[*pk.cluster] = pk.location;
        for (const auto& [j, location] : mains) {
            const auto next = mains.find(j + 1);
            if (next == mains.end()) continue;
            worst = std::max(worst, std::abs(location - next->second - 1.0));
            ++pairs;
        }
    }
    return {pairs >= 8 && worst <= 0.01,
            fmt::format("{} adjacent red main-peak pairs, max |gap - omega_m| = {:.2e} (tol kappa/2 = 0.01)", pairs, worst)};
}

Outcome resolution_threshold() {
    std::string detail;
    bool ok = true;
    for (double kappa : {0.02, 0.05, 0.08, 0.15}) {
        const auto report = analyze_spectrum(ground_emission(0.05, kappa), {1.0, kappa, 1e-3});
        const int size = report.max_cluster_size();
        const bool want = kappa < 0.1;
        ok = ok && (want ? size >= 3 : size < 3);
        detail += fmt::format("kappa={}: {} peaks/cluster; ", kappa, size);
    }
    return {ok, detail + "(resolved needs >= 3, 0.15 needs < 3)"};
}

Outcome initial_state_dependence() {
    const ModelParams p = params(0.05);
    const auto T = transition_matrix(p, kNmax);
    const auto grid = emission_grid(p.kappa);
    auto blue_weight = [&](const MechanicalInitState& init) {
        double w = 0.0;
        for (const auto& line : sideband_weights(init, p, T))
            if (line.location > 0.0) w += line.weight;
        return w;
    };
    const auto sd_state = make_init_state(parse_state_spec("sdground"), kNmax, T);
    const auto sd = emission_spectrum(sd_state, grid, p, T);
    std::vector<double> bx, by;
    for (std::size_t i = 0; i < sd.size(); ++i)
        if (sd.deltas[i] > 0.0) {
            bx.push_back(sd.deltas[i]);
            by.push_back(sd.values[i]);
        }
    const double sd_blue = blue_weight(sd_state);
    bool ok = sd_blue < 1e-3;
    std::string detail =
        fmt::format("sdground blue line weight {:.2e} (red-line wings above 0 carry {:.2e}); ", sd_blue, trapezoid(bx, by));
    for (const char* state : {"coherent:1,0", "thermal:1"}) {
        const auto init = make_init_state(parse_state_spec(state), kNmax, T);
        const auto s = emission_spectrum(init, grid, p, T);
        int blue = 0;
        for (const auto& e : find_extrema(s, kDefaultProminence, p.kappa).maxima)
            if (e.location > 0.0) ++blue;
        ok = ok && blue > 0;
        detail += fmt::format("{}: {} blue peaks, blue line weight {:.2e}; ", state, blue, blue_weight(init));
    }
    return {ok, detail};
}

Outcome time_domain() {
    const auto cmp = compare_time_domain(params(0.01));
    return {cmp.l2_error < 1e-2 && cmp.evolution.max_norm_drift < 1e-6,
            fmt::format("L2 relative error {:.2e} (tol 1e-2), norm drift {:.1e}, t = {} / kappa", cmp.l2_error,
                        cmp.evolution.max_norm_drift, TimeDomainSetup{}.t_kappa)};
}

Outcome elastic_limit() {
    const ModelParams p{1.0, 0.0, 0.0, 0.02};
    const WavepacketParams wp{0.0, 2.0};
    const auto s = scattering_spectrum(number_state(0, 4), wp, scattering_grid(p.kappa), p);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double ref = input_lorentzian(s.deltas[i], wp);
        worst = std::max(worst, std::abs(s.values[i] - ref) / ref);
    }
    return {worst <= 1e-10, fmt::format("max relative deviation from the input Lorentzian {:.2e} (tol 1e-10)", worst)};
}

Outcome inference_round_trip() {
    bool ok = true;
    std::string detail;
    for (double g2 : {0.03, 0.05, 0.1}) {
        const auto report = analyze_spectrum(ground_emission(g2), {1.0, 0.02, kDefaultProminence});
        if (!report.inferred_g1 || !report.inferred_g2) {
            ok = false;
            detail += fmt::format("g2={}: no inference; ", g2);
            continue;
        }
        const double e2 = std::abs(*report.inferred_g2 - g2) / g2;
        const double e1 = std::abs(*report.inferred_g1 - kG1) / kG1;
        ok = ok && e2 <= 0.02 && e1 <= 0.02;
        detail += fmt::format("g2={}: g2^={:.5f} g1^={:.5f}; ", g2, *report.inferred_g2, *report.inferred_g1);
    }
    return {ok, detail + "(tol 2%)"};
}

Outcome scattering_dips() {
    bool ok = true;
    std::string detail;
    for (double g2 : {0.01, 0.03, 0.05, 0.1}) {
        const ModelParams p = params(g2);
        const auto dips = interference_dips(wide_packet_scattering(g2), {default_wavepacket_center(p), 2.0}, 0.02, p.kappa);
        int on = 0;
        double worst = 0.0;
        for (const auto& dip : dips) {
            const double d = nearest_resonance(dip.location, p);
            worst = std::max(worst, d);
            if (d <= 0.5 * p.kappa) ++on;
        }
        ok = ok && on >= 3 && on == static_cast<int>(dips.size());
        detail += fmt::format("g2={}: {}/{} dips on resonance (max offset {:.1e}); ", g2, on, dips.size(), worst);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"eigensystem oracle", eigensystem},
        {"overlap oracle", overlaps},
        {"unit integral", unitarity},
        {"sub-peak spacing at g2 = 0.05", sub_peak_spacing_value},
        {"main sideband spacing", main_sideband_spacing},
        {"sub-peak resolution threshold", resolution_threshold},
        {"initial-state dependence", initial_state_dependence},
        {"time-domain equivalence", time_domain},
        {"scattering elastic limit", elastic_limit},
        {"inference round trip", inference_round_trip},
        {"scattering dips", scattering_dips},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        fmt::print("{} {:2d} {}: {} [{:.1f}s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail, secs);
        std::fflush(stdout);
    }
    fmt::print("{}/{} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
