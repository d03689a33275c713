#include "optospec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec {

namespace {

// Plateau-aware local maxima (index of the plateau middle).
std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
    std::vector<std::size_t> out;
    const std::size_t n = y.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (y[i - 1] < y[i]) {
            std::size_t j = i;
            while (j + 2 < n && y[j + 1] == y[i]) ++j;
            if (y[j + 1] < y[i]) {
                out.push_back((i + j) / 2);
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

// Topographic prominence: height above the higher of the two lowest points
// reachable on either side before meeting a taller sample.
double prominence(const std::vector<double>& y, std::size_t p) {
    double left = y[p];
    for (std::size_t i = p; i-- > 0;) {
        if (y[i] > y[p]) break;
        left = std::min(left, y[i]);
    }
    double right = y[p];
    for (std::size_t i = p + 1; i < y.size(); ++i) {
        if (y[i] > y[p]) break;
        right = std::min(right, y[i]);
    }
    return y[p] - std::max(left, right);
}

Extremum refine(const std::vector<double>& x, const std::vector<double>& y, std::size_t p, double prom) {
    Extremum e{x[p], y[p], prom, p};
    if (p == 0 || p + 1 >= y.size()) return e;
    const double denom = y[p - 1] - 2.0 * y[p] + y[p + 1];
    if (denom == 0.0) return e;
    const double offset = std::clamp(0.5 * (y[p - 1] - y[p + 1]) / denom, -1.0, 1.0);
    const double h = 0.5 * (x[p + 1] - x[p - 1]);
    e.location = x[p] + offset * h;
    e.height = y[p] - 0.25 * (y[p - 1] - y[p + 1]) * offset;
    return e;
}

std::vector<Extremum> collect(const std::vector<double>& x, const std::vector<double>& y, double threshold, bool negate) {
    std::vector<double> work = y;
    if (negate) {
        for (double& v : work) v = -v;
    }
    std::vector<Extremum> out;
    for (std::size_t p : local_maxima(work)) {
        const double prom = prominence(work, p);
        if (prom >= threshold && prom > 0.0) {
            Extremum e = refine(x, work, p, prom);
            if (negate) e.height = -e.height;
            out.push_back(e);
        }
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Rung {
    int n{0};
    double distance{0.0};
};

// Closest ladder point of cluster j to `location`:
// -C - j omega + n omega (e^{2 r_1} - 1) with n >= max(0, -j).
Rung nearest_rung(double location, int j, const ModelParams& p) {
    const double c = energy_shift_C(p);
    const double spacing = sub_peak_spacing(p).exact;
    const double base = -c - j * p.omega_m;
    const int n_lo = std::max(0, -j);
    Rung best{n_lo, std::abs(location - (base + n_lo * spacing))};
    if (spacing > 0.0) {
        const double n_star = (location - base) / spacing;
        for (double n : {std::floor(n_star), std::ceil(n_star)}) {
            const double d = std::abs(location - (base + n * spacing));
            if (n >= n_lo && d < best.distance) best = {static_cast<int>(n), d};
        }
    }
    return best;
}

}  // namespace

Extrema find_extrema(const SpectrumGrid& spectrum, double prominence_frac, std::optional<double> kappa) {
    if (spectrum.deltas.size() != spectrum.values.size()) {
        throw UsageError("spectrum axis and values differ in length");
    }
    if (!(prominence_frac >= 0.0)) {
        throw UsageError(fmt::format("prominence fraction must be non-negative (got {})", prominence_frac));
    }
    Extrema out;
    if (spectrum.size() < 3) return out;
    if (kappa) {
        const double step = spectrum.step();
        if (step > *kappa / 5.0 * (1.0 + 1e-9)) {
            throw ValidationError(
                fmt::format("grid step {} exceeds kappa/5 = {}; extrema positions would be unreliable", step, *kappa / 5.0));
        }
    }
    const double peak = *std::max_element(spectrum.values.begin(), spectrum.values.end());
    if (!(peak > 0.0)) return out;
    const double threshold = prominence_frac * peak;
    out.maxima = collect(spectrum.deltas, spectrum.values, threshold, false);
    out.minima = collect(spectrum.deltas, spectrum.values, threshold, true);
    return out;
}

std::vector<Extremum> interference_dips(const SpectrumGrid& spectrum, const WavepacketParams& wp, double prominence_frac,
                                        std::optional<double> kappa) {
    std::vector<Extremum> out;
    for (const auto& e : find_extrema(spectrum, prominence_frac, kappa).minima) {
        if (e.height < input_lorentzian(e.location, wp)) out.push_back(e);
    }
    return out;
}

G2Estimate infer_g2(double sub_peak_spacing, double omega_m) {
    if (!(sub_peak_spacing >= 0.0) || !(omega_m > 0.0)) {
        throw DomainError(fmt::format("infer_g2 needs spacing >= 0 and omega_m > 0 (got {}, {})", sub_peak_spacing, omega_m));
    }
    const double x = sub_peak_spacing / omega_m;
    return {omega_m * x * (2.0 + x) / 4.0, 0.5 * sub_peak_spacing};
}

CG1Estimate infer_C_and_g1(double zero_phonon_location, double g2_hat, double omega_m) {
    ModelParams p{omega_m, 0.0, g2_hat, 1.0};
    const double r = squeeze_param(1, p);
    const double c = -zero_phonon_location;
    const double sh = std::sinh(r);
    double radicand = c + g2_hat * std::exp(-2.0 * r) + omega_m * sh * sh;
    if (radicand < 0.0 && radicand > -1e-12 * omega_m) radicand = 0.0;
    if (radicand < 0.0) {
        throw ValidationError(fmt::format(
            "zero-phonon line at {} is inconsistent with g2 = {} (negative g1^2); the line is probably misidentified",
            zero_phonon_location, g2_hat));
    }
    return {c, std::sqrt(omega_m * std::exp(4.0 * r) * radicand)};
}

Resolution check_resolution(const ModelParams& p) {
    const double spacing = sub_peak_spacing(p).exact;
    return {p.omega_m > p.kappa && spacing > p.kappa, spacing / p.kappa};
}

const char* to_string(PeakClass c) {
    switch (c) {
        case PeakClass::MainSideband:
            return "main_sideband";
        case PeakClass::SubPeak:
            return "sub_peak";
        case PeakClass::ZeroPhonon:
            return "zero_phonon";
        case PeakClass::Unclassified:
            return "unclassified";
    }
    return "unclassified";
}

int PeakReport::max_cluster_size() const {
    std::map<int, int> counts;
    int best = 0;
    for (const auto& pk : peaks) {
        if (pk.cluster) best = std::max(best, ++counts[*pk.cluster]);
    }
    return best;
}

PeakReport analyze_spectrum(const SpectrumGrid& spectrum, const AnalysisOptions& options) {
    if (!(options.omega_m > 0.0) || !(options.kappa > 0.0)) {
        throw UsageError("analysis needs omega_m > 0 and kappa > 0");
    }
    const Extrema ext = find_extrema(spectrum, options.prominence_frac, options.kappa);
    PeakReport report;
    for (const auto& e : ext.maxima) {
        report.peaks.push_back({e.location, e.height, e.prominence, PeakClass::Unclassified, std::nullopt});
    }
    for (const auto& e : ext.minima) {
        report.dips.push_back({e.location, e.prominence});
    }
    if (report.peaks.empty()) {
        report.warnings.emplace_back("no peaks above the prominence threshold");
        return report;
    }

    // The zero-phonon line of a weakly coupled cavity sits at delta ~ 0.
    const double red_edge = 0.5 * options.kappa;
    double red_prominence = 0.0;
    for (const auto& pk : report.peaks)
        if (pk.location < red_edge) red_prominence = std::max(red_prominence, pk.prominence);
    if (red_prominence <= 0.0) {
        report.warnings.emplace_back("no red-sideband peak; zero-phonon line not identified");
        return report;
    }
    const PeakEntry* zpl = nullptr;
    for (const auto& pk : report.peaks) {
        if (pk.location < red_edge && pk.prominence >= 0.5 * red_prominence) zpl = &pk;  // sorted: keeps the rightmost
    }
    const double zpl_location = zpl->location;
    const double zpl_prominence = zpl->prominence;
    report.zero_phonon_location = zpl_location;

    // Cluster assignment and structural classes.
    std::map<int, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < report.peaks.size(); ++i) {
        const int j = static_cast<int>(std::floor((zpl_location - report.peaks[i].location) / options.omega_m + 0.75));
        report.peaks[i].cluster = j;
        clusters[j].push_back(i);
    }
    std::vector<double> gaps;
    for (const auto& [j, members] : clusters) {
        for (std::size_t k = 0; k < members.size(); ++k) {
            PeakEntry& pk = report.peaks[members[k]];
            pk.cls = k == 0 ? (j == 0 ? PeakClass::ZeroPhonon : PeakClass::MainSideband) : PeakClass::SubPeak;
            if (j >= 0 && k > 0) {
                gaps.push_back(pk.location - report.peaks[members[k - 1]].location);
            }
        }
    }

    bool blue_dominant = false;
    for (const auto& pk : report.peaks)
        if (pk.location > red_edge && pk.prominence > zpl_prominence) blue_dominant = true;
    if (blue_dominant) {
        report.warnings.emplace_back(
            "a blue-sideband peak is more prominent than the zero-phonon candidate; the initial state is probably not "
            "the mechanical ground state, so couplings are not inferred");
        return report;
    }

    double g2_hat = 0.0;
    if (gaps.empty()) {
        report.warnings.emplace_back("no sub peaks resolved; g2 taken as 0");
    } else {
        report.sub_peak_spacing = median(gaps);
        g2_hat = infer_g2(*report.sub_peak_spacing, options.omega_m).exact;
    }
    report.inferred_g2 = g2_hat;
    try {
        const CG1Estimate cg = infer_C_and_g1(zpl_location, g2_hat, options.omega_m);
        report.inferred_C = cg.C;
        report.inferred_g1 = cg.g1;
    } catch (const ValidationError& e) {
        report.warnings.emplace_back(e.what());
        return report;
    }

    const ModelParams fitted{options.omega_m, *report.inferred_g1, g2_hat, options.kappa};
    const Resolution res = check_resolution(fitted);
    report.resolution_ok = res.ok;
    report.resolution_margin = res.margin;
    bool off_ladder = false;
    for (auto& pk : report.peaks) {
        const int j = *pk.cluster;
        const Rung rung = nearest_rung(pk.location, j, fitted);
        if (rung.n == std::max(0, -j)) {
            pk.cls = j == 0 ? PeakClass::ZeroPhonon : PeakClass::MainSideband;
        } else {
            pk.cls = PeakClass::SubPeak;
        }
        if (rung.distance > 0.5 * options.kappa) {
            pk.cls = PeakClass::Unclassified;
            off_ladder = off_ladder || pk.prominence >= 0.25 * zpl_prominence;
        }
    }
    if (off_ladder) {
        report.warnings.emplace_back(
            "strong peaks lie off the fitted ground-state ladder; the initial state is probably not the mechanical "
            "ground state, so couplings are not inferred");
        report.inferred_C.reset();
        report.inferred_g1.reset();
        report.inferred_g2.reset();
        report.resolution_ok = false;
        report.resolution_margin = 0.0;
    }
    return report;
}

}  // namespace optospec
