#pragma once

// Peak/dip detection on sampled spectra, classification against the
// resonance ladder, and inversion of the spectral geometry into C, g2, g1.

#include <optional>
#include <string>
#include <vector>

#include "optospec/model.hpp"
#include "optospec/spectrum.hpp"
#include "optospec/states.hpp"

namespace optospec {

struct Extremum {
    double location{0.0};  // refined by a parabola through three samples
    double height{0.0};    // parabola vertex value
    double prominence{0.0};
    std::size_t index{0};  // sample index
};

struct Extrema {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;  // prominence measured on -S
};

inline constexpr double kDefaultProminence = 5e-3;

/// Local maxima and minima whose topographic prominence is at least
/// prominence_frac * max(S). When kappa is given, the grid step must not
/// exceed kappa / 5 (ValidationError otherwise).
Extrema find_extrema(const SpectrumGrid& spectrum, double prominence_frac = kDefaultProminence,
                     std::optional<double> kappa = std::nullopt);

/// Scattering minima that fall below the incident Lorentzian. Local minima
/// between emission peaks that stay above the input are excluded.
std::vector<Extremum> interference_dips(const SpectrumGrid& spectrum, const WavepacketParams& wp,
                                        double prominence_frac = kDefaultProminence,
                                        std::optional<double> kappa = std::nullopt);

struct G2Estimate {
    double exact{0.0};           // omega_m ((1 + d/omega_m)^2 - 1) / 4
    double small_coupling{0.0};  // d / 2
};

/// Inverts the sub-peak spacing d = omega_m (e^{2 r_1} - 1).
G2Estimate infer_g2(double sub_peak_spacing, double omega_m = 1.0);

struct CG1Estimate {
    double C{0.0};
    double g1{0.0};
};

/// C = -delta_zp and g1 = sqrt(omega_m e^{4 r_1} (C + g2 e^{-2 r_1} + omega_m sinh^2 r_1)).
/// Throws ValidationError when the radicand is negative.
CG1Estimate infer_C_and_g1(double zero_phonon_location, double g2_hat, double omega_m = 1.0);

struct Resolution {
    bool ok{false};
    double margin{0.0};  // sub-peak spacing / kappa
};

/// ok iff omega_m > kappa and omega_m (e^{2 r_1} - 1) > kappa.
Resolution check_resolution(const ModelParams& p);

enum class PeakClass { MainSideband, SubPeak, ZeroPhonon, Unclassified };

const char* to_string(PeakClass c);

struct PeakEntry {
    double location{0.0};
    double height{0.0};
    double prominence{0.0};
    PeakClass cls{PeakClass::Unclassified};
    std::optional<int> cluster;  // main-sideband index j: main peak near delta_zp - j omega_m
};

struct DipEntry {
    double location{0.0};
    double depth{0.0};  // prominence of the minimum
};

struct PeakReport {
    std::vector<PeakEntry> peaks;  // increasing location
    std::vector<DipEntry> dips;
    std::optional<double> zero_phonon_location;
    std::optional<double> sub_peak_spacing;
    std::optional<double> inferred_C;
    std::optional<double> inferred_g2;
    std::optional<double> inferred_g1;
    bool resolution_ok{false};
    double resolution_margin{0.0};
    std::vector<std::string> warnings;

    /// Largest number of peaks sharing one main-sideband cluster.
    int max_cluster_size() const;
};

struct AnalysisOptions {
    double omega_m{1.0};
    double kappa{0.02};
    double prominence_frac{kDefaultProminence};
};

/// Ground-state spectral inversion:
///  1. zero-phonon line: among red-side peaks (delta < kappa/2) with at least
///     half the largest red-side prominence, the one closest to delta = 0;
///  2. clusters: peak at delta joins cluster j = floor((delta_zp - delta)/omega_m + 3/4),
///     since sub peaks sit on the blue side of their main peak;
///  3. sub-peak spacing: median of consecutive gaps inside red clusters (j >= 0);
///  4. g2 from the spacing, then C and g1 from the zero-phonon line.
/// Spectra whose blue side holds a peak more prominent than the zero-phonon
/// candidate are flagged and not inverted.
PeakReport analyze_spectrum(const SpectrumGrid& spectrum, const AnalysisOptions& options = {});

}  // namespace optospec
