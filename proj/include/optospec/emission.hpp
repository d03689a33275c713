#pragma once

// Long-time single-photon emission amplitudes and spectra. The bath mode
// density is fixed to rho = 1, so xi^2 = kappa / (2 pi) and spectra carry
// units of 1/omega_m and integrate to the emission probability 1.

#include <complex>
#include <vector>

#include "optospec/franck_condon.hpp"
#include "optospec/model.hpp"
#include "optospec/spectrum.hpp"
#include "optospec/states.hpp"

namespace optospec {

/// Default phonon truncation for spectra at the figure-scale parameters.
inline constexpr int kDefaultTruncation = 60;

/// Bath coupling xi for rho = 1.
double bath_coupling(const ModelParams& p);

/// B_{m0,m}(delta): amplitude for the photon to leave at detuning delta,
/// taking the mechanics from bare |m0> to bare |m>. Terms whose overlap
/// product is below 1e-14 are skipped.
std::complex<double> emission_amplitude(int m0, int m, double delta, const ModelParams& p, const TransitionMatrix& T);

/// Emission spectrum for a pure or mixed mechanical initial state.
/// T must cover init.truncation levels.
SpectrumGrid emission_spectrum(const MechanicalInitState& init, const std::vector<double>& grid, const ModelParams& p,
                               const TransitionMatrix& T);

/// Builds T with init.truncation levels.
SpectrumGrid emission_spectrum(const MechanicalInitState& init, const std::vector<double>& grid, const ModelParams& p);

/// One emission resonance: dressed level n relaxing to bare level m.
struct SidebandLine {
    int n{0};
    int m{0};
    double location{0.0};  // omega_m e^{2 r_1} n - omega_m m - C
    double weight{0.0};    // <n~|rho|n~> T_{mn}^2
};

/// Resonances with weight above min_weight, in order of location. The
/// weights sum to one up to truncation; interference between lines that
/// share m is not included.
std::vector<SidebandLine> sideband_weights(const MechanicalInitState& init, const ModelParams& p,
                                           const TransitionMatrix& T, double min_weight = 0.0);

/// Throws ValidationError when the spectrum misses the unit integral.
IntegralCheck require_unit_integral(const SpectrumGrid& spectrum, double tolerance = kUnitIntegralTolerance);

}  // namespace optospec
