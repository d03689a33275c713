#pragma once

// Long-time scattering of a single photon injected in a Lorentzian
// wavepacket. Same rho = 1 convention as the emission module.

#include <complex>
#include <vector>

#include "optospec/franck_condon.hpp"
#include "optospec/model.hpp"
#include "optospec/spectrum.hpp"
#include "optospec/states.hpp"

namespace optospec {

/// B_{m0,m}(delta): direct reflection (m == m0 only) minus the
/// cavity-mediated channel.
std::complex<double> scattering_amplitude(int m0, int m, double delta, const WavepacketParams& wp,
                                          const ModelParams& p, const TransitionMatrix& T);

SpectrumGrid scattering_spectrum(const MechanicalInitState& init, const WavepacketParams& wp,
                                 const std::vector<double>& grid, const ModelParams& p, const TransitionMatrix& T);

SpectrumGrid scattering_spectrum(const MechanicalInitState& init, const WavepacketParams& wp,
                                 const std::vector<double>& grid, const ModelParams& p);

/// Wavepacket centre used when none is given: the zero-phonon line, -C.
double default_wavepacket_center(const ModelParams& p);

}  // namespace optospec
