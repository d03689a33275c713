#include "optospec/scattering.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "channels.hpp"
#include "optospec/errors.hpp"

namespace optospec {

std::complex<double> scattering_amplitude(int m0, int m, double delta, const WavepacketParams& wp,
                                          const ModelParams& p, const TransitionMatrix& T) {
    wp.validate();
    if (m0 < 0 || m < 0 || m0 >= T.n_max() || m >= T.n_max()) {
        throw DomainError(fmt::format("phonon indices ({}, {}) outside truncation {}", m0, m, T.n_max()));
    }
    using namespace std::complex_literals;
    const double e0m = eigen_energy(0, m, p);
    const double e0m0 = eigen_energy(0, m0, p);
    const std::complex<double> packet = delta - wp.delta0 + e0m - e0m0 + 1i * wp.epsilon;
    std::complex<double> cavity{0.0, 0.0};
    for (int n = 0; n < T.n_max(); ++n) {
        const double num = T(m, n) * T(m0, n);
        if (std::abs(num) < 1e-14) continue;
        cavity += num / (delta + e0m - eigen_energy(1, n, p) + 0.5i * p.kappa);
    }
    std::complex<double> amp = -1i * p.kappa * cavity / packet;
    if (m == m0) {
        amp += 1.0 / (delta - wp.delta0 + 1i * wp.epsilon);
    }
    return std::sqrt(wp.epsilon / std::numbers::pi) * amp;
}

SpectrumGrid scattering_spectrum(const MechanicalInitState& init, const WavepacketParams& wp,
                                 const std::vector<double>& grid, const ModelParams& p, const TransitionMatrix& T) {
    wp.validate();
    using namespace std::complex_literals;
    const detail::Channels ch(init, p, T);
    const double norm = wp.epsilon / std::numbers::pi;

    SpectrumGrid out;
    out.deltas = grid;
    out.values.assign(grid.size(), 0.0);
    out.meta = detail::make_meta("scattering", init, p, ch);
    out.meta.wavepacket = wp;

    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const double delta = grid[i];
        // B(m, m0) for every final m and initial m0 in the support.
        detail::Mat b = ch.cavity_kernel(delta);
        for (int m0 = 0; m0 < ch.support; ++m0) {
            for (int m = 0; m < ch.levels; ++m) {
                const std::complex<double> packet = delta - wp.delta0 + ch.e0(m) - ch.e0(m0) + 1i * wp.epsilon;
                b(m, m0) = -1i * ch.kappa * b(m, m0) / packet;
            }
            b(m0, m0) += 1.0 / (delta - wp.delta0 + 1i * wp.epsilon);
        }
        double s = 0.0;
        if (ch.pure) {
            s = (b * *ch.pure).squaredNorm();
        } else {
            for (int m0 = 0; m0 < ch.support; ++m0) {
                s += (*ch.weights)(m0) * b.col(m0).squaredNorm();
            }
        }
        out.values[i] = norm * s;
    }
    return out;
}

SpectrumGrid scattering_spectrum(const MechanicalInitState& init, const WavepacketParams& wp,
                                 const std::vector<double>& grid, const ModelParams& p) {
    return scattering_spectrum(init, wp, grid, p, transition_matrix(p, init.truncation));
}

double default_wavepacket_center(const ModelParams& p) { return -energy_shift_C(p); }

}  // namespace optospec
