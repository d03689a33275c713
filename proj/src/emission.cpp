#include "optospec/emission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "channels.hpp"
#include "optospec/errors.hpp"

namespace optospec {

double bath_coupling(const ModelParams& p) { return std::sqrt(p.kappa / (2.0 * std::numbers::pi)); }

std::complex<double> emission_amplitude(int m0, int m, double delta, const ModelParams& p, const TransitionMatrix& T) {
    if (m0 < 0 || m < 0 || m0 >= T.n_max() || m >= T.n_max()) {
        throw DomainError(fmt::format("phonon indices ({}, {}) outside truncation {}", m0, m, T.n_max()));
    }
    const std::complex<double> half_kappa{0.0, 0.5 * p.kappa};
    const double e0 = eigen_energy(0, m, p);
    std::complex<double> sum{0.0, 0.0};
    for (int n = 0; n < T.n_max(); ++n) {
        const double num = T(m, n) * T(m0, n);
        if (std::abs(num) < 1e-14) continue;
        sum += num / (delta + e0 - eigen_energy(1, n, p) + half_kappa);
    }
    return bath_coupling(p) * sum;
}

SpectrumGrid emission_spectrum(const MechanicalInitState& init, const std::vector<double>& grid, const ModelParams& p,
                               const TransitionMatrix& T) {
    const detail::Channels ch(init, p, T);
    const double xi2 = p.kappa / (2.0 * std::numbers::pi);

    SpectrumGrid out;
    out.deltas = grid;
    out.values.assign(grid.size(), 0.0);
    out.meta = detail::make_meta("emission", init, p, ch);

    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const detail::Mat kernel = ch.cavity_kernel(grid[i]);
        double s = 0.0;
        if (ch.pure) {
            s = (kernel * *ch.pure).squaredNorm();
        } else {
            for (int m0 = 0; m0 < ch.support; ++m0) {
                s += (*ch.weights)(m0) * kernel.col(m0).squaredNorm();
            }
        }
        out.values[i] = xi2 * s;
    }
    return out;
}

SpectrumGrid emission_spectrum(const MechanicalInitState& init, const std::vector<double>& grid, const ModelParams& p) {
    return emission_spectrum(init, grid, p, transition_matrix(p, init.truncation));
}

std::vector<SidebandLine> sideband_weights(const MechanicalInitState& init, const ModelParams& p,
                                           const TransitionMatrix& T, double min_weight) {
    const int levels = std::min(init.truncation, T.n_max());
    std::vector<SidebandLine> out;
    for (int n = 0; n < levels; ++n) {
        double pop = 0.0;
        if (init.is_pure()) {
            std::complex<double> amp = 0.0;
            for (int m0 = 0; m0 < levels; ++m0) amp += (*init.pure_amplitudes)(m0) * T(m0, n);
            pop = std::norm(amp);
        } else {
            for (int m0 = 0; m0 < levels; ++m0) pop += (*init.mixture_weights)(m0) * T(m0, n) * T(m0, n);
        }
        for (int m = 0; m < levels; ++m) {
            const double w = pop * T(m, n) * T(m, n);
            if (w > min_weight) out.push_back({n, m, sideband_location(n, m, p), w});
        }
    }
    std::sort(out.begin(), out.end(), [](const SidebandLine& a, const SidebandLine& b) { return a.location < b.location; });
    return out;
}

IntegralCheck require_unit_integral(const SpectrumGrid& spectrum, double tolerance) {
    const IntegralCheck c = unit_integral_check(spectrum, tolerance);
    if (!c.ok) {
        throw ValidationError(fmt::format("{} spectrum integrates to {:.6f} (window {:.6f}), outside 1 +/- {:.0e}",
                                          spectrum.meta.process, c.total, c.window, tolerance));
    }
    return c;
}

}  // namespace optospec
