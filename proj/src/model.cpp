#include "optospec/model.hpp"

#include <cmath>
#include <string>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec {

void ModelParams::validate() const {
    if (!std::isfinite(omega_m) || !std::isfinite(g1) || !std::isfinite(g2) || !std::isfinite(kappa)) {
        throw DomainError("model parameters must be finite");
    }
    if (omega_m <= 0.0) {
        throw DomainError(fmt::format("omega_m must be positive (got {})", omega_m));
    }
    if (kappa <= 0.0) {
        throw DomainError(fmt::format("kappa must be positive (got {})", kappa));
    }
    if (4.0 * g2 / omega_m + 1.0 <= 0.0) {
        throw DomainError(fmt::format("g2/omega_m must exceed -1/4 (got {})", g2 / omega_m));
    }
}

double squeeze_param(int n, const ModelParams& p) {
    if (n < 0) {
        throw DomainError(fmt::format("photon number must be non-negative (got {})", n));
    }
    if (n == 0) {
        return 0.0;
    }
    if (p.g2 < 0.0 && n > 1) {
        throw DomainError("negative g2 is only supported in the zero- and one-photon sectors");
    }
    const double arg = 4.0 * p.g2 * n / p.omega_m + 1.0;
    if (!(arg > 0.0)) {
        throw DomainError(fmt::format("squeeze logarithm argument 4 g2 n / omega_m + 1 = {} is not positive", arg));
    }
    return 0.25 * std::log(arg);
}

double displace_param(int n, const ModelParams& p) {
    const double r = squeeze_param(n, p);
    return -p.g1 * std::exp(-3.0 * r) * n / p.omega_m;
}

SqueezeDisplaceParams squeeze_displace(int n, const ModelParams& p) {
    return {n, squeeze_param(n, p), displace_param(n, p)};
}

double eigen_energy(int n, int m, const ModelParams& p) {
    if (m < 0) {
        throw DomainError(fmt::format("phonon number must be non-negative (got {})", m));
    }
    if (n == 0) {
        return p.omega_m * m;
    }
    const double r = squeeze_param(n, p);
    const double sh = std::sinh(r);
    const double nn = static_cast<double>(n);
    return p.g2 * std::exp(-2.0 * r) * nn + p.omega_m * sh * sh + p.omega_m * std::exp(2.0 * r) * m -
           p.g1 * p.g1 * std::exp(-4.0 * r) / p.omega_m * nn * nn;
}

EigenLevel eigen_level(int n, int m, const ModelParams& p) {
    return {n, m, eigen_energy(n, m, p)};
}

double energy_shift_C(const ModelParams& p) {
    const double r = squeeze_param(1, p);
    const double sh = std::sinh(r);
    return p.g1 * p.g1 * std::exp(-4.0 * r) / p.omega_m - p.g2 * std::exp(-2.0 * r) - p.omega_m * sh * sh;
}

double sideband_location(int n, int m, const ModelParams& p) {
    const double r = squeeze_param(1, p);
    return p.omega_m * std::exp(2.0 * r) * n - p.omega_m * m - energy_shift_C(p);
}

SubPeakSpacing sub_peak_spacing(const ModelParams& p) {
    // e^{2 r_1} = sqrt(1 + 4 g2 / omega_m); expm1 form keeps small g2 accurate.
    const double x = 4.0 * p.g2 / p.omega_m;
    if (!(x + 1.0 > 0.0)) {
        throw DomainError("g2/omega_m must exceed -1/4");
    }
    const double exact = p.omega_m * std::expm1(0.5 * std::log1p(x));
    return {exact, 2.0 * p.g2};
}

}  // namespace optospec
