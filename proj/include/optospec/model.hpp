#pragma once

// Closed-form eigensystem of the mixed (linear + quadratic) optomechanical
// cavity in the zero- and one-photon sectors, rotating frame.

#include <cstddef>

namespace optospec {

/// Physical rates of the model. All values share one frequency unit;
/// the library conventionally uses omega_m = 1.
struct ModelParams {
    double omega_m{1.0};  // mechanical frequency
    double g1{0.0};       // linear coupling
    double g2{0.0};       // quadratic coupling
    double kappa{0.02};   // cavity decay rate

    /// Throws DomainError unless all rates are finite, omega_m > 0,
    /// kappa > 0 and g2 > -omega_m / 4.
    void validate() const;
};

/// Photon-number dependent squeeze and displacement of the mechanical mode.
struct SqueezeDisplaceParams {
    int n{0};
    double r{0.0};
    double alpha{0.0};
};

struct EigenLevel {
    int n{0};
    int m{0};
    double energy{0.0};
};

/// Sub-peak spacing omega_m (e^{2 r_1} - 1) together with its small-g2
/// estimate 2 g2.
struct SubPeakSpacing {
    double exact{0.0};
    double small_coupling{0.0};
};

/// r_n = ln(4 g2 n / omega_m + 1) / 4.
/// Negative g2 is accepted only for n <= 1.
double squeeze_param(int n, const ModelParams& p);

/// alpha_n = -g1 e^{-3 r_n} n / omega_m.
double displace_param(int n, const ModelParams& p);

SqueezeDisplaceParams squeeze_displace(int n, const ModelParams& p);

/// Rotating-frame eigenvalue E'_{n,m}.
double eigen_energy(int n, int m, const ModelParams& p);

EigenLevel eigen_level(int n, int m, const ModelParams& p);

/// Single-photon ground-level shift C; equals -eigen_energy(1, 0).
double energy_shift_C(const ModelParams& p);

/// Detuning of the (dressed n -> bare m) emission resonance,
/// omega_m e^{2 r_1} n - omega_m m - C.
double sideband_location(int n, int m, const ModelParams& p);

SubPeakSpacing sub_peak_spacing(const ModelParams& p);

}  // namespace optospec
