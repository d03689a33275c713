#pragma once

// Shared per-detuning kernel for the emission and scattering spectra.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "optospec/franck_condon.hpp"
#include "optospec/model.hpp"
#include "optospec/spectrum.hpp"
#include "optospec/states.hpp"

namespace optospec::detail {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Mechanical energies and overlaps restricted to `levels` bare/dressed states,
/// plus the initial-state support (leading block of non-negligible phonons).
struct Channels {
    int levels{0};
    int support{0};
    Eigen::MatrixXd T;       // levels x levels
    Eigen::VectorXd e0;      // E'_{0,m}
    Eigen::VectorXd e1;      // E'_{1,n}
    double kappa{0.0};
    std::optional<Vec> pure;                 // C_{m0}, length support
    std::optional<Eigen::VectorXd> weights;  // P_{m0}, length support
    double truncation_tail{0.0};

    Channels(const MechanicalInitState& init, const ModelParams& p, const TransitionMatrix& T);

    /// K(m, m0) = sum_n T(m,n) T(m0,n) / (delta + e0_m - e1_n + i kappa/2),
    /// for m < levels and m0 < support.
    Mat cavity_kernel(double delta) const;
};

/// Fills meta fields shared by both processes.
SpectrumMeta make_meta(const char* process, const MechanicalInitState& init, const ModelParams& p,
                       const Channels& ch);

}  // namespace optospec::detail
