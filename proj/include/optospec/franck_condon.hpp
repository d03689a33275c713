#pragma once

// Overlaps <m| S(zeta) D(beta) |n> between number states and squeezed
// displaced number states, and the single-photon transition matrix built
// from them.

#include <complex>

#include <Eigen/Dense>

#include "optospec/model.hpp"

namespace optospec {

using cplx = std::complex<double>;

/// Physicists' Hermite polynomial H_k(z) by three-term recurrence.
/// Overflow is reported as a non-finite value.
cplx hermite(int k, cplx z);

/// Squeeze zeta = s e^{i theta} followed by displacement beta, in the
/// convention S(zeta) = exp[(zeta^* b^2 - zeta b^{+2}) / 2], D(beta) = exp[beta b^+ - beta^* b].
struct SqueezeDisplaceSpec {
    double s{0.0};
    double theta{0.0};
    cplx beta{0.0, 0.0};

    double mu() const;  // cosh s
    cplx nu() const;    // e^{i theta} sinh s

};

/// <m| S(zeta) D(beta) |n>.
///
/// For s > 0 this evaluates the Hermite-sum closed form. The fractional
/// powers (nu / 2 mu)^{m/2}, (-nu^* / 2 mu)^{(n-k)/2} and the arguments
/// beta / sqrt(2 mu nu), (...) / sqrt(-2 mu nu^*) are absorbed into rescaled
/// Hermite sequences
///   G_j = (nu/2mu)^{j/2} H_j(beta / sqrt(2 mu nu)),
///   F_j = (-nu^*/2mu)^{j/2} H_j((beta nu^* - beta^* mu) / sqrt(-2 mu nu^*)),
/// whose recurrences are polynomial in beta/mu and nu/mu, so no branch cut is
/// crossed and the nu -> 0 limit stays finite. Combinatorial factors are
/// accumulated in log space.
///
/// For s == 0 the displaced-number-state Laguerre form is used.
///
/// Throws DomainError for negative indices or s < 0, NumericError if the
/// result is not finite.
cplx overlap_sd(int m, int n, const SqueezeDisplaceSpec& spec);

/// <m| D(beta) |n> via associated Laguerre polynomials.
cplx displaced_number_overlap(int m, int n, cplx beta);

/// All overlaps <m| S D |n> for m < rows, n < cols.
Eigen::MatrixXcd overlap_table(int rows, int cols, const SqueezeDisplaceSpec& spec);

/// Dense table T(m, n) = <m | n~(1)> = <m| S(r_1) D(alpha_1) |n>, real for
/// this model.
class TransitionMatrix {
public:
    TransitionMatrix() = default;
    TransitionMatrix(ModelParams params, Eigen::MatrixXd entries);

    int n_max() const { return static_cast<int>(entries_.rows()); }
    double operator()(int m, int n) const { return entries_(m, n); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    const ModelParams& params() const { return params_; }

    /// max over n, n' < limit of |sum_m T(m,n) T(m,n') - delta|.
    double orthonormality_defect(int limit) const;

private:
    ModelParams params_{};
    Eigen::MatrixXd entries_;
};

/// Builds the n_max x n_max table for the single-photon squeeze r_1 and
/// displacement alpha_1 of p.
TransitionMatrix transition_matrix(const ModelParams& p, int n_max);

SqueezeDisplaceSpec single_photon_spec(const ModelParams& p);

}  // namespace optospec
