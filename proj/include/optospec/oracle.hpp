#pragma once

// Brute-force references for the closed forms: truncated Fock-space
// operators, dense matrix exponentials, direct diagonalisation of the
// photon-number sectors, and time-domain evolution of the single-photon
// amplitudes against a discretised bath.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "optospec/franck_condon.hpp"
#include "optospec/model.hpp"
#include "optospec/spectrum.hpp"
#include "optospec/states.hpp"

namespace optospec::oracle {

struct TruncatedOperator {
    int dim{0};
    Eigen::MatrixXcd matrix;
};

/// b with b(m, m+1) = sqrt(m+1).
TruncatedOperator annihilation(int dim);
TruncatedOperator creation(int dim);

/// max |[b, b^+] - I| over the first dim-1 rows.
double commutator_defect(int dim);

/// exp(K) for anti-Hermitian K, via the eigendecomposition of the
/// Hermitian matrix iK.
Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& generator);

/// Dense <m| S(zeta) D(beta) |n> block for m, n < dim / 4 computed at
/// truncation dim.
Eigen::MatrixXcd overlap_block(const SqueezeDisplaceSpec& spec, int dim);

struct ConvergedBlock {
    Eigen::MatrixXcd block;  // indices < requested_dim / 4
    int dim{0};              // truncation that met the doubling test
    double doubling_change{0.0};
};

inline constexpr double kDoublingTolerance = 1e-10;
inline constexpr int kMaxOracleDim = 800;

/// Overlap block that passes the N-doubling test (change < 1e-10),
/// starting at `dim` and doubling up to kMaxOracleDim. Throws NumericError
/// when the test never passes.
ConvergedBlock converged_overlap_block(const SqueezeDisplaceSpec& spec, int dim);

/// <m| S(r_1) D(alpha_1) |n> by matrix exponentials. Requires m, n < dim / 4.
std::complex<double> oracle_overlap(int m, int n, const ModelParams& p, int dim);

/// Ascending eigenvalues of omega_m b^+b + g1 n (b + b^+) + g2 n (b + b^+)^2
/// truncated to dim, for n_photon in {0, 1}.
std::vector<double> diagonalize_sector(int n_photon, const ModelParams& p, int dim);

/// Uniformly spaced bath modes with flat density: xi_k^2 = (kappa / 2 pi) d_delta.
struct BathDiscretization {
    int n_modes{0};
    double delta_min{0.0};
    double delta_max{0.0};
    std::vector<double> detunings;
    std::vector<double> couplings;

    double spacing() const;
    /// 2 pi / spacing: the time after which the discrete bath revives.
    double recurrence_time() const;
};

BathDiscretization make_bath(double kappa, double delta_min, double delta_max, int n_modes);

enum class PhotonLocation { Cavity, Bath };

/// Pure initial condition. Cavity: A_m(0) = sum_{m0} C_{m0} <m~(1)|m0>.
/// Bath: B_{m,k}(0) = C_m sqrt(eps d_delta / pi) / (delta_k - delta0 + i eps).
struct EvolutionInit {
    Eigen::VectorXcd mechanical;  // C_{m0}
    PhotonLocation location{PhotonLocation::Cavity};
    std::optional<WavepacketParams> wavepacket;
};

EvolutionInit cavity_photon(const MechanicalInitState& mech);
EvolutionInit wavepacket_photon(const MechanicalInitState& mech, const WavepacketParams& wp);

struct AmplitudeSnapshot {
    double time{0.0};
    Eigen::VectorXcd cavity;  // A_m, dressed basis
    Eigen::MatrixXcd bath;    // B(m, k), bare phonon m, bath mode k

    double norm() const;
    double cavity_population() const { return cavity.squaredNorm(); }
};

struct EvolveOptions {
    /// Largest scaled Chebyshev argument per time chunk.
    double chunk_argument{40.0};
    /// Series cut once |J_k| drops below this.
    double series_tolerance{1e-16};
    /// Norm drift that aborts the run.
    double norm_drift_limit{1e-5};
};

struct EvolutionResult {
    AmplitudeSnapshot final;
    std::vector<double> times;   // chunk boundaries
    std::vector<double> norms;   // norm at each boundary
    double max_norm_drift{0.0};
    double tail_population{0.0};  // population in the highest phonon level
    int chebyshev_terms{0};
};

/// Integrates
///   dA_m/dt = -i E'_{1,m} A_m - i sum_{n,k} xi_k <m~(1)|n> B_{n,k}
///   dB_{m,k}/dt = -i (E'_{0,m} + delta_k) B_{m,k} - i xi_k sum_n <m|n~(1)> A_n
/// with a Chebyshev expansion of the propagator over time chunks.
/// Throws DomainError if t_final reaches the bath recurrence time and
/// ValidationError if the norm drifts beyond options.norm_drift_limit.
EvolutionResult evolve_amplitudes(const ModelParams& p, const BathDiscretization& bath, const EvolutionInit& init,
                                  double t_final, int n_max, const EvolveOptions& options = {});

/// S(delta_k) = sum_m |B_{m,k}|^2 / d_delta, averaged over `bin` adjacent modes.
SpectrumGrid bath_spectrum(const AmplitudeSnapshot& snap, const BathDiscretization& bath, int bin = 1);

/// sqrt(sum (a - b)^2 / sum b^2) over matching samples.
double l2_relative_error(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace optospec::oracle
