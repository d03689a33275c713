#include "optospec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec::oracle {

namespace {

using cplx = std::complex<double>;
using namespace std::complex_literals;

Eigen::MatrixXd real_annihilation(int dim) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    for (int m = 0; m + 1 < dim; ++m) b(m, m + 1) = std::sqrt(m + 1.0);
    return b;
}

void check_dim(int dim, int minimum) {
    if (dim < minimum) {
        throw DomainError(fmt::format("truncation {} is below the minimum {}", dim, minimum));
    }
}

// Single-photon-subspace state: cavity amplitudes A and bath amplitudes B.
struct State {
    Eigen::VectorXcd a;
    Eigen::MatrixXcd b;
};

// H restricted to the single-photon subspace.
class SubspaceHamiltonian {
public:
    SubspaceHamiltonian(const ModelParams& p, const BathDiscretization& bath, int n_max)
        : t_(transition_matrix(p, n_max).entries()), e0_(n_max), e1_(n_max),
          xi_(Eigen::Map<const Eigen::VectorXd>(bath.couplings.data(), bath.n_modes)),
          delta_(Eigen::Map<const Eigen::VectorXd>(bath.detunings.data(), bath.n_modes)) {
        for (int m = 0; m < n_max; ++m) {
            e0_(m) = eigen_energy(0, m, p);
            e1_(m) = eigen_energy(1, m, p);
        }
        const double lo = std::min(e1_.minCoeff(), e0_.minCoeff() + delta_.minCoeff());
        const double hi = std::max(e1_.maxCoeff(), e0_.maxCoeff() + delta_.maxCoeff());
        const double t_norm1 = t_.cwiseAbs().colwise().sum().maxCoeff();
        const double t_norm_inf = t_.cwiseAbs().rowwise().sum().maxCoeff();
        const double coupling = xi_.norm() * std::sqrt(t_norm1 * t_norm_inf);
        center_ = 0.5 * (hi + lo);
        half_width_ = (0.5 * (hi - lo) + coupling) * (1.0 + 1e-6) + 1e-12;
        e0_.array() -= center_;
        e1_.array() -= center_;
    }

    const Eigen::MatrixXd& transition() const { return t_; }
    double center() const { return center_; }
    double half_width() const { return half_width_; }

    // One Chebyshev recurrence step in a single sweep over the bath block:
    // target <- 2 H~ cur - target (or H~ cur on the first step), then
    // acc += coeff * target. H~ = (H - center) / half_width.
    void recurrence(const State& cur, State& target, bool first, State& acc, cplx coeff) const {
        const double f = (first ? 1.0 : 2.0) / half_width_;
        const Eigen::VectorXcd s = cur.b * xi_;
        const Eigen::VectorXcd u = t_ * cur.a;
        Eigen::VectorXcd a = f * (e1_.cast<cplx>().cwiseProduct(cur.a) + t_.transpose() * s);
        if (!first) a -= target.a;
        target.a = a;
        acc.a += coeff * a;

        const Eigen::Index rows = cur.b.rows();
        const Eigen::Index cols = cur.b.cols();
#pragma omp parallel for schedule(static)
        for (Eigen::Index k = 0; k < cols; ++k) {
            const double d = delta_(k);
            const cplx x = xi_(k);
            const cplx* c = cur.b.col(k).data();
            cplx* t = target.b.col(k).data();
            cplx* r = acc.b.col(k).data();
            for (Eigen::Index m = 0; m < rows; ++m) {
                cplx v = f * ((e0_(m) + d) * c[m] + u(m) * x);
                if (!first) v -= t[m];
                t[m] = v;
                r[m] += coeff * v;
            }
        }
    }

private:
    Eigen::MatrixXd t_;
    Eigen::VectorXd e0_;  // shifted by -center
    Eigen::VectorXd e1_;
    Eigen::VectorXd xi_;
    Eigen::VectorXd delta_;
    double center_{0.0};
    double half_width_{1.0};
};

// Expansion coefficients of exp(-i x y) in T_k(y): J_0(x), 2 (-i)^k J_k(x).
std::vector<cplx> chebyshev_coefficients(double x, double tolerance) {
    std::vector<cplx> c{std::cyl_bessel_j(0.0, x)};
    const int limit = static_cast<int>(x + 20.0 * std::cbrt(x) + 60.0);
    cplx phase = 1.0;
    for (int k = 1; k <= limit; ++k) {
        phase *= -1i;
        const double jk = std::cyl_bessel_j(static_cast<double>(k), x);
        c.push_back(2.0 * phase * jk);
        if (k > x && std::abs(jk) < tolerance) break;
    }
    return c;
}

// psi <- exp(-i H dt) psi with precomputed coefficients for x = half_width dt.
void chebyshev_step(const SubspaceHamiltonian& h, State& psi, const std::vector<cplx>& coeffs, double dt) {
    State acc{coeffs[0] * psi.a, coeffs[0] * psi.b};
    State prev = psi;
    State cur{Eigen::VectorXcd(psi.a.size()), Eigen::MatrixXcd(psi.b.rows(), psi.b.cols())};
    if (coeffs.size() > 1) h.recurrence(prev, cur, true, acc, coeffs[1]);
    for (std::size_t k = 2; k < coeffs.size(); ++k) {
        h.recurrence(cur, prev, false, acc, coeffs[k]);
        std::swap(prev, cur);
    }
    const cplx shift = std::exp(-1i * h.center() * dt);
    psi.a = shift * acc.a;
    psi.b = shift * acc.b;
}

}  // namespace

TruncatedOperator annihilation(int dim) {
    check_dim(dim, 1);
    return {dim, real_annihilation(dim).cast<cplx>()};
}

TruncatedOperator creation(int dim) {
    check_dim(dim, 1);
    return {dim, real_annihilation(dim).transpose().cast<cplx>()};
}

double commutator_defect(int dim) {
    check_dim(dim, 2);
    const Eigen::MatrixXcd b = annihilation(dim).matrix;
    const Eigen::MatrixXcd bd = creation(dim).matrix;
    const Eigen::MatrixXcd c = b * bd - bd * b - Eigen::MatrixXcd::Identity(dim, dim);
    return c.topRows(dim - 1).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& generator) {
    Eigen::MatrixXcd h = 1i * generator;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success) {
        throw NumericError("eigendecomposition of the generator failed");
    }
    const Eigen::VectorXcd phases = (-1i * eig.eigenvalues().cast<cplx>()).array().exp().matrix();
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Eigen::MatrixXcd overlap_block(const SqueezeDisplaceSpec& spec, int dim) {
    check_dim(dim, 4);
    const Eigen::MatrixXcd b = annihilation(dim).matrix;
    const Eigen::MatrixXcd bd = b.adjoint();
    const cplx zeta = std::polar(spec.s, spec.theta);
    const Eigen::MatrixXcd squeeze_gen = 0.5 * (std::conj(zeta) * (b * b) - zeta * (bd * bd));
    const Eigen::MatrixXcd displace_gen = spec.beta * bd - std::conj(spec.beta) * b;
    const Eigen::MatrixXcd u = expm_antihermitian(squeeze_gen) * expm_antihermitian(displace_gen);
    const int keep = dim / 4;
    return u.topLeftCorner(keep, keep);
}

ConvergedBlock converged_overlap_block(const SqueezeDisplaceSpec& spec, int dim) {
    check_dim(dim, 4);
    const int keep = dim / 4;
    Eigen::MatrixXcd prev = overlap_block(spec, dim);
    double change = 0.0;
    for (int n = 2 * dim; n <= kMaxOracleDim; n *= 2) {
        const Eigen::MatrixXcd next = overlap_block(spec, n).topLeftCorner(keep, keep);
        change = (next - prev).cwiseAbs().maxCoeff();
        if (change < kDoublingTolerance) {
            return {next, n, change};
        }
        prev = next;
    }
    throw NumericError(fmt::format("overlap oracle did not converge up to truncation {} (last change {:.3e})",
                                   kMaxOracleDim, change));
}

std::complex<double> oracle_overlap(int m, int n, const ModelParams& p, int dim) {
    p.validate();
    if (m < 0 || n < 0 || m >= dim / 4 || n >= dim / 4) {
        throw DomainError(fmt::format("oracle indices ({}, {}) must lie below truncation/4 = {}", m, n, dim / 4));
    }
    return converged_overlap_block(single_photon_spec(p), dim).block(m, n);
}

std::vector<double> diagonalize_sector(int n_photon, const ModelParams& p, int dim) {
    p.validate();
    if (n_photon != 0 && n_photon != 1) {
        throw DomainError(fmt::format("only the 0- and 1-photon sectors are supported (got {})", n_photon));
    }
    check_dim(dim, 2);
    const Eigen::MatrixXd b = real_annihilation(dim);
    const Eigen::MatrixXd x = b + b.transpose();
    Eigen::MatrixXd h = p.omega_m * (b.transpose() * b);
    h += n_photon * (p.g1 * x + p.g2 * (x * x));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        throw NumericError("sector diagonalisation failed");
    }
    const Eigen::VectorXd& ev = eig.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double BathDiscretization::spacing() const {
    return n_modes > 1 ? (delta_max - delta_min) / (n_modes - 1) : 0.0;
}

double BathDiscretization::recurrence_time() const { return 2.0 * std::numbers::pi / spacing(); }

BathDiscretization make_bath(double kappa, double delta_min, double delta_max, int n_modes) {
    if (n_modes < 2 || !(delta_min < delta_max) || !(kappa > 0.0)) {
        throw DomainError("bath needs >= 2 modes, delta_min < delta_max and kappa > 0");
    }
    BathDiscretization bath;
    bath.n_modes = n_modes;
    bath.delta_min = delta_min;
    bath.delta_max = delta_max;
    const double d = bath.spacing();
    const double xi = std::sqrt(kappa / (2.0 * std::numbers::pi) * d);
    bath.detunings.resize(n_modes);
    bath.couplings.assign(n_modes, xi);
    for (int k = 0; k < n_modes; ++k) bath.detunings[k] = delta_min + k * d;
    return bath;
}

EvolutionInit cavity_photon(const MechanicalInitState& mech) {
    if (!mech.is_pure()) {
        throw DomainError("time-domain evolution needs a pure mechanical state");
    }
    return {*mech.pure_amplitudes, PhotonLocation::Cavity, std::nullopt};
}

EvolutionInit wavepacket_photon(const MechanicalInitState& mech, const WavepacketParams& wp) {
    if (!mech.is_pure()) {
        throw DomainError("time-domain evolution needs a pure mechanical state");
    }
    wp.validate();
    return {*mech.pure_amplitudes, PhotonLocation::Bath, wp};
}

double AmplitudeSnapshot::norm() const { return cavity.squaredNorm() + bath.squaredNorm(); }

EvolutionResult evolve_amplitudes(const ModelParams& p, const BathDiscretization& bath, const EvolutionInit& init,
                                  double t_final, int n_max, const EvolveOptions& options) {
    p.validate();
    check_dim(n_max, 1);
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw DomainError(fmt::format("t_final must be finite and non-negative (got {})", t_final));
    }
    if (t_final >= bath.recurrence_time()) {
        throw DomainError(fmt::format("t_final = {} reaches the bath recurrence time {}; use more modes", t_final,
                                      bath.recurrence_time()));
    }
    if (init.mechanical.size() > n_max) {
        throw TruncationError("initial mechanical state exceeds the phonon truncation");
    }

    const SubspaceHamiltonian h(p, bath, n_max);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_max);
    c.head(init.mechanical.size()) = init.mechanical;

    State psi{Eigen::VectorXcd::Zero(n_max), Eigen::MatrixXcd::Zero(n_max, bath.n_modes)};
    if (init.location == PhotonLocation::Cavity) {
        psi.a = h.transition().transpose() * c;
    } else {
        if (!init.wavepacket) {
            throw DomainError("bath initial condition needs a wavepacket");
        }
        const WavepacketParams& wp = *init.wavepacket;
        const double amp = std::sqrt(wp.epsilon * bath.spacing() / std::numbers::pi);
        for (int k = 0; k < bath.n_modes; ++k) {
            const cplx shape = amp / (bath.detunings[k] - wp.delta0 + 1i * wp.epsilon);
            psi.b.col(k) = shape * c;
        }
    }

    EvolutionResult result;
    const double norm0 = psi.a.squaredNorm() + psi.b.squaredNorm();
    result.times.push_back(0.0);
    result.norms.push_back(norm0);

    const int chunks = t_final > 0.0
                           ? std::max(1, static_cast<int>(std::ceil(h.half_width() * t_final / options.chunk_argument)))
                           : 0;
    const double dt = chunks > 0 ? t_final / chunks : 0.0;
    const auto coeffs = chunks > 0 ? chebyshev_coefficients(h.half_width() * dt, options.series_tolerance)
                                   : std::vector<cplx>{};
    for (int i = 0; i < chunks; ++i) {
        chebyshev_step(h, psi, coeffs, dt);
        result.chebyshev_terms += static_cast<int>(coeffs.size());
        const double norm = psi.a.squaredNorm() + psi.b.squaredNorm();
        const double drift = std::abs(norm - norm0);
        result.max_norm_drift = std::max(result.max_norm_drift, drift);
        result.times.push_back((i + 1) * dt);
        result.norms.push_back(norm);
        if (drift > options.norm_drift_limit) {
            throw ValidationError(fmt::format("norm drifted by {:.3e} at t = {}", drift, (i + 1) * dt));
        }
    }

    result.final.time = t_final;
    result.final.cavity = std::move(psi.a);
    result.final.bath = std::move(psi.b);
    result.tail_population =
        std::norm(result.final.cavity(n_max - 1)) + result.final.bath.row(n_max - 1).squaredNorm();
    return result;
}

SpectrumGrid bath_spectrum(const AmplitudeSnapshot& snap, const BathDiscretization& bath, int bin) {
    if (bin < 1 || bin > bath.n_modes) {
        throw DomainError(fmt::format("bin width {} outside [1, {}]", bin, bath.n_modes));
    }
    const Eigen::VectorXd pop = snap.bath.cwiseAbs2().colwise().sum().transpose();
    const int bins = bath.n_modes / bin;
    SpectrumGrid out;
    out.meta.process = "bath";
    out.deltas.resize(bins);
    out.values.resize(bins);
    const double width = bin * bath.spacing();
    for (int i = 0; i < bins; ++i) {
        double centre = 0.0, mass = 0.0;
        for (int k = i * bin; k < (i + 1) * bin; ++k) {
            centre += bath.detunings[k];
            mass += pop(k);
        }
        out.deltas[i] = centre / bin;
        out.values[i] = mass / width;
    }
    return out;
}

double l2_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw DomainError("l2_relative_error needs equal, non-empty samples");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

}  // namespace optospec::oracle
