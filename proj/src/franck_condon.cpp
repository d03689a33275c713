#include "optospec/franck_condon.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec {

namespace {

std::vector<double> log_factorials(int n) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        out[i] = std::lgamma(i + 1.0);
    }
    return out;
}

// Rescaled Hermite sequences shared by every (m, n) entry of one operator.
class OverlapKernel {
public:
    OverlapKernel(int max_m, int max_n, const SqueezeDisplaceSpec& spec)
        : mu_(spec.mu()), log_mu_(std::log(mu_)), lfact_(log_factorials(std::max(max_m, max_n))) {
        const cplx beta = spec.beta;
        const cplx nu = spec.nu();
        const cplx b_over_mu = beta / mu_;
        const cplx nu_over_mu = nu / mu_;
        const cplx y_over_mu = (beta * std::conj(nu) - std::conj(beta) * mu_) / mu_;
        const cplx nuc_over_mu = std::conj(nu) / mu_;

        g_.resize(static_cast<std::size_t>(max_m) + 1);
        g_[0] = 1.0;
        if (max_m >= 1) g_[1] = b_over_mu;
        for (int j = 1; j < max_m; ++j) {
            g_[j + 1] = b_over_mu * g_[j] - static_cast<double>(j) * nu_over_mu * g_[j - 1];
        }
        f_.resize(static_cast<std::size_t>(max_n) + 1);
        f_[0] = 1.0;
        if (max_n >= 1) f_[1] = y_over_mu;
        for (int j = 1; j < max_n; ++j) {
            f_[j + 1] = y_over_mu * f_[j] + static_cast<double>(j) * nuc_over_mu * f_[j - 1];
        }
        gauss_ = std::exp(-0.5 * std::norm(beta) + std::conj(nu) * beta * beta / (2.0 * mu_));
    }

    cplx operator()(int m, int n) const {
        const double base = -0.5 * (lfact_[m] + lfact_[n] + log_mu_);
        cplx sum{0.0, 0.0};
        const int kmax = std::min(m, n);
        for (int k = 0; k <= kmax; ++k) {
            const double lc = lfact_[n] - lfact_[k] - lfact_[n - k] + lfact_[m] - lfact_[m - k] - k * log_mu_ + base;
            sum += std::exp(lc) * g_[m - k] * f_[n - k];
        }
        return gauss_ * sum;
    }

private:
    double mu_;
    double log_mu_;
    std::vector<double> lfact_;
    std::vector<cplx> g_;
    std::vector<cplx> f_;
    cplx gauss_;
};

void check_indices(int m, int n) {
    if (m < 0 || n < 0) {
        throw DomainError(fmt::format("overlap indices must be non-negative (got m={}, n={})", m, n));
    }
}

}  // namespace

cplx hermite(int k, cplx z) {
    if (k < 0) {
        throw DomainError(fmt::format("Hermite order must be non-negative (got {})", k));
    }
    cplx prev{1.0, 0.0};
    if (k == 0) return prev;
    cplx cur = 2.0 * z;
    for (int j = 1; j < k; ++j) {
        const cplx next = 2.0 * z * cur - 2.0 * static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double SqueezeDisplaceSpec::mu() const { return std::cosh(s); }

cplx SqueezeDisplaceSpec::nu() const { return std::polar(std::sinh(s), theta); }

cplx displaced_number_overlap(int m, int n, cplx beta) {
    check_indices(m, n);
    const double x = std::norm(beta);
    if (x == 0.0) {
        return m == n ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    }
    const int lo = std::min(m, n);
    const int d = std::abs(m - n);
    // m >= n: beta^{m-n}; m < n: (-beta^*)^{n-m}.
    const cplx unit = m >= n ? beta / std::abs(beta) : -std::conj(beta) / std::abs(beta);
    const double log_mag = 0.5 * d * std::log(x) + 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0)) - 0.5 * x;
    const double lag = std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(d), x);
    return std::exp(log_mag) * std::pow(unit, d) * lag;
}

cplx overlap_sd(int m, int n, const SqueezeDisplaceSpec& spec) {
    check_indices(m, n);
    if (!(spec.s >= 0.0) || !std::isfinite(spec.s)) {
        throw DomainError(fmt::format("squeeze magnitude must be finite and non-negative (got {})", spec.s));
    }
    if (spec.s == 0.0) {
        return displaced_number_overlap(m, n, spec.beta);
    }
    const cplx value = OverlapKernel(m, n, spec)(m, n);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw NumericError(fmt::format("overlap <{}|S D|{}> overflowed", m, n));
    }
    return value;
}

Eigen::MatrixXcd overlap_table(int rows, int cols, const SqueezeDisplaceSpec& spec) {
    if (rows < 1 || cols < 1) {
        throw DomainError("overlap table dimensions must be positive");
    }
    if (!(spec.s >= 0.0) || !std::isfinite(spec.s)) {
        throw DomainError(fmt::format("squeeze magnitude must be finite and non-negative (got {})", spec.s));
    }
    Eigen::MatrixXcd out(rows, cols);
    if (spec.s == 0.0) {
        for (int n = 0; n < cols; ++n)
            for (int m = 0; m < rows; ++m) out(m, n) = displaced_number_overlap(m, n, spec.beta);
    } else {
        const OverlapKernel kernel(rows - 1, cols - 1, spec);
        for (int n = 0; n < cols; ++n)
            for (int m = 0; m < rows; ++m) out(m, n) = kernel(m, n);
    }
    if (!out.allFinite()) {
        throw NumericError(fmt::format("overlap table {}x{} overflowed", rows, cols));
    }
    return out;
}

TransitionMatrix::TransitionMatrix(ModelParams params, Eigen::MatrixXd entries)
    : params_(params), entries_(std::move(entries)) {}

double TransitionMatrix::orthonormality_defect(int limit) const {
    limit = std::min(limit, n_max());
    const Eigen::MatrixXd block = entries_.leftCols(limit);
    const Eigen::MatrixXd gram = block.transpose() * block;
    return (gram - Eigen::MatrixXd::Identity(limit, limit)).cwiseAbs().maxCoeff();
}

SqueezeDisplaceSpec single_photon_spec(const ModelParams& p) {
    const auto sd = squeeze_displace(1, p);
    // r_1 < 0 (negative g2) is S(r) = S(|r| e^{i pi}).
    if (sd.r < 0.0) {
        return {-sd.r, M_PI, cplx{sd.alpha, 0.0}};
    }
    return {sd.r, 0.0, cplx{sd.alpha, 0.0}};
}

TransitionMatrix transition_matrix(const ModelParams& p, int n_max) {
    p.validate();
    if (n_max < 1) {
        throw DomainError(fmt::format("transition matrix truncation must be >= 1 (got {})", n_max));
    }
    const Eigen::MatrixXcd table = overlap_table(n_max, n_max, single_photon_spec(p));
    const double imag = table.imag().cwiseAbs().maxCoeff();
    if (imag > 1e-12) {
        throw NumericError(fmt::format("transition matrix has imaginary residue {:.3e}", imag));
    }
    return TransitionMatrix(p, table.real());
}

}  // namespace optospec
