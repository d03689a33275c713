#include "channels.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec::detail {

namespace {

constexpr double kSupportCutoff = 1e-15;
constexpr double kTruncationWarning = 1e-10;

}  // namespace

Channels::Channels(const MechanicalInitState& init, const ModelParams& p, const TransitionMatrix& tm)
    : levels(init.truncation), kappa(p.kappa) {
    p.validate();
    if (levels < 1) {
        throw DomainError("initial state has no levels");
    }
    if (tm.n_max() < levels) {
        throw TruncationError(
            fmt::format("transition matrix has {} levels but the initial state uses {}", tm.n_max(), levels));
    }
    T = tm.entries().topLeftCorner(levels, levels);
    e0.resize(levels);
    e1.resize(levels);
    for (int m = 0; m < levels; ++m) {
        e0(m) = eigen_energy(0, m, p);
        e1(m) = eigen_energy(1, m, p);
    }
    if (init.is_pure()) {
        const Vec& c = *init.pure_amplitudes;
        for (int i = 0; i < static_cast<int>(c.size()); ++i)
            if (std::abs(c(i)) > kSupportCutoff) support = i + 1;
        pure = c.head(support);
    } else if (init.mixture_weights) {
        const Eigen::VectorXd& w = *init.mixture_weights;
        for (int i = 0; i < static_cast<int>(w.size()); ++i)
            if (w(i) > kSupportCutoff) support = i + 1;
        weights = w.head(support);
    } else {
        throw DomainError("initial state carries neither amplitudes nor weights");
    }
    if (support == 0) {
        throw DomainError("initial state is empty");
    }
    for (int m0 = 0; m0 < support; ++m0) {
        truncation_tail = std::max(truncation_tail, 1.0 - T.row(m0).squaredNorm());
    }
}

Mat Channels::cavity_kernel(double delta) const {
    const std::complex<double> half_kappa{0.0, 0.5 * kappa};
    Mat weighted(levels, levels);
    for (int n = 0; n < levels; ++n) {
        for (int m = 0; m < levels; ++m) {
            weighted(m, n) = T(m, n) / (delta + e0(m) - e1(n) + half_kappa);
        }
    }
    return weighted * T.topRows(support).transpose();
}

SpectrumMeta make_meta(const char* process, const MechanicalInitState& init, const ModelParams& p,
                       const Channels& ch) {
    SpectrumMeta meta;
    meta.process = process;
    meta.params = p;
    meta.state = init.spec.label();
    meta.truncation = ch.levels;
    meta.truncation_tail = ch.truncation_tail;
    if (ch.truncation_tail > kTruncationWarning) {
        meta.warnings.push_back(fmt::format(
            "transition-matrix rows for the initial phonons miss weight {:.3e}; raise the truncation",
            ch.truncation_tail));
    }
    return meta;
}

}  // namespace optospec::detail
