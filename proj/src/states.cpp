#include "optospec/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec {

namespace {

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(fmt::format("{}: '{}' is not a number", what, text));
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw UsageError(fmt::format("{}: '{}' is not a finite number", what, text));
    }
    return value;
}

void check_tail(double tail, const StateSpec& spec, int n_max) {
    if (tail > kStateTailTolerance) {
        throw TruncationError(fmt::format("state '{}' loses weight {:.3e} beyond {} levels (limit {:.0e}); raise n_max",
                                          spec.label(), tail, n_max, kStateTailTolerance));
    }
}

void check_n_max(int n_max) {
    if (n_max < 1) {
        throw DomainError(fmt::format("state truncation must be >= 1 (got {})", n_max));
    }
}

}  // namespace

std::string StateSpec::label() const {
    switch (kind) {
        case StateKind::Number:
            return fmt::format("number:{}", m0);
        case StateKind::SdGround:
            return "sdground";
        case StateKind::Coherent:
            return fmt::format("coherent:{},{}", beta.real(), beta.imag());
        case StateKind::Thermal:
            return fmt::format("thermal:{}", nbar);
    }
    return "unknown";
}

StateSpec parse_state_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string tail = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
    StateSpec spec;
    if (head == "sdground") {
        if (colon != std::string::npos) {
            throw UsageError("state 'sdground' takes no argument");
        }
        spec.kind = StateKind::SdGround;
        return spec;
    }
    if (colon == std::string::npos || tail.empty()) {
        throw UsageError(fmt::format("state '{}' needs an argument: number:m0 | sdground | coherent:re,im | thermal:nbar", text));
    }
    if (head == "number") {
        const double m0 = parse_double(tail, "number state index");
        if (m0 < 0 || m0 != std::floor(m0) || m0 > 1e6) {
            throw UsageError(fmt::format("number state index must be a non-negative integer (got '{}')", tail));
        }
        spec.kind = StateKind::Number;
        spec.m0 = static_cast<int>(m0);
    } else if (head == "coherent") {
        const auto comma = tail.find(',');
        const double re = parse_double(tail.substr(0, comma), "coherent amplitude (real part)");
        const double im = comma == std::string::npos ? 0.0 : parse_double(tail.substr(comma + 1), "coherent amplitude (imaginary part)");
        spec.kind = StateKind::Coherent;
        spec.beta = {re, im};
    } else if (head == "thermal") {
        spec.kind = StateKind::Thermal;
        spec.nbar = parse_double(tail, "thermal occupation");
        if (spec.nbar < 0.0) {
            throw UsageError(fmt::format("thermal occupation must be non-negative (got {})", spec.nbar));
        }
    } else {
        throw UsageError(fmt::format("unknown state kind '{}': expected number, sdground, coherent or thermal", head));
    }
    return spec;
}

MechanicalInitState number_state(int m0, int n_max) {
    check_n_max(n_max);
    if (m0 < 0 || m0 >= n_max) {
        throw TruncationError(fmt::format("number state {} does not fit in {} levels", m0, n_max));
    }
    MechanicalInitState s;
    s.spec.kind = StateKind::Number;
    s.spec.m0 = m0;
    s.truncation = n_max;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_max);
    c(m0) = 1.0;
    s.pure_amplitudes = std::move(c);
    return s;
}

MechanicalInitState coherent_state(std::complex<double> beta, int n_max) {
    check_n_max(n_max);
    MechanicalInitState s;
    s.spec.kind = StateKind::Coherent;
    s.spec.beta = beta;
    s.truncation = n_max;
    const double x = std::norm(beta);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_max);
    if (x == 0.0) {
        c(0) = 1.0;
    } else {
        // e^{-|b|^2/2} b^n / sqrt(n!)
        const std::complex<double> phase = beta / std::sqrt(x);
        for (int n = 0; n < n_max; ++n) {
            const double log_mag = -0.5 * x + 0.5 * n * std::log(x) - 0.5 * std::lgamma(n + 1.0);
            c(n) = std::exp(log_mag) * std::pow(phase, n);
        }
    }
    const double kept = c.squaredNorm();
    s.discarded_tail = std::max(0.0, 1.0 - kept);
    check_tail(s.discarded_tail, s.spec, n_max);
    c /= std::sqrt(kept);
    s.pure_amplitudes = std::move(c);
    return s;
}

MechanicalInitState thermal_state(double nbar, int n_max) {
    check_n_max(n_max);
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError(fmt::format("thermal occupation must be finite and non-negative (got {})", nbar));
    }
    MechanicalInitState s;
    s.spec.kind = StateKind::Thermal;
    s.spec.nbar = nbar;
    s.truncation = n_max;
    const double q = nbar / (nbar + 1.0);
    Eigen::VectorXd p(n_max);
    double w = 1.0 / (nbar + 1.0);
    for (int n = 0; n < n_max; ++n) {
        p(n) = w;
        w *= q;
    }
    s.discarded_tail = std::pow(q, n_max);
    check_tail(s.discarded_tail, s.spec, n_max);
    p /= p.sum();
    s.mixture_weights = std::move(p);
    return s;
}

MechanicalInitState sd_ground_state(const TransitionMatrix& T, int n_max) {
    check_n_max(n_max);
    if (T.n_max() < n_max) {
        throw TruncationError(fmt::format("transition matrix has {} levels, state needs {}", T.n_max(), n_max));
    }
    MechanicalInitState s;
    s.spec.kind = StateKind::SdGround;
    s.truncation = n_max;
    Eigen::VectorXcd c = T.entries().col(0).head(n_max).cast<std::complex<double>>();
    const double kept = c.squaredNorm();
    s.discarded_tail = std::max(0.0, 1.0 - kept);
    check_tail(s.discarded_tail, s.spec, n_max);
    c /= std::sqrt(kept);
    s.pure_amplitudes = std::move(c);
    return s;
}

MechanicalInitState make_init_state(const StateSpec& spec, int n_max, const TransitionMatrix& T) {
    switch (spec.kind) {
        case StateKind::Number:
            return number_state(spec.m0, n_max);
        case StateKind::SdGround:
            return sd_ground_state(T, n_max);
        case StateKind::Coherent:
            return coherent_state(spec.beta, n_max);
        case StateKind::Thermal:
            return thermal_state(spec.nbar, n_max);
    }
    throw UsageError("unknown state kind");
}

void WavepacketParams::validate() const {
    if (!std::isfinite(delta0) || !std::isfinite(epsilon) || !(epsilon > 0.0)) {
        throw DomainError(fmt::format("wavepacket needs finite delta0 and epsilon > 0 (got {}, {})", delta0, epsilon));
    }
}

double input_lorentzian(double delta, const WavepacketParams& wp) {
    const double x = delta - wp.delta0;
    return wp.epsilon / std::numbers::pi / (x * x + wp.epsilon * wp.epsilon);
}

}  // namespace optospec
