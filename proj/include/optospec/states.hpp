#pragma once

// Initial states of the mechanical mode and of the injected photon.

#include <complex>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "optospec/franck_condon.hpp"

namespace optospec {

enum class StateKind { Number, SdGround, Coherent, Thermal };

/// User-level description of a mechanical initial state.
struct StateSpec {
    StateKind kind{StateKind::Number};
    int m0{0};                    // Number
    std::complex<double> beta{};  // Coherent
    double nbar{0.0};             // Thermal

    /// Round-trips through parse_state_spec: "number:0", "sdground",
    /// "coherent:1,0", "thermal:1".
    std::string label() const;
};

/// Parses "number:m0", "sdground", "coherent:re[,im]" or "thermal:nbar".
/// Throws UsageError.
StateSpec parse_state_spec(const std::string& text);

/// Mechanical state expanded in the bare number basis, truncated to
/// `truncation` levels. Exactly one of the two vectors is populated.
struct MechanicalInitState {
    StateSpec spec{};
    std::optional<Eigen::VectorXcd> pure_amplitudes;  // C_{m0}
    std::optional<Eigen::VectorXd> mixture_weights;   // P_{m0}
    int truncation{0};
    double discarded_tail{0.0};  // weight lost before renormalisation

    bool is_pure() const { return pure_amplitudes.has_value(); }
};

/// Largest discarded tail weight accepted by make_init_state.
inline constexpr double kStateTailTolerance = 1e-8;

/// Builds and renormalises the state. `sdground` takes column 0 of `T`,
/// so T.n_max() must be >= n_max. Throws TruncationError when the tail
/// beyond n_max exceeds kStateTailTolerance.
MechanicalInitState make_init_state(const StateSpec& spec, int n_max, const TransitionMatrix& T);

MechanicalInitState number_state(int m0, int n_max);
MechanicalInitState coherent_state(std::complex<double> beta, int n_max);
MechanicalInitState thermal_state(double nbar, int n_max);
MechanicalInitState sd_ground_state(const TransitionMatrix& T, int n_max);

/// Lorentzian single-photon wavepacket centred at delta0 with half-width epsilon.
struct WavepacketParams {
    double delta0{0.0};
    double epsilon{1.0};

    void validate() const;
};

/// (epsilon / pi) / ((delta - delta0)^2 + epsilon^2): the input spectrum.
double input_lorentzian(double delta, const WavepacketParams& wp);

}  // namespace optospec
