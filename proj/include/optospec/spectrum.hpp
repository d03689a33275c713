#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "optospec/model.hpp"
#include "optospec/states.hpp"

namespace optospec {

/// Uniform detuning axis min, min + step, ..., up to max (inclusive within
/// 1e-9 step).
struct GridSpec {
    double min{-8.0};
    double max{4.0};
    double step{0.002};

    void validate() const;
    std::size_t size() const;
    std::vector<double> points() const;
};

/// Parses "min,max,step". Throws UsageError.
GridSpec parse_grid_spec(const std::string& text);

struct SpectrumMeta {
    std::string process;  // "emission", "scattering", "bath" or "external"
    std::optional<ModelParams> params;
    std::string state;
    std::optional<WavepacketParams> wavepacket;
    int truncation{0};
    double truncation_tail{0.0};  // worst missing row weight of T over initial phonons
    std::vector<std::string> warnings;
};

/// Spectral density S(delta) (units 1/omega_m) sampled on a detuning axis.
struct SpectrumGrid {
    std::vector<double> deltas;
    std::vector<double> values;
    SpectrumMeta meta;

    std::size_t size() const { return deltas.size(); }
    /// Mean sample spacing; grids produced by GridSpec are uniform.
    double step() const;
};

double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

/// Unit-integral post-condition. `window` is the trapezoid integral over the
/// sampled axis; the tails beyond each edge are extrapolated by fitting
/// 1/S = p0 + p1 d + p2 d^2 (an exact Lorentzian tail) through three samples
/// in the outer eighth of the window and integrating it in closed form.
struct IntegralCheck {
    double window{0.0};
    double tail_left{0.0};
    double tail_right{0.0};
    double total{0.0};
    double tolerance{5e-3};
    bool ok{false};
};

inline constexpr double kUnitIntegralTolerance = 5e-3;

IntegralCheck unit_integral_check(const SpectrumGrid& spectrum, double tolerance = kUnitIntegralTolerance);

}  // namespace optospec
