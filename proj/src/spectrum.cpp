#include "optospec/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "optospec/errors.hpp"

namespace optospec {

namespace {

constexpr double kGridSlack = 1e-9;

double parse_number(const std::string& text, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(fmt::format("grid {}: '{}' is not a number", what, text));
    }
    if (used != text.size()) {
        throw UsageError(fmt::format("grid {}: '{}' is not a number", what, text));
    }
    return value;
}

// Integral of 1 / (p2 x^2 + p1 x + p0) over [0, inf) (right) or (-inf, 0]
// (left), or nullopt if the quadratic has a root on that half line.
std::optional<double> quadratic_reciprocal_tail(double p0, double p1, double p2, bool right) {
    if (!(p2 > 0.0) || !(p0 > 0.0)) return std::nullopt;
    if (!right) p1 = -p1;  // mirror x -> -x
    const double disc = 4.0 * p0 * p2 - p1 * p1;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        return 2.0 / s * (0.5 * std::numbers::pi - std::atan(p1 / s));
    }
    // Real roots; both must be negative for the half line to be root-free.
    const double s = std::sqrt(-disc);
    if (s <= 1e-14 * std::abs(p1)) {
        return p1 > 0.0 ? std::optional<double>(2.0 / p1) : std::nullopt;
    }
    const double r_hi = (-p1 + s) / (2.0 * p2);
    if (r_hi >= 0.0) return std::nullopt;
    // antiderivative (1/s) ln((2 p2 x + p1 - s)/(2 p2 x + p1 + s)), -> 0 at infinity
    return -std::log((p1 - s) / (p1 + s)) / s;
}

double tail_mass(const SpectrumGrid& g, bool right) {
    const std::size_t n = g.size();
    const std::size_t q = std::max<std::size_t>(1, (n - 1) / 16);
    if (n < 2 * q + 1) return 0.0;
    std::array<std::size_t, 3> idx = right ? std::array<std::size_t, 3>{n - 1, n - 1 - q, n - 1 - 2 * q}
                                           : std::array<std::size_t, 3>{0, q, 2 * q};
    const double edge = g.deltas[idx[0]];
    std::array<double, 3> x{}, y{};
    for (int i = 0; i < 3; ++i) {
        const double s = g.values[idx[i]];
        if (!(s > 0.0)) return 0.0;
        x[i] = g.deltas[idx[i]] - edge;
        y[i] = 1.0 / s;
    }
    // Quadratic through three points (Newton form), expanded about x = 0.
    const double d01 = (y[1] - y[0]) / (x[1] - x[0]);
    const double d12 = (y[2] - y[1]) / (x[2] - x[1]);
    const double p2 = (d12 - d01) / (x[2] - x[0]);
    const double p1 = d01 - p2 * (x[0] + x[1]);
    const double p0 = y[0];
    if (auto t = quadratic_reciprocal_tail(p0, p1, p2, right)) return *t;
    // Fall back to a pure 1/d^2 decay about the spectral centroid.
    double mass = 0.0, moment = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = g.deltas[i + 1] - g.deltas[i];
        const double a = 0.5 * h * (g.values[i] + g.values[i + 1]);
        mass += a;
        moment += a * 0.5 * (g.deltas[i] + g.deltas[i + 1]);
    }
    if (!(mass > 0.0)) return 0.0;
    const double centroid = moment / mass;
    return g.values[idx[0]] * std::abs(edge - centroid);
}

}  // namespace

void GridSpec::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
        throw UsageError("grid bounds and step must be finite");
    }
    if (!(min < max)) {
        throw UsageError(fmt::format("grid min ({}) must be below max ({})", min, max));
    }
    if (!(step > 0.0)) {
        throw UsageError(fmt::format("grid step must be positive (got {})", step));
    }
    if ((max - min) / step > 5e7) {
        throw UsageError("grid has more than 5e7 points");
    }
}

std::size_t GridSpec::size() const {
    validate();
    return static_cast<std::size_t>(std::floor((max - min) / step + kGridSlack)) + 1;
}

std::vector<double> GridSpec::points() const {
    const std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = min + static_cast<double>(i) * step;
    }
    return out;
}

GridSpec parse_grid_spec(const std::string& text) {
    const auto c1 = text.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || text.find(',', c2 + 1) != std::string::npos) {
        throw UsageError(fmt::format("grid '{}' must have the form min,max,step", text));
    }
    GridSpec g{parse_number(text.substr(0, c1), "min"), parse_number(text.substr(c1 + 1, c2 - c1 - 1), "max"),
               parse_number(text.substr(c2 + 1), "step")};
    g.validate();
    return g;
}

double SpectrumGrid::step() const {
    if (deltas.size() < 2) return 0.0;
    return (deltas.back() - deltas.front()) / static_cast<double>(deltas.size() - 1);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw UsageError("trapezoid: abscissa and values differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        sum += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
    }
    return sum;
}

IntegralCheck unit_integral_check(const SpectrumGrid& spectrum, double tolerance) {
    IntegralCheck c;
    c.tolerance = tolerance;
    c.window = trapezoid(spectrum.deltas, spectrum.values);
    if (spectrum.size() >= 3) {
        c.tail_left = tail_mass(spectrum, false);
        c.tail_right = tail_mass(spectrum, true);
    }
    c.total = c.window + c.tail_left + c.tail_right;
    c.ok = std::isfinite(c.total) && std::abs(c.total - 1.0) <= tolerance;
    return c;
}

}  // namespace optospec
