#include <doctest.h>

#include <cmath>

#include "optospec/analysis.hpp"
#include "optospec/emission.hpp"
#include "optospec/errors.hpp"

using namespace optospec;
using doctest::Approx;

namespace {

SpectrumGrid sampled(double lo, double hi, double step, double (*f)(double)) {
    SpectrumGrid s;
    s.deltas = GridSpec{lo, hi, step}.points();
    for (double d : s.deltas) s.values.push_back(f(d));
    return s;
}

SpectrumGrid ground_emission(double g2, double kappa) {
    const ModelParams p{1.0, 0.8, g2, kappa};
    return emission_spectrum(number_state(0, 60), GridSpec{-8.0, 4.0, kappa / 10}.points(), p);
}

}  // namespace

TEST_CASE("extrema of simple shapes") {
    const auto lor = sampled(-1.0, 1.0, 0.003, [](double d) { return 0.01 / (d * d + 1e-4); });
    const auto e = find_extrema(lor);
    REQUIRE(e.maxima.size() == 1);
    CHECK(std::abs(e.maxima[0].location) < 0.0003);
    CHECK(e.minima.empty());

    const auto flat = sampled(-1.0, 1.0, 0.01, [](double) { return 0.3; });
    CHECK(find_extrema(flat).maxima.empty());
    CHECK(find_extrema(flat).minima.empty());

    // Off-grid peak is refined below the grid spacing.
    const auto shifted = sampled(-1.0, 1.0, 0.01, [](double d) { return 1.0 / ((d - 0.1234) * (d - 0.1234) + 0.01); });
    CHECK(find_extrema(shifted).maxima.at(0).location == Approx(0.1234).epsilon(1e-3));

    CHECK_THROWS_AS(find_extrema(lor, kDefaultProminence, 0.01), ValidationError);
}

TEST_CASE("coupling inversion") {
    const ModelParams p{1.0, 0.8, 0.05, 0.02};
    const auto g = infer_g2(sub_peak_spacing(p).exact);
    CHECK(g.exact == Approx(0.05).epsilon(1e-12));
    CHECK(infer_g2(0.0954).small_coupling == Approx(0.0477));
    CHECK(infer_g2(0.0).exact == 0.0);
    for (double g2 : {0.001, 0.03, 0.1, 0.7})
        CHECK(std::abs(infer_g2(sub_peak_spacing(ModelParams{1.0, 0.8, g2, 0.02}).exact).exact - g2) < 1e-12);

    const ModelParams q{1.0, 0.8, 0.01, 0.02};
    const auto cg = infer_C_and_g1(sideband_location(0, 0, q), 0.01);
    CHECK(cg.g1 == Approx(0.8).epsilon(1e-12));
    CHECK(cg.C == Approx(energy_shift_C(q)).epsilon(1e-14));
    CHECK(infer_C_and_g1(0.0, 0.0).g1 == 0.0);
    CHECK_THROWS_AS(infer_C_and_g1(0.5, 0.0), ValidationError);
}

TEST_CASE("resolution criterion") {
    const auto r = check_resolution(ModelParams{1.0, 0.8, 0.05, 0.02});
    CHECK(r.ok);
    CHECK(r.margin == Approx(4.77).epsilon(1e-3));
    CHECK_FALSE(check_resolution(ModelParams{1.0, 0.8, 0.05, 0.15}).ok);
    CHECK_FALSE(check_resolution(ModelParams{1.0, 0.8, 0.0, 0.02}).ok);
    bool was_ok = true;
    for (double kappa = 0.005; kappa < 1.5; kappa *= 1.2) {
        const bool ok = check_resolution(ModelParams{1.0, 0.8, 0.05, kappa}).ok;
        CHECK_FALSE((!was_ok && ok));
        was_ok = ok;
    }
}

TEST_CASE("sub peaks at g2 = 0.1 are spaced by the closed form") {
    const auto s = ground_emission(0.1, 0.02);
    const auto report = analyze_spectrum(s, {1.0, 0.02, kDefaultProminence});
    REQUIRE(report.sub_peak_spacing.has_value());
    CHECK(*report.sub_peak_spacing == Approx(0.1832).epsilon(0.01));
}

TEST_CASE("round trip over the coupling sweep") {
    for (double g2 : {0.03, 0.05, 0.1}) {
        const auto report = analyze_spectrum(ground_emission(g2, 0.02), {1.0, 0.02, kDefaultProminence});
        CAPTURE(g2);
        REQUIRE(report.inferred_g2.has_value());
        REQUIRE(report.inferred_g1.has_value());
        CHECK(std::abs(*report.inferred_g2 - g2) <= 0.02 * g2);
        CHECK(std::abs(*report.inferred_g1 - 0.8) <= 0.02 * 0.8);
        CHECK(report.resolution_ok);
        for (std::size_t i = 1; i < report.peaks.size(); ++i)
            CHECK(report.peaks[i].location > report.peaks[i - 1].location);

        // Classified main sidebands sit on their ladder rung.
        const ModelParams p{1.0, 0.8, g2, 0.02};
        for (const auto& pk : report.peaks) {
            if (pk.cls != PeakClass::MainSideband && pk.cls != PeakClass::ZeroPhonon) continue;
            const int j = *pk.cluster;
            double best = 1e9;
            for (int n = std::max(0, -j); n < 40; ++n) best = std::min(best, std::abs(pk.location - sideband_location(n, n + j, p)));
            CHECK(best < 0.01);
        }
    }
}

TEST_CASE("resolution threshold in the decay sweep") {
    for (double kappa : {0.02, 0.05, 0.08}) {
        CAPTURE(kappa);
        CHECK(analyze_spectrum(ground_emission(0.05, kappa), {1.0, kappa, 1e-3}).max_cluster_size() >= 3);
    }
    CHECK(analyze_spectrum(ground_emission(0.05, 0.15), {1.0, 0.15, 1e-3}).max_cluster_size() < 3);
}

TEST_CASE("non-ground spectra are flagged") {
    const ModelParams p{1.0, 0.8, 0.05, 0.02};
    const auto T = transition_matrix(p, 60);
    const auto s = emission_spectrum(make_init_state(parse_state_spec("number:3"), 60, T),
                                     GridSpec{-8.0, 6.0, 0.002}.points(), p, T);
    const auto report = analyze_spectrum(s, {1.0, 0.02, kDefaultProminence});
    CHECK_FALSE(report.inferred_g1.has_value());
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("empty model yields only the zero-phonon line") {
    const auto s = sampled(-2.0, 2.0, 0.002, [](double d) { return 0.01 / M_PI / (d * d + 1e-4); });
    const auto report = analyze_spectrum(s, {1.0, 0.02, kDefaultProminence});
    CHECK(report.peaks.size() == 1);
    REQUIRE(report.zero_phonon_location.has_value());
    CHECK(std::abs(*report.zero_phonon_location) < 1e-9);
    REQUIRE(report.inferred_g1.has_value());
    CHECK(*report.inferred_g1 < 1e-4);
    CHECK(*report.inferred_g2 == 0.0);
    CHECK_FALSE(report.resolution_ok);
}

TEST_CASE("interference dips fall below the incident packet") {
    const WavepacketParams wp{0.0, 1.0};
    // Lorentzian with a notch at 0.5 and a gap between two bumps at -1.
    const auto s = sampled(-3.0, 3.0, 0.002, [](double d) {
        const double bumps = 0.2 * (std::exp(-(d + 1.1) * (d + 1.1) / 0.001) + std::exp(-(d + 0.9) * (d + 0.9) / 0.001));
        return input_lorentzian(d, {0.0, 1.0}) * (1.0 - 0.5 * std::exp(-(d - 0.5) * (d - 0.5) / 0.001)) + bumps;
    });
    const auto dips = interference_dips(s, wp, 0.01, 0.02);
    REQUIRE(dips.size() == 1);
    CHECK(dips[0].location == Approx(0.5).epsilon(0.01));
    CHECK(find_extrema(s, 0.01, 0.02).minima.size() >= 2);
}
