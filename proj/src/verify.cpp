#include "optospec/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "optospec/emission.hpp"

namespace optospec {

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

CheckResult make_check(std::string name, double analytic, double oracle_value, double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.analytic = analytic;
    c.oracle = oracle_value;
    c.abs_error = std::abs(analytic - oracle_value);
    c.rel_error = oracle_value != 0.0 ? c.abs_error / std::abs(oracle_value) : c.abs_error;
    c.tolerance = tolerance;
    c.pass = std::isfinite(c.abs_error) && c.abs_error <= tolerance;
    return c;
}

CheckResult make_error_check(std::string name, double error, double tolerance) {
    CheckResult c = make_check(std::move(name), error, 0.0, tolerance);
    c.rel_error = error;
    return c;
}

namespace {

double max_eigen_error(const ModelParams& p, int dim, int levels) {
    double worst = 0.0;
    for (int n = 0; n <= 1; ++n) {
        const auto ev = oracle::diagonalize_sector(n, p, dim);
        for (int m = 0; m < levels; ++m) worst = std::max(worst, std::abs(eigen_energy(n, m, p) - ev[m]));
    }
    return worst;
}

double max_overlap_error(const ModelParams& p, int max_index) {
    const SqueezeDisplaceSpec spec = single_photon_spec(p);
    const auto ref = oracle::converged_overlap_block(spec, 4 * (max_index + 1));
    double worst = 0.0;
    for (int m = 0; m <= max_index; ++m)
        for (int n = 0; n <= max_index; ++n) worst = std::max(worst, std::abs(overlap_sd(m, n, spec) - ref.block(m, n)));
    return worst;
}

}  // namespace

TimeDomainComparison compare_time_domain(const ModelParams& p, const TimeDomainSetup& setup) {
    const auto bath = oracle::make_bath(p.kappa, setup.delta_min, setup.delta_max, setup.n_modes);
    const auto T = transition_matrix(p, setup.n_max);
    const auto mech = number_state(0, setup.n_max);
    TimeDomainComparison out;
    out.evolution = oracle::evolve_amplitudes(p, bath, oracle::cavity_photon(mech), setup.t_kappa / p.kappa, setup.n_max);
    out.numeric = oracle::bath_spectrum(out.evolution.final, bath, 1);
    out.analytic = emission_spectrum(mech, out.numeric.deltas, p, T);
    std::vector<double> a, b;
    for (std::size_t i = 0; i < out.numeric.size(); ++i) {
        const double d = out.numeric.deltas[i];
        if (d >= setup.compare_min && d <= setup.compare_max) {
            a.push_back(out.numeric.values[i]);
            b.push_back(out.analytic.values[i]);
        }
    }
    out.l2_error = oracle::l2_relative_error(a, b);
    return out;
}

namespace {

void add_time_domain(VerifyReport& report) {
    // Empty-model cavity decay.
    {
        const ModelParams p{1.0, 0.0, 0.0, 0.02};
        const auto bath = oracle::make_bath(p.kappa, -8.0, 4.0, 4001);
        const auto mech = number_state(0, 1);
        const double t = 10.0 / p.kappa;
        const auto res = oracle::evolve_amplitudes(p, bath, oracle::cavity_photon(mech), t, 1);
        const double expected = std::exp(-p.kappa * t);
        CheckResult c = make_check("cavity_decay_t10_over_kappa", expected, res.final.cavity_population(), 0.0);
        c.tolerance = 0.01 * expected;
        c.pass = c.abs_error <= c.tolerance;
        report.checks.push_back(c);
        report.checks.push_back(make_error_check("cavity_decay_norm_drift", res.max_norm_drift, 1e-6));
    }
    // Long-time bath populations against the closed-form emission spectrum.
    {
        const ModelParams p{1.0, 0.8, 0.01, 0.02};
        const TimeDomainComparison cmp = compare_time_domain(p);
        report.checks.push_back(make_error_check("emission_time_domain_l2_g1_0.8_g2_0.01", cmp.l2_error, 1e-2));
        const auto& res = cmp.evolution;
        report.checks.push_back(make_error_check("emission_time_domain_norm_drift", res.max_norm_drift, 1e-6));
        report.checks.push_back(make_error_check("emission_time_domain_tail_population", res.tail_population, 1e-8));
    }
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;
    report.checks.push_back(make_error_check("commutator_defect_N200", oracle::commutator_defect(200), 1e-10));

    for (double g2 : {0.01, 0.05, 0.1}) {
        const ModelParams p{1.0, 0.8, g2, 0.02};
        report.checks.push_back(make_error_check(fmt::format("eigen_energies_g1_0.8_g2_{}", g2),
                                                 max_eigen_error(p, 200, 11), 1e-6));
    }
    {
        const ModelParams p{1.0, 0.8, 0.0, 0.02};
        report.checks.push_back(
            make_check("polaron_shift_g1_0.8", -0.64, oracle::diagonalize_sector(1, p, 200).front(), 1e-6));
        report.checks.push_back(
            make_check("displaced_vacuum_overlap_0_1", 0.8 * std::exp(-0.32), oracle::oracle_overlap(0, 1, p, 64).real(),
                       1e-10));
    }
    {
        const ModelParams p{1.0, 0.8, 0.05, 0.02};
        const auto ev = oracle::diagonalize_sector(1, p, 200);
        report.checks.push_back(make_check("ladder_spacing_g2_0.05", std::sqrt(1.2), ev[1] - ev[0], 1e-6));
    }
    {
        const ModelParams p{1.0, 0.8, 0.1, 0.02};
        report.checks.push_back(make_error_check("overlap_max_error_m_n_le_15", max_overlap_error(p, 15), 1e-8));
        report.checks.push_back(
            make_error_check("transition_matrix_orthonormality_20", transition_matrix(p, 80).orthonormality_defect(20),
                             1e-10));
    }
    if (options.time_domain) add_time_domain(report);
    return report;
}

json to_json(const CheckResult& c) {
    return {{"name", c.name},         {"analytic", c.analytic},   {"oracle", c.oracle}, {"abs_error", c.abs_error},
            {"rel_error", c.rel_error}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

json to_json(const VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) checks.push_back(to_json(c));
    return {{"all_pass", report.all_pass()}, {"checks", std::move(checks)}};
}

}  // namespace optospec
