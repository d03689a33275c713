#pragma once

// Oracle suite: closed forms against brute-force references.

#include <string>
#include <vector>

#include "optospec/io.hpp"
#include "optospec/oracle.hpp"

namespace optospec {

struct CheckResult {
    std::string name;
    double analytic{0.0};
    double oracle{0.0};
    double abs_error{0.0};
    double rel_error{0.0};
    double tolerance{0.0};
    bool pass{false};
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

struct VerifyOptions {
    /// Include the time-domain bath comparisons (the slow part).
    bool time_domain{true};
};

/// Builds a result comparing abs_error against tolerance. A non-finite
/// value fails.
CheckResult make_check(std::string name, double analytic, double oracle, double tolerance);

/// Records a scalar discrepancy (e.g. a max error over a table or an L2
/// error) as its own check.
CheckResult make_error_check(std::string name, double error, double tolerance);

/// Bath layout for the time-domain comparison. The band is centred near
/// the strongest emission lines, where the finite-band frequency shift
/// (kappa / 2 pi) ln((w - delta_min) / (delta_max - w)) is smallest, and
/// t_final stays below the recurrence time 2 pi / d_delta.
struct TimeDomainSetup {
    double delta_min{-13.0};
    double delta_max{11.0};
    int n_modes{3001};
    double t_kappa{14.0};  // t_final * kappa
    int n_max{20};
    double compare_min{-8.0};
    double compare_max{4.0};
};

struct TimeDomainComparison {
    oracle::EvolutionResult evolution;
    SpectrumGrid numeric;   // bath populations per mode
    SpectrumGrid analytic;  // closed form on the same detunings
    double l2_error{0.0};   // over [compare_min, compare_max]
};

/// Ground-state emission: photon starts in the cavity, bath populations at
/// t_final against the closed-form spectrum.
TimeDomainComparison compare_time_domain(const ModelParams& p, const TimeDomainSetup& setup = {});

VerifyReport run_verification(const VerifyOptions& options = {});

json to_json(const CheckResult& c);
json to_json(const VerifyReport& report);

}  // namespace optospec
