#include <doctest.h>

#include <cmath>

#include "optospec/errors.hpp"
#include "optospec/franck_condon.hpp"
#include "optospec/oracle.hpp"

using namespace optospec;
using doctest::Approx;

TEST_CASE("hermite polynomials") {
    CHECK(hermite(0, {0.3, 0.7}) == cplx(1.0, 0.0));
    CHECK(hermite(1, {2.0, 0.0}) == cplx(4.0, 0.0));
    CHECK(hermite(3, {2.0, 0.0}) == cplx(40.0, 0.0));
    const cplx z{0.4, -1.1};
    CHECK(std::abs(hermite(4, z) - (16.0 * std::pow(z, 4) - 48.0 * z * z + 12.0)) < 1e-12);
}

TEST_CASE("overlap special cases") {
    const SqueezeDisplaceSpec vac{0.0841, 0.0, 0.0};
    CHECK(overlap_sd(0, 0, vac).real() == Approx(1.0 / std::sqrt(std::cosh(0.0841))).epsilon(1e-14));
    CHECK(overlap_sd(0, 0, vac).real() == Approx(0.99824).epsilon(1e-5));
    const SqueezeDisplaceSpec id{0.0, 0.0, 0.0};
    for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 6; ++n) CHECK(std::abs(overlap_sd(m, n, id) - (m == n ? 1.0 : 0.0)) < 1e-15);
    CHECK_THROWS_AS(overlap_sd(-1, 0, id), DomainError);
}

TEST_CASE("overlap matches the matrix-exponential oracle") {
    const ModelParams p{1.0, 0.8, 0.1, 0.02};
    const auto spec = single_photon_spec(p);
    const cplx ref = oracle::oracle_overlap(3, 5, p, 64);
    CHECK(std::abs(overlap_sd(3, 5, spec) - ref) < 1e-10);
    CHECK(overlap_sd(3, 5, spec).real() == Approx(0.417733273767935).epsilon(1e-12));
}

TEST_CASE("general squeeze angle and complex displacement against the oracle") {
    const SqueezeDisplaceSpec spec{0.3, 0.7, {0.4, -0.25}};
    const auto ref = oracle::converged_overlap_block(spec, 48);
    for (int m = 0; m < 12; ++m)
        for (int n = 0; n < 12; ++n) CHECK(std::abs(overlap_sd(m, n, spec) - ref.block(m, n)) < 1e-10);
}

TEST_CASE("parity under beta -> -beta") {
    const SqueezeDisplaceSpec a{0.2, 0.0, 0.6};
    const SqueezeDisplaceSpec b{0.2, 0.0, -0.6};
    for (int m = 0; m < 10; ++m)
        for (int n = 0; n < 10; ++n) {
            const double sign = (m + n) % 2 == 0 ? 1.0 : -1.0;
            CHECK(std::abs(overlap_sd(m, n, b) - sign * overlap_sd(m, n, a)) < 1e-13);
        }
}

TEST_CASE("continuity at s -> 0") {
    const SqueezeDisplaceSpec tiny{1e-6, 0.0, -0.7};
    const SqueezeDisplaceSpec zero{0.0, 0.0, -0.7};
    for (int m = 0; m < 10; ++m)
        for (int n = 0; n < 10; ++n) CHECK(std::abs(overlap_sd(m, n, tiny) - overlap_sd(m, n, zero)) < 1e-5);
}

TEST_CASE("overlap table agrees with pointwise evaluation") {
    const SqueezeDisplaceSpec spec{0.15, 0.0, -0.5};
    const auto table = overlap_table(8, 9, spec);
    CHECK(table.rows() == 8);
    CHECK(table.cols() == 9);
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 9; ++n) CHECK(std::abs(table(m, n) - overlap_sd(m, n, spec)) < 1e-14);
}

TEST_CASE("transition matrix") {
    const auto id = transition_matrix(ModelParams{1.0, 0.0, 0.0, 0.02}, 10);
    CHECK((id.entries() - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-15);

    const ModelParams p{1.0, 0.8, 0.1, 0.02};
    const auto T = transition_matrix(p, 80);
    CHECK(T(0, 0) == Approx(0.8363287966666084).epsilon(1e-13));
    CHECK(T.orthonormality_defect(30) < 1e-10);
    // The dominant channel for column n sits near m = n.
    for (int n = 0; n < 20; ++n) {
        Eigen::Index arg;
        T.entries().col(n).cwiseAbs().maxCoeff(&arg);
        CHECK(std::abs(static_cast<int>(arg) - n) <= 3);
    }
    CHECK_THROWS_AS(transition_matrix(p, 0), DomainError);
}
