#include <doctest.h>

#include <cmath>

#include "optospec/emission.hpp"
#include "optospec/errors.hpp"
#include "optospec/oracle.hpp"

using namespace optospec;
using doctest::Approx;

TEST_CASE("truncated ladder operators") {
    const auto b = oracle::annihilation(6);
    CHECK(b.matrix(2, 3) == cplx(std::sqrt(3.0), 0.0));
    CHECK(b.matrix(3, 2) == cplx(0.0, 0.0));
    CHECK((oracle::creation(6).matrix - b.matrix.adjoint()).norm() == 0.0);
    CHECK(oracle::commutator_defect(200) < 1e-10);
}

TEST_CASE("sector diagonalisation") {
    const auto free = oracle::diagonalize_sector(0, ModelParams{1.0, 0.8, 0.1, 0.02}, 50);
    for (int m = 0; m < 10; ++m) CHECK(free[m] == Approx(m).scale(1.0).epsilon(1e-12));
    CHECK(oracle::diagonalize_sector(1, ModelParams{1.0, 0.8, 0.0, 0.02}, 200)[0] == Approx(-0.64).epsilon(1e-10));
    const auto ev = oracle::diagonalize_sector(1, ModelParams{1.0, 0.8, 0.05, 0.02}, 200);
    CHECK(ev[1] - ev[0] == Approx(1.0954).epsilon(1e-4));
    for (double g2 : {0.01, 0.05, 0.1}) {
        const ModelParams p{1.0, 0.8, g2, 0.02};
        const auto e1 = oracle::diagonalize_sector(1, p, 200);
        for (int m = 0; m <= 10; ++m) CHECK(std::abs(e1[m] - eigen_energy(1, m, p)) < 1e-6);
    }
}

TEST_CASE("matrix-exponential overlaps") {
    CHECK(std::abs(oracle::oracle_overlap(0, 0, ModelParams{1.0, 0.0, 0.0, 0.02}, 40) - 1.0) < 1e-14);
    const cplx v = oracle::oracle_overlap(0, 1, ModelParams{1.0, 0.8, 0.0, 0.02}, 64);
    CHECK(v.real() == Approx(0.8 * std::exp(-0.32)).epsilon(1e-12));
    CHECK(std::abs(v - 0.8 * std::exp(-0.32)) < 1e-10);
    CHECK_THROWS_AS(oracle::oracle_overlap(20, 0, ModelParams{1.0, 0.8, 0.1, 0.02}, 64), DomainError);

    const ModelParams p{1.0, 0.0, 0.1, 0.02};
    const auto ref = oracle::converged_overlap_block(single_photon_spec(p), 200);
    CHECK(ref.doubling_change < oracle::kDoublingTolerance);
    CHECK(std::abs(ref.block(2, 2) - overlap_sd(2, 2, single_photon_spec(p))) < 1e-10);
}

TEST_CASE("bath discretisation") {
    const auto bath = oracle::make_bath(0.02, -8.0, 4.0, 4001);
    CHECK(bath.spacing() == Approx(0.003));
    CHECK(bath.recurrence_time() == Approx(2 * M_PI / 0.003));
    for (int k = 0; k < bath.n_modes; k += 500)
        CHECK(bath.couplings[k] * bath.couplings[k] == Approx(0.02 / (2 * M_PI) * 0.003).epsilon(1e-12));
    CHECK_THROWS_AS(oracle::make_bath(0.02, 4.0, -8.0, 100), DomainError);
}

TEST_CASE("evolution at t = 0 returns the initial condition") {
    const ModelParams p{1.0, 0.8, 0.05, 0.02};
    const auto bath = oracle::make_bath(p.kappa, -8.0, 4.0, 401);
    const auto mech = number_state(0, 20);
    const auto res = oracle::evolve_amplitudes(p, bath, oracle::cavity_photon(mech), 0.0, 20);
    const auto T = transition_matrix(p, 20);
    CHECK((res.final.cavity - T.entries().transpose() * mech.pure_amplitudes->cast<cplx>()).norm() < 1e-14);
    CHECK(res.final.bath.norm() == 0.0);

    const WavepacketParams wp{-0.6, 0.05};
    const auto res_b = oracle::evolve_amplitudes(p, bath, oracle::wavepacket_photon(mech, wp), 0.0, 20);
    CHECK(res_b.final.cavity.norm() == 0.0);
    // Discrete Lorentzian mass on the bath modes.
    double mass = 0.0;
    for (double d : bath.detunings) mass += bath.spacing() * input_lorentzian(d, wp);
    CHECK(res_b.final.norm() == Approx(mass).epsilon(1e-10));
}

TEST_CASE("empty-model cavity decays exponentially with conserved norm") {
    const ModelParams p{1.0, 0.0, 0.0, 0.02};
    const auto bath = oracle::make_bath(p.kappa, -8.0, 4.0, 4001);
    const double t = 10.0 / p.kappa;
    const auto res = oracle::evolve_amplitudes(p, bath, oracle::cavity_photon(number_state(0, 1)), t, 1);
    CHECK(res.final.cavity_population() == Approx(std::exp(-p.kappa * t)).epsilon(0.01));
    CHECK(res.max_norm_drift < 1e-6);
    for (double n : res.norms) CHECK(n == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("evolution refuses to run past the bath recurrence") {
    const ModelParams p{1.0, 0.0, 0.0, 0.02};
    const auto bath = oracle::make_bath(p.kappa, -1.0, 1.0, 101);
    CHECK_THROWS_AS(oracle::evolve_amplitudes(p, bath, oracle::cavity_photon(number_state(0, 1)),
                                              bath.recurrence_time(), 1),
                    DomainError);
}

TEST_CASE("l2 relative error") {
    CHECK(oracle::l2_relative_error({1.0, 2.0}, {1.0, 2.0}) == 0.0);
    CHECK(oracle::l2_relative_error({0.0, 0.0}, {3.0, 4.0}) == Approx(1.0));
    CHECK_THROWS_AS(oracle::l2_relative_error({1.0}, {1.0, 2.0}), DomainError);
}
