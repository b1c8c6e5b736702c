#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "msgate/evolve.hpp"
#include "msgate/hamiltonians.hpp"
#include "helpers.hpp"

using namespace msgate;
using msgate_test::base_params;

namespace {
const Complex I(0.0, 1.0);
}

TEST_SUITE("evolve") {

TEST_CASE("default step resolves the fastest phase factor") {
    CHECK(TimeGrid::default_dt(5.0) == doctest::Approx(2.0 * M_PI / 10.0 / 50.0));
}

TEST_CASE("grid validation") {
    TimeGrid g{0.0, 10.0, 0.1, 1};
    CHECK_NOTHROW(g.validate());
    CHECK_THROWS_AS((TimeGrid{0.0, 10.0, 0.0, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{0.0, 10.0, -0.1, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{5.0, 5.0, 0.1, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{0.0, 10.0, 0.1, 0}).validate(), std::invalid_argument);
}

TEST_CASE("zero Hamiltonian leaves the state untouched") {
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::e, 2, 4);
    const MatrixProvider H = [](double) { return ComplexMatrix::Zero(16, 16); };
    const Trajectory traj =
        schrodinger_evolve(H, psi0, TimeGrid{0.0, 25.0, 0.05, 10},
                           {basis_index(Level::g, Level::e, 2, 4)});
    for (std::size_t k = 0; k < traj.size(); ++k) {
        CHECK(traj.probs[k][1] == doctest::Approx(1.0));
        CHECK(std::abs(traj.amplitudes[k][0] - Complex(1.0)) <= 1e-15);
        CHECK(traj.norms[k] == doctest::Approx(1.0));
    }
}

TEST_CASE("constant coupling reproduces the two-level oscillation") {
    // gg <-> ee coupling of strength Omega on a single phonon level behaves
    // as an exact two-level problem: Prob(ee)(t) = sin^2(Omega t).
    const double om = 0.25;
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(0, 3) = om;
    h(3, 0) = om;
    const MatrixProvider H = [&h](double) { return h; };
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 1);
    const Trajectory traj = schrodinger_evolve(H, psi0, TimeGrid{0.0, 6.0, 0.002, 25});
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double want = std::pow(std::sin(om * traj.times[k]), 2);
        CHECK(std::abs(traj.probs[k][3] - want) <= 1e-8);
    }
}

TEST_CASE("sector populations sum to the squared norm") {
    const GateParams p = base_params();
    const HarmonicHamiltonian h = perturbative_harmonics(p, 2);
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 4);
    const Trajectory traj =
        schrodinger_evolve(h, psi0, TimeGrid{0.0, 500.0, TimeGrid::default_dt(p.nu), 64});
    CHECK(traj.size() > 100);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double sum =
            traj.probs[k][0] + traj.probs[k][1] + traj.probs[k][2] + traj.probs[k][3];
        CHECK(std::abs(sum - traj.norms[k] * traj.norms[k]) <= 1e-9);
    }
}

TEST_CASE("population readout of simple states") {
    const StateVector gg0 = StateVector::basis_state(Level::g, Level::g, 0, 3);
    const std::array<double, 4> pk = prob_kl(gg0);
    CHECK(pk[0] == doctest::Approx(1.0));
    CHECK(pk[1] + pk[2] + pk[3] == doctest::Approx(0.0));

    // (|gg> + i|ee>)/sqrt2 on the phonon vacuum
    ComplexVector v = ComplexVector::Zero(12);
    v[basis_index(Level::g, Level::g, 0, 3)] = 1.0 / std::sqrt(2.0);
    v[basis_index(Level::e, Level::e, 0, 3)] = I / std::sqrt(2.0);
    const std::array<double, 4> pb = prob_kl(StateVector(v, 3));
    CHECK(pb[0] == doctest::Approx(0.5));
    CHECK(pb[3] == doctest::Approx(0.5));
    CHECK(pb[1] == doctest::Approx(0.0));
    CHECK(pb[2] == doctest::Approx(0.0));
}

TEST_CASE("norm drift guard rejects non-unitary generators") {
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(3, 0) = I * 0.5;  // not Hermitian: population leaks out of the start state
    const MatrixProvider H = [&h](double) { return h; };
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 1);
    CHECK_THROWS_AS(schrodinger_evolve(H, psi0, TimeGrid{0.0, 50.0, 0.01, 10}),
                    IntegrationDivergedError);
}

TEST_CASE("initial state must be normalized") {
    ComplexVector v = ComplexVector::Zero(4);
    v[0] = 2.0;
    CHECK_THROWS_AS(schrodinger_evolve([](double) { return ComplexMatrix::Zero(4, 4); },
                                       StateVector(v, 1), TimeGrid{0.0, 1.0, 0.01, 1}),
                    std::invalid_argument);
}

TEST_CASE("recorded amplitude indices are validated") {
    // Same convention as basis_index: a bad index is out_of_range.
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 2);
    const MatrixProvider H = [](double) { return ComplexMatrix::Zero(8, 8); };
    CHECK_THROWS_AS(schrodinger_evolve(H, psi0, TimeGrid{0.0, 1.0, 0.01, 1}, {8}),
                    std::out_of_range);
    CHECK_THROWS_AS(schrodinger_evolve(H, psi0, TimeGrid{0.0, 1.0, 0.01, 1}, {-1}),
                    std::out_of_range);
}

TEST_CASE("provider dimension must match the state") {
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 2);
    const MatrixProvider H = [](double) { return ComplexMatrix::Zero(4, 4); };
    CHECK_THROWS_AS(schrodinger_evolve(H, psi0, TimeGrid{0.0, 1.0, 0.01, 1}),
                    std::invalid_argument);
}

TEST_CASE("batched column evolution matches single runs") {
    const GateParams p = base_params();
    const HarmonicHamiltonian h = perturbative_harmonics(p, 2);
    const double dt = TimeGrid::default_dt(p.nu);

    ComplexMatrix Psi0 = ComplexMatrix::Zero(16, 2);
    Psi0(basis_index(Level::g, Level::g, 0, 4), 0) = 1.0;
    Psi0(basis_index(Level::g, Level::g, 1, 4), 1) = 1.0;
    const ComplexMatrix Psi = evolve_columns(h, Psi0, 150.0, dt);

    for (int c = 0; c < 2; ++c) {
        const StateVector psi0(Psi0.col(c).eval(), 4);
        const Trajectory traj = schrodinger_evolve(
            h, psi0, TimeGrid{0.0, 150.0, dt, 1000000}, {0, 1, 2, 3});
        // compare full final state via a second single-column batch
        const ComplexMatrix single =
            evolve_columns(h, ComplexMatrix(Psi0.col(c)), 150.0, dt);
        CHECK((single.col(0) - Psi.col(c)).cwiseAbs().maxCoeff() <= 1e-12);
        // and its populations against the trajectory's last sample
        const std::array<double, 4> pk = prob_kl(StateVector(Psi.col(c).eval(), 4));
        for (int s = 0; s < 4; ++s)
            CHECK(std::abs(pk[s] - traj.probs.back()[s]) <= 1e-12);
    }
}

TEST_CASE("matrix-provider and harmonic integrators agree") {
    const GateParams p = base_params();
    const HarmonicHamiltonian h = perturbative_harmonics(p, 2);
    const MatrixProvider H = [&](double t) { return perturbative_hamiltonian(p, t, 2); };
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 4);
    const TimeGrid grid{0.0, 200.0, TimeGrid::default_dt(p.nu), 500};
    const Trajectory ta = schrodinger_evolve(h, psi0, grid, {0});
    const Trajectory tb = schrodinger_evolve(H, psi0, grid, {0});
    REQUIRE(ta.size() == tb.size());
    for (std::size_t k = 0; k < ta.size(); ++k)
        CHECK(std::abs(ta.amplitudes[k][0] - tb.amplitudes[k][0]) <= 1e-12);
}

TEST_CASE("affine solver: pure drift integrates linearly") {
    ReducedSystem s;
    s.A = ComplexMatrix::Zero(3, 3);
    s.b = ComplexVector::Zero(3);
    s.b[0] = 1.0;
    s.c0 = ComplexVector::Zero(3);
    s.c0[1] = 0.5;
    const ComplexVector c = evolve_affine(s, 2.5);
    CHECK(std::abs(c[0] - Complex(2.5)) <= 1e-12);
    CHECK(std::abs(c[1] - Complex(0.5)) <= 1e-12);
    CHECK(std::abs(c[2]) <= 1e-12);
}

TEST_CASE("affine solver: diagonal phases rotate exactly") {
    ReducedSystem s;
    s.A = ComplexMatrix::Zero(2, 2);
    s.A(0, 0) = I * 0.7;
    s.A(1, 1) = -I * 1.9;
    s.b = ComplexVector::Zero(2);
    s.c0 = ComplexVector(2);
    s.c0 << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const double t = 13.4;
    const ComplexVector c = evolve_affine(s, t);
    CHECK(std::abs(c[0] - s.c0[0] * std::exp(I * 0.7 * t)) <= 1e-12);
    CHECK(std::abs(c[1] - s.c0[1] * std::exp(-I * 1.9 * t)) <= 1e-12);
}

TEST_CASE("three-mode reduction tracks the full ground population") {
    // The reduction drops fast terms, so agreement is coarse (a few percent)
    // but must hold across a whole gate period.
    const GateParams p(0.1, 0.025, 5.0, 0.025, 2);
    const HarmonicHamiltonian h = perturbative_harmonics(p, 2);
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, 2);
    const Trajectory traj = schrodinger_evolve(
        h, psi0, TimeGrid{0.0, 14800.0, TimeGrid::default_dt(p.nu), 20000});

    const ReducedSystem sys = reduced3(p);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const ComplexVector c = evolve_affine(sys, traj.times[k]);
        worst = std::max(worst, std::abs(std::norm(c[0]) - traj.probs[k][0]));
    }
    CHECK(worst <= 0.05);
}

}  // TEST_SUITE
