#pragma once

#include <string>
#include <vector>

#include "msgate/core.hpp"

namespace msgate {

// Sum-of-harmonics form H(t) = sum_j exp(i w_j t) C_j. The gate Hamiltonians
// have ~10 distinct frequencies, so precomputing the C_j makes repeated
// evaluation (RK4 inner loop) cheap.
struct HarmonicHamiltonian {
    int dim = 0;
    std::vector<double> freqs;
    std::vector<ComplexMatrix> coeffs;

    ComplexMatrix at(double t) const;

    // Y = scale * H(t) * X, using `scratch` to avoid per-call allocation.
    void apply(double t, Complex scale, const ComplexMatrix& X, ComplexMatrix& Y,
               ComplexMatrix& scratch) const;
};

// Full gate Hamiltonian on the truncated space: the displacement factor
// exp(i eta M(t)) with M(t) = a e^{-i nu t} + a^dag e^{i nu t} is realized by
// eigendecomposition of the Hermitian M(t), so it stays exactly unitary on
// the truncation.
ComplexMatrix exact_hamiltonian(const GateParams& p, double t);

// Cumulative Lamb-Dicke expansion of the gate Hamiltonian through the given
// order (0, 1, or 2). Order 1 adds i*eta*Omega*M(t) sideband couplings,
// order 2 adds -(eta^2/2)*Omega*M(t)^2 corrections.
ComplexMatrix perturbative_hamiltonian(const GateParams& p, double t, int order);

// Same operator in precomputed harmonic form.
HarmonicHamiltonian perturbative_harmonics(const GateParams& p, int order);

// Hand-written right-hand side d/dt c = -i H c of the order-2 system for two
// Fock levels (N = 2, eight amplitudes), coded term by term independently of
// the matrix builders. Serves as a cross-check oracle for them.
ComplexVector eight_state_rhs(const GateParams& p, double t, const ComplexVector& c);

// Affine linear ODE dc/dt = A c + b with initial condition c0.
struct ReducedSystem {
    ComplexMatrix A;
    ComplexVector b;
    ComplexVector c0;
    std::string label;
};

// Rotating-wave 3x3 reduction for the vacuum phonon channel, variables
// (c_gg0, x, c_ee0-like combination); c0 = (1, 0, 0).
ReducedSystem reduced3(const GateParams& p);

// 5x5 reduction for initial phonon number n >= 1, variables
// (x~, c1, y~, c5~, c6~); c0 = (0, 1, 0, 0, 0).
ReducedSystem reduced5(const GateParams& p, int n);

// Phonon-number-preserving toy gate: H_A = i alpha (sA+ a - sA- a^dag),
// H_B = i alpha kappa (sB+ a^dag - sB- a).
struct ToyParams {
    double alpha;  // coupling, > 0
    double kappa;  // dimensionless ratio, > 0

    ToyParams(double alpha_, double kappa_);
};

// Restriction of the toy gate to its invariant subspace: for n = 0 the
// 3-state basis (|gg0>, |ee0>, |ge1>), for n >= 1 the 4-state basis
// (|ggn>, |eg n-1>, |ge n+1>, |een>). Time-independent.
ComplexMatrix toy_hamiltonian(const ToyParams& tp, int n);

}  // namespace msgate
