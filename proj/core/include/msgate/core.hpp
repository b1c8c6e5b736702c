#pragma once

#include <complex>

#include <Eigen/Dense>

#include "msgate/errors.hpp"

namespace msgate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Internal ion level. g maps to 0, e to 1 in the canonical basis order.
enum class Level : int { g = 0, e = 1 };

// Physical parameter tuple of the two-ion gate, dimensionless units, hbar = 1.
// Both ions share the same Rabi frequency and zero laser phase; ion A is
// driven at detuning -(nu+dnu), ion B at +(nu+dnu).
struct GateParams {
    double omega;    // Rabi frequency, > 0
    double eta;      // Lamb-Dicke parameter, in [0, 0.5)
    double nu;       // phonon angular frequency, > 0
    double dnu;      // detuning offset beyond nu, > 0
    int phonon_dim;  // Fock-space truncation, >= 2

    GateParams(double omega_, double eta_, double nu_, double dnu_, int phonon_dim_);
};

// Decoded basis triple; the linear index is ((a*2)+b)*N + n with g=0, e=1,
// ion A slowest, phonon fastest.
struct BasisIndex {
    Level ion_a;
    Level ion_b;
    int n;
};

int basis_index(Level a, Level b, int n, int N);
BasisIndex basis_unindex(int index, int N);

// Complex amplitude vector over the ionA (x) ionB (x) phonon basis.
struct StateVector {
    ComplexVector amplitudes;  // length 4*phonon_dim
    int phonon_dim;

    StateVector(ComplexVector amps, int N);
    // Unit basis state |a b n>.
    static StateVector basis_state(Level a, Level b, int n, int N);
    double norm() const { return amplitudes.norm(); }
    int dim() const { return static_cast<int>(amplitudes.size()); }
};

// Truncated annihilation operator: [m, m+1] = sqrt(m+1), N >= 2.
ComplexMatrix annihilation(int N);

// max entrywise |M - M^dagger|; 0 iff Hermitian.
double hermiticity_defect(const ComplexMatrix& M);

}  // namespace msgate
