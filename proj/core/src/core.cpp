#include "msgate/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace msgate {

GateParams::GateParams(double omega_, double eta_, double nu_, double dnu_, int phonon_dim_)
    : omega(omega_), eta(eta_), nu(nu_), dnu(dnu_), phonon_dim(phonon_dim_) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("GateParams: omega must be positive");
    if (!(eta >= 0.0 && eta < 0.5))
        throw std::invalid_argument("GateParams: eta must lie in [0, 0.5)");
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("GateParams: nu must be positive");
    if (!(dnu > 0.0) || !std::isfinite(dnu))
        throw std::invalid_argument("GateParams: dnu must be positive");
    if (phonon_dim < 2)
        throw std::invalid_argument("GateParams: phonon_dim must be >= 2");
}

int basis_index(Level a, Level b, int n, int N) {
    if (N < 1) throw std::invalid_argument("basis_index: N must be >= 1");
    if (n < 0 || n >= N)
        throw std::out_of_range("basis_index: phonon number " + std::to_string(n) +
                                " outside [0, " + std::to_string(N) + ")");
    return (static_cast<int>(a) * 2 + static_cast<int>(b)) * N + n;
}

BasisIndex basis_unindex(int index, int N) {
    if (N < 1) throw std::invalid_argument("basis_unindex: N must be >= 1");
    if (index < 0 || index >= 4 * N)
        throw std::out_of_range("basis_unindex: index " + std::to_string(index) +
                                " outside [0, " + std::to_string(4 * N) + ")");
    const int sector = index / N;
    return {static_cast<Level>(sector / 2), static_cast<Level>(sector % 2), index % N};
}

StateVector::StateVector(ComplexVector amps, int N) : amplitudes(std::move(amps)), phonon_dim(N) {
    if (N < 1) throw std::invalid_argument("StateVector: phonon_dim must be >= 1");
    if (amplitudes.size() != 4 * static_cast<Eigen::Index>(N))
        throw std::invalid_argument("StateVector: amplitude count must be 4 * phonon_dim");
}

StateVector StateVector::basis_state(Level a, Level b, int n, int N) {
    ComplexVector v = ComplexVector::Zero(4 * N);
    v[basis_index(a, b, n, N)] = 1.0;
    return StateVector(std::move(v), N);
}

ComplexMatrix annihilation(int N) {
    if (N < 2) throw std::invalid_argument("annihilation: dimension must be >= 2");
    ComplexMatrix a = ComplexMatrix::Zero(N, N);
    for (int m = 0; m + 1 < N; ++m) a(m, m + 1) = std::sqrt(m + 1.0);
    return a;
}

double hermiticity_defect(const ComplexMatrix& M) {
    if (M.rows() != M.cols())
        throw std::invalid_argument("hermiticity_defect: matrix must be square");
    return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace msgate
