#include "msgate/hamiltonians.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace msgate {

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix sigma_plus() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(1, 0) = 1.0;  // |e><g| with g = 0, e = 1
    return s;
}

// Lift a 2x2 ion operator times a phonon operator into the full space,
// ion A slowest, phonon fastest.
ComplexMatrix lift(char ion, const ComplexMatrix& X, const ComplexMatrix& P) {
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    if (ion == 'A')
        return Eigen::kroneckerProduct(X, Eigen::kroneckerProduct(id2, P).eval()).eval();
    return Eigen::kroneckerProduct(id2, Eigen::kroneckerProduct(X, P).eval()).eval();
}

}  // namespace

ComplexMatrix HarmonicHamiltonian::at(double t) const {
    ComplexMatrix H = ComplexMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < freqs.size(); ++j)
        H.noalias() += std::exp(I * (freqs[j] * t)) * coeffs[j];
    return H;
}

void HarmonicHamiltonian::apply(double t, Complex scale, const ComplexMatrix& X,
                                ComplexMatrix& Y, ComplexMatrix& scratch) const {
    Y.setZero(X.rows(), X.cols());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        scratch.noalias() = coeffs[j] * X;
        Y.noalias() += (scale * std::exp(I * (freqs[j] * t))) * scratch;
    }
}

HarmonicHamiltonian perturbative_harmonics(const GateParams& p, int order) {
    if (order < 0 || order > 2)
        throw std::invalid_argument("perturbative_harmonics: order must be 0, 1, or 2");
    const int N = p.phonon_dim;
    const ComplexMatrix a = annihilation(N);
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix idN = ComplexMatrix::Identity(N, N);
    const ComplexMatrix sp = sigma_plus();
    const ComplexMatrix sm = sp.adjoint();
    const double dlt = p.nu + p.dnu;

    // Collect e^{i f t} * C contributions, merging equal frequencies.
    std::map<double, ComplexMatrix> terms;
    auto add = [&](double f, const ComplexMatrix& C) {
        auto it = terms.find(f);
        if (it == terms.end())
            terms.emplace(f, C);
        else
            it->second += C;
    };

    // M(t) = a e^{-i nu t} + a^dag e^{i nu t}; M(t)^2 on the truncation.
    const std::pair<double, ComplexMatrix> M_parts[] = {{-p.nu, a}, {+p.nu, ad}};
    const std::pair<double, ComplexMatrix> M2_parts[] = {
        {-2 * p.nu, a * a}, {+2 * p.nu, ad * ad}, {0.0, a * ad + ad * a}};

    for (auto [ion, sgn] : {std::pair<char, double>{'A', +1.0}, {'B', -1.0}}) {
        add(sgn * dlt, p.omega * lift(ion, sp, idN));
        add(-sgn * dlt, p.omega * lift(ion, sm, idN));
        if (order >= 1) {
            for (const auto& [f, P] : M_parts) {
                add(sgn * dlt + f, I * p.eta * p.omega * lift(ion, sp, P));
                add(-sgn * dlt + f, -I * p.eta * p.omega * lift(ion, sm, P));
            }
        }
        if (order >= 2) {
            const double c2 = -0.5 * p.eta * p.eta * p.omega;
            for (const auto& [f, P] : M2_parts) {
                add(sgn * dlt + f, c2 * lift(ion, sp, P));
                add(-sgn * dlt + f, c2 * lift(ion, sm, P));
            }
        }
    }

    HarmonicHamiltonian H;
    H.dim = 4 * N;
    for (auto& [f, C] : terms) {
        H.freqs.push_back(f);
        H.coeffs.push_back(std::move(C));
    }
    return H;
}

ComplexMatrix perturbative_hamiltonian(const GateParams& p, double t, int order) {
    return perturbative_harmonics(p, order).at(t);
}

ComplexMatrix exact_hamiltonian(const GateParams& p, double t) {
    const int N = p.phonon_dim;
    const ComplexMatrix a = annihilation(N);
    const ComplexMatrix idN = ComplexMatrix::Identity(N, N);
    const double dlt = p.nu + p.dnu;

    // D(t) = exp(i eta M(t)) through the eigendecomposition of the Hermitian
    // M(t): unitary on the truncated space by construction.
    ComplexMatrix M = a * std::exp(-I * (p.nu * t));
    M += M.adjoint().eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M);
    if (es.info() != Eigen::Success)
        throw NumericalError("exact_hamiltonian: eigensolver failed on M(t)");
    ComplexVector phases(N);
    for (int k = 0; k < N; ++k) phases[k] = std::exp(I * (p.eta * es.eigenvalues()[k]));
    const ComplexMatrix D =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

    ComplexMatrix H = p.omega * std::exp(I * (dlt * t)) * lift('A', sigma_plus(), D) +
                      p.omega * std::exp(-I * (dlt * t)) * lift('B', sigma_plus(), D);
    H += H.adjoint().eval();
    return H;
}

ComplexVector eight_state_rhs(const GateParams& p, double t, const ComplexVector& c) {
    if (c.size() != 8)
        throw std::invalid_argument("eight_state_rhs: expected 8 amplitudes (N = 2)");
    // Transcribed term by term from the explicit printed ODE for the two-ion,
    // two-Fock-level second-order system; variables (a..h) in basis order.
    const Complex a = c[0], b = c[1], cc = c[2], d = c[3];
    const Complex e = c[4], f = c[5], g = c[6], h = c[7];
    const double eta = p.eta;
    const double q = (eta * eta - 2.0) / 2.0;
    const double dv = p.dnu;
    const double w = p.nu + p.dnu;
    const double W2 = 2.0 * p.nu + p.dnu;
    auto E = [&](double freq) { return std::exp(I * (freq * t)); };

    ComplexVector rhs(8);
    rhs[0] = -q * E(w) * cc - I * eta * E(dv) * d - q * E(-w) * e - I * eta * E(-W2) * f;
    rhs[1] = -I * eta * E(W2) * cc - q * E(w) * d - I * eta * E(-dv) * e - q * E(-w) * f;
    rhs[2] = -q * E(-w) * a + I * eta * E(-W2) * b - q * E(-w) * g - I * eta * E(-W2) * h;
    rhs[3] = I * eta * E(-dv) * a - q * E(-w) * b - I * eta * E(-dv) * g - q * E(-w) * h;
    rhs[4] = -q * E(w) * a + I * eta * E(dv) * b - q * E(w) * g - I * eta * E(dv) * h;
    rhs[5] = I * eta * E(W2) * a - q * E(w) * b - I * eta * E(W2) * g - q * E(w) * h;
    rhs[6] = -q * E(w) * cc + I * eta * E(dv) * d - q * E(-w) * e + I * eta * E(-W2) * f;
    rhs[7] = I * eta * E(W2) * cc - q * E(w) * d + I * eta * E(-dv) * e - q * E(-w) * f;
    // The printed system reads i c'(t)/Omega = ..., hence the -i Omega factor.
    return (-I * p.omega) * rhs;
}

ReducedSystem reduced3(const GateParams& p) {
    ReducedSystem s;
    s.A = ComplexMatrix::Zero(3, 3);
    s.A(0, 2) = -p.eta * p.omega;
    s.A(1, 1) = -I * p.nu;
    s.A(1, 2) = -I * p.omega;
    s.A(2, 0) = 2.0 * p.eta * p.omega;
    s.A(2, 1) = -2.0 * I * p.omega;
    s.A(2, 2) = I * p.dnu;
    s.b = ComplexVector::Zero(3);
    s.b[2] = -p.eta * p.omega;
    s.c0 = ComplexVector::Zero(3);
    s.c0[0] = 1.0;
    s.label = "vacuum-channel 3x3 reduction";
    return s;
}

ReducedSystem reduced5(const GateParams& p, int n) {
    if (n < 1)
        throw std::invalid_argument("reduced5: n must be >= 1 (use reduced3 for n = 0)");
    const double rp = std::sqrt(n + 1.0);
    const double rm = std::sqrt(static_cast<double>(n));
    const double om = p.omega, eta = p.eta;

    ReducedSystem s;
    s.A = ComplexMatrix::Zero(5, 5);
    // variable order (x~, c1, y~, c5~, c6~)
    s.A(0, 0) = I * p.nu;
    s.A(0, 4) = -2.0 * I * om;
    s.A(1, 3) = 2.0 * rp * eta * om;
    s.A(1, 4) = 2.0 * rm * eta * om;
    s.A(2, 2) = -I * p.nu;
    s.A(2, 3) = -2.0 * I * om;
    s.A(3, 1) = -rp * eta * om;
    s.A(3, 2) = -I * om;
    s.A(3, 3) = I * p.dnu;
    s.A(4, 0) = -I * om;
    s.A(4, 1) = -rm * eta * om;
    s.A(4, 4) = -I * p.dnu;
    s.b = ComplexVector::Zero(5);
    s.b[3] = -I * om * rp * eta;
    s.b[4] = -I * om * rm * eta;
    s.c0 = ComplexVector::Zero(5);
    s.c0[1] = 1.0;
    s.label = "phonon-" + std::to_string(n) + " channel 5x5 reduction";
    return s;
}

ToyParams::ToyParams(double alpha_, double kappa_) : alpha(alpha_), kappa(kappa_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("ToyParams: alpha must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("ToyParams: kappa must be positive");
}

ComplexMatrix toy_hamiltonian(const ToyParams& tp, int n) {
    if (n < 0) throw std::invalid_argument("toy_hamiltonian: n must be >= 0");
    if (n == 0) {
        // basis (|gg0>, |ee0>, |ge1>)
        ComplexMatrix X = ComplexMatrix::Zero(3, 3);
        X(0, 2) = -tp.kappa;
        X(1, 2) = 1.0;
        X(2, 0) = tp.kappa;
        X(2, 1) = -1.0;
        return I * tp.alpha * X;
    }
    // basis (|ggn>, |eg n-1>, |ge n+1>, |een>); ladder factors from the
    // truncated a, a^dag acting inside this invariant subspace.
    const double rp = std::sqrt(n + 1.0);
    const double rm = std::sqrt(static_cast<double>(n));
    ComplexMatrix X = ComplexMatrix::Zero(4, 4);
    X(1, 0) = rm;            // sA+ a
    X(2, 0) = tp.kappa * rp; // kappa sB+ a^dag
    X(3, 1) = tp.kappa * rm; // kappa sB+ a^dag
    X(3, 2) = rp;            // sA+ a
    X(0, 1) = -rm;
    X(0, 2) = -tp.kappa * rp;
    X(1, 3) = -tp.kappa * rm;
    X(2, 3) = -rp;
    return I * tp.alpha * X;
}

}  // namespace msgate
