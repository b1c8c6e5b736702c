#include "msgate/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "msgate/evolve.hpp"
#include "msgate/spectral.hpp"

namespace msgate {

namespace {

const Complex I(0.0, 1.0);

double clamp_to_unit(double x, const char* what) {
    // Tolerate representation noise at the +-1 boundary, reject real
    // out-of-range arguments (the regime with no crossing time).
    if (x > 1.0) {
        if (x > 1.0 + 1e-12) throw NoSolutionError(std::string(what) + " exceeds 1");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - 1e-12) throw NoSolutionError(std::string(what) + " falls below -1");
        return -1.0;
    }
    return x;
}

}  // namespace

ThermalSpec::ThermalSpec(double n_th_, int trunc_dim_, bool renormalize_)
    : n_th(n_th_), trunc_dim(trunc_dim_), renormalize(renormalize_) {
    if (!(n_th >= 0.0) || !std::isfinite(n_th))
        throw std::invalid_argument("ThermalSpec: n_th must be finite and >= 0");
    if (trunc_dim < 1) throw std::invalid_argument("ThermalSpec: trunc_dim must be >= 1");
}

std::vector<double> phonon_weights(const ThermalSpec& spec) {
    std::vector<double> p(spec.trunc_dim, 0.0);
    if (spec.n_th == 0.0) {
        p[0] = 1.0;
        return p;
    }
    // p_n = n_th^n / (1+n_th)^{n+1}, the Bose-Einstein distribution in the
    // mean-occupation parameterization.
    const double ratio = spec.n_th / (1.0 + spec.n_th);
    p[0] = 1.0 / (1.0 + spec.n_th);
    for (int n = 1; n < spec.trunc_dim; ++n) p[n] = p[n - 1] * ratio;
    if (spec.renormalize) {
        double sum = 0.0;
        for (double v : p) sum += v;
        for (double& v : p) v /= sum;
    }
    return p;
}

double bell_overlap(const StateVector& psi, BellTarget target) {
    const int N = psi.phonon_dim;
    const auto gg = psi.amplitudes.segment(0 * N, N);
    const auto ee = psi.amplitudes.segment(3 * N, N);
    double sum = 0.0;
    for (int m = 0; m < N; ++m) {
        const Complex z =
            target == BellTarget::phase_shifted ? gg[m] - I * ee[m] : gg[m] + ee[m];
        sum += 0.5 * std::norm(z);
    }
    return sum;
}

std::vector<double> channel_overlaps(const GateParams& p, int trunc_dim, double t_gate,
                                     double dt, BellTarget target, bool exact_h) {
    const GateParams q(p.omega, p.eta, p.nu, p.dnu, trunc_dim);
    const int N = trunc_dim;

    ComplexMatrix Psi0 = ComplexMatrix::Zero(4 * N, N);
    for (int n = 0; n < N; ++n) Psi0(basis_index(Level::g, Level::g, n, N), n) = 1.0;

    const double step = dt > 0.0 ? dt : TimeGrid::default_dt(q.nu);
    const ComplexMatrix Psi =
        exact_h ? evolve_columns([&](double t) { return exact_hamiltonian(q, t); }, Psi0,
                                 t_gate, step)
                : evolve_columns(perturbative_harmonics(q, 2), Psi0, t_gate, step);

    std::vector<double> overlaps(N);
    for (int n = 0; n < N; ++n)
        overlaps[n] = bell_overlap(StateVector(Psi.col(n), N), target);
    return overlaps;
}

double fidelity_vs_nth(const GateParams& p, const ThermalSpec& spec, double t_gate,
                       double dt) {
    const std::vector<double> o = channel_overlaps(p, spec.trunc_dim, t_gate, dt);
    const std::vector<double> w = phonon_weights(spec);
    double F = 0.0;
    for (int n = 0; n < spec.trunc_dim; ++n) F += w[n] * o[n];
    return F;
}

double fidelity_vs_nth(const GateParams& p, const ThermalSpec& spec) {
    return fidelity_vs_nth(p, spec, closed_form_T0(p).value / 4.0, -1.0);
}

std::array<Complex, 3> toy_closed_form(const ToyParams& tp, double t) {
    const double k2 = tp.kappa * tp.kappa;
    const double w = tp.alpha * std::sqrt(1.0 + k2);
    const double C = std::cos(w * t), S = std::sin(w * t);
    return {Complex((1.0 + k2 * C) / (1.0 + k2)),
            Complex(tp.kappa * (1.0 - C) / (1.0 + k2)),
            Complex(tp.kappa * S / std::sqrt(1.0 + k2))};
}

ToyTimes toy_times(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("toy_times: kappa must be positive");
    const double r2 = std::sqrt(2.0);
    const double k2 = kappa * kappa;
    const double th0 = clamp_to_unit((-2.0 + r2 + r2 * k2) / (2.0 * k2),
                                     "toy_times: |c0| crossing argument");
    const double th1 = clamp_to_unit((-r2 + 2.0 * kappa - r2 * k2) / (2.0 * kappa),
                                     "toy_times: |c1| crossing argument");
    const double w = std::sqrt(1.0 + k2);  // alpha = 1; scale times by 1/alpha
    ToyTimes out{std::acos(th0) / w, std::acos(th1) / w, std::nullopt};
    // Coincidence is detected on the arccos arguments: near -1 the arccos
    // itself turns representation noise into ~1e-8 time differences.
    if (std::abs(th0 - th1) <= 1e-9) out.t_tilde0 = 0.5 * (out.t0 + out.t1);
    return out;
}

double toy_fidelity_thermal(const ToyParams& tp, const ThermalSpec& spec) {
    // Gate time of the matched coupling kappa = sqrt2 - 1; with this w-t
    // product the closed form gives exactly 1 at n_th = 0 and the whole curve
    // is alpha-independent.
    const double t_gate = std::sqrt(2.0 + std::sqrt(2.0)) * M_PI / (2.0 * tp.alpha);
    const std::vector<double> w = phonon_weights(spec);

    double F = 0.0;
    for (int n = 0; n < spec.trunc_dim; ++n) {
        const ComplexMatrix H = toy_hamiltonian(tp, n);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
        if (es.info() != Eigen::Success)
            throw NumericalError("toy_fidelity_thermal: eigensolver failed");
        ComplexVector e0 = ComplexVector::Zero(H.rows());
        e0[0] = 1.0;
        ComplexVector phases(H.rows());
        for (long k = 0; k < H.rows(); ++k)
            phases[k] = std::exp(-I * (es.eigenvalues()[k] * t_gate));
        const ComplexVector v = es.eigenvectors() *
                                (phases.asDiagonal() * (es.eigenvectors().adjoint() * e0));
        const Complex cee = n == 0 ? v[1] : v[3];
        F += w[n] * 0.5 * std::norm(v[0] + cee);
    }
    return F;
}

}  // namespace msgate
