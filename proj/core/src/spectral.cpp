#include "msgate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace msgate {

namespace {

const Complex I(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

// Least-squares quadratic y ~ c2 x^2 + c1 x + c0 on [lo, hi]; x is time
// relative to the discrete extremum. Returns (c2, c1, rms residual).
struct QuadFit {
    double c2, c1, rms;
};

QuadFit fit_quadratic(const std::vector<double>& ts, const std::vector<double>& y,
                      std::size_t lo, std::size_t hi, double t_center) {
    const std::size_t m = hi - lo + 1;
    Eigen::MatrixXd X(m, 3);
    Eigen::VectorXd Y(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double x = ts[lo + k] - t_center;
        X(k, 0) = x * x;
        X(k, 1) = x;
        X(k, 2) = 1.0;
        Y(k) = y[lo + k];
    }
    Eigen::Vector3d c = (X.transpose() * X).ldlt().solve(X.transpose() * Y);
    const double rms = std::sqrt((X * c - Y).squaredNorm() / m);
    return {c[0], c[1], rms};
}

PeriodEstimate infinite_estimate(PeriodMethod method) {
    PeriodEstimate e;
    e.value = kInf;
    e.method = method;
    return e;
}

}  // namespace

bool PeriodEstimate::finite() const { return std::isfinite(value); }

PeriodEstimate extract_period(const Trajectory& traj, ProbChannel channel) {
    const std::size_t n = traj.size();
    if (n < 5) throw NotPeriodicError("extract_period: trace too short");
    const int ch = static_cast<int>(channel);

    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = traj.probs[k][ch];
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    if (*ymax_it - *ymin_it < 0.1)
        throw NotPeriodicError("extract_period: channel contrast below 0.1, no usable swing");

    // Channels that start full (Prob(gg) from |gg n>) reach their first
    // half-period at a minimum; flip so the search is always for a summit.
    if (y.front() > *ymin_it + 0.5 * (*ymax_it - *ymin_it))
        for (double& v : y) v = -v;

    const std::size_t i =
        static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    if (i == 0 || i == n - 1)
        throw NotPeriodicError("extract_period: extremum sits on the trace boundary");

    const double h = traj.times[1] - traj.times[0];

    // Widen the fit window only while the quadratic curvature is not resolved
    // above the local residual; clean traces stop at the immediate
    // neighbours, noisy ones average over enough samples automatically.
    std::size_t w = 2;
    double vertex = traj.times[i], prev_vertex = traj.times[i];
    std::size_t lo = i - 1, hi = i + 1;
    bool widened = false;
    while (true) {
        lo = i >= w ? i - w : 0;
        hi = std::min(n - 1, i + w);
        const QuadFit f = fit_quadratic(traj.times, y, lo, hi, traj.times[i]);
        if (f.c2 != 0.0) {
            prev_vertex = vertex;
            vertex = traj.times[i] - f.c1 / (2.0 * f.c2);
            vertex = std::clamp(vertex, traj.times[lo], traj.times[hi]);
        }
        const double depth = std::abs(f.c2) * (w * h) * (w * h);
        const bool resolved = f.c2 < 0.0 && depth >= 10.0 * f.rms;
        if (resolved || 2 * w > n) break;
        w *= 2;
        widened = true;
    }

    PeriodEstimate est;
    est.method = PeriodMethod::trajectory_minimum;
    est.value = 2.0 * (vertex - traj.times.front());
    est.uncertainty = 2.0 * (widened ? std::max(h, std::abs(vertex - prev_vertex)) : h);
    if (traj.span() < 0.6 * est.value)
        throw NotPeriodicError("extract_period: trace spans less than 60% of the period");
    return est;
}

PeriodEstimate extract_phase_period(const std::vector<double>& times,
                                    const std::vector<Complex>& amps) {
    const std::size_t n = times.size();
    if (n != amps.size())
        throw std::invalid_argument("extract_phase_period: times/amps length mismatch");
    if (n < 4) throw NotPeriodicError("extract_phase_period: need at least 4 samples");

    double min_mag = kInf;
    for (const Complex& a : amps) min_mag = std::min(min_mag, std::abs(a));
    if (min_mag < 0.9) {
        std::ostringstream os;
        os << "extract_phase_period: |amplitude| dips to " << min_mag
           << " (< 0.9); the channel leaks and the phase is not a clean rotation";
        throw ChannelLeakageError(os.str());
    }

    // Unwrapped phase, then least-squares slope.
    std::vector<double> phi(n);
    phi[0] = std::arg(amps[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double d = std::arg(amps[k]) - std::arg(amps[k - 1]);
        d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
        phi[k] = phi[k - 1] + d;
    }
    double tbar = 0.0, pbar = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        tbar += times[k];
        pbar += phi[k];
    }
    tbar /= n;
    pbar /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (times[k] - tbar) * (times[k] - tbar);
        sxy += (times[k] - tbar) * (phi[k] - pbar);
    }
    if (sxx == 0.0) throw NotPeriodicError("extract_phase_period: degenerate time grid");
    const double slope = sxy / sxx;

    PeriodEstimate est;
    est.method = PeriodMethod::phase_slope;
    est.sign = slope >= 0.0 ? +1 : -1;
    if (slope == 0.0) {
        est.value = kInf;
        return est;
    }
    est.value = 2.0 * M_PI / std::abs(slope);
    double ss_res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = phi[k] - pbar - slope * (times[k] - tbar);
        ss_res += r * r;
    }
    const double slope_se = std::sqrt(ss_res / (n > 2 ? (n - 2) : 1) / sxx);
    est.uncertainty = 2.0 * M_PI * slope_se / (slope * slope);
    return est;
}

std::vector<PeriodEstimate> eigen_periods(const ComplexMatrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("eigen_periods: matrix must be square");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(A, false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigen_periods: eigensolver failed to converge");
    std::vector<PeriodEstimate> out;
    out.reserve(A.rows());
    for (long k = 0; k < A.rows(); ++k) {
        const Complex lam = es.eigenvalues()[k];
        PeriodEstimate e;
        e.method = PeriodMethod::eigenvalue;
        if (std::abs(lam) == 0.0 || std::abs(lam.imag()) <= 1e-14 * std::abs(lam))
            e.value = kInf;  // no oscillation along this mode
        else
            e.value = std::abs((2.0 * M_PI * I / lam).real());
        out.push_back(e);
    }
    return out;
}

PeriodEstimate longest_finite_period(const std::vector<PeriodEstimate>& periods) {
    PeriodEstimate best = infinite_estimate(PeriodMethod::eigenvalue);
    double max_finite = -kInf;
    for (const PeriodEstimate& e : periods)
        if (e.finite() && e.value > max_finite) {
            max_finite = e.value;
            best = e;
        }
    return best;
}

PeriodEstimate closed_form_T0(const GateParams& p) {
    const double om = p.omega, eta = p.eta, nu = p.nu, dnu = p.dnu;
    const double U = 2 * std::pow(dnu, 3) + 3 * nu * dnu * dnu - 3 * nu * nu * dnu -
                     2 * std::pow(nu, 3) +
                     18 * (dnu + eta * eta * dnu - nu + 2 * eta * eta * nu) * om * om;
    const double Y = dnu * dnu + nu * dnu + nu * nu + 6 * (1 + eta * eta) * om * om;
    const double W = 4 * std::pow(Y, 3) - U * U;
    // Principal branches throughout; the eigenvalue cross-check below is the
    // guard against landing on the wrong cube root elsewhere in parameter
    // space.
    const Complex Z = std::pow(I * U + std::sqrt(Complex(W, 0.0)), 1.0 / 3.0);
    const Complex X = 2.0 * I * (dnu - nu) + std::pow(2.0, 4.0 / 3.0) * Y / Z -
                      std::pow(2.0, 2.0 / 3.0) * Z;
    const double t0 = 12.0 * M_PI * (1.0 / X).imag();

    const PeriodEstimate oracle = longest_finite_period(eigen_periods(reduced3(p).A));
    if (!oracle.finite() || !(std::abs(t0 - oracle.value) <= 1e-6 * oracle.value)) {
        std::ostringstream os;
        os << "closed_form_T0: root-branch value " << t0
           << " disagrees with the eigenvalue period " << oracle.value;
        throw BranchError(os.str(), t0, oracle.value);
    }

    PeriodEstimate est;
    est.method = PeriodMethod::closed_form;
    est.value = t0;
    est.uncertainty = std::abs(t0 - oracle.value);
    return est;
}

PeriodEstimate t_prime(const GateParams& p, int n) {
    return longest_finite_period(eigen_periods(reduced5(p, n).A));
}

double t_ms(const GateParams& p) {
    return M_PI * p.dnu / (p.eta * p.eta * p.omega * p.omega);
}

double t_ge_zero_formula(const GateParams& p) {
    return M_PI * (p.nu + p.dnu) / (p.omega * p.omega);
}

CzScales cz_scales(const GateParams& p) {
    CzScales s;
    s.t_cz1_scale = 1.0 / p.omega;
    s.t_cz2_lower_bound = 1.0 / (p.eta * p.eta * p.nu);
    s.energy_shift = -(p.omega * p.omega) / p.nu;
    return s;
}

}  // namespace msgate
