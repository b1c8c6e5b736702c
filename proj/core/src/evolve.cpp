#include "msgate/evolve.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace msgate {

namespace {

const Complex I(0.0, 1.0);

long step_count(double span, double dt) {
    // Never step larger than dt; tiny slack so span = k*dt gives exactly k.
    long n = static_cast<long>(std::ceil(span / dt - 1e-9));
    return n < 1 ? 1 : n;
}

void check_drift(double norm, double t) {
    if (std::abs(norm - 1.0) > 1e-4) {
        std::ostringstream os;
        os << "norm drifted to " << norm << " at t = " << t
           << " (step size too large for this Hamiltonian?)";
        throw IntegrationDivergedError(os.str());
    }
}

void check_normalized(const StateVector& psi0) {
    if (std::abs(psi0.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("schrodinger_evolve: psi0 must be normalized");
}

// RK4 over matrix columns: apply(t, X, K) must set K = -i H(t) X. Calls
// on_sample(step, t) after recording-worthy steps; sampling is the caller's
// policy so the batched variant can skip it entirely.
template <class ApplyFn, class SampleFn>
void rk4_drive(ApplyFn&& apply, ComplexMatrix& Psi, double t_start, double h,
               long n_steps, SampleFn&& on_sample) {
    const long rows = Psi.rows(), cols = Psi.cols();
    ComplexMatrix k1(rows, cols), k2(rows, cols), k3(rows, cols), k4(rows, cols);
    ComplexMatrix stage(rows, cols);

    on_sample(0L, t_start);
    for (long k = 0; k < n_steps; ++k) {
        const double t0 = t_start + k * h;
        const double t1 = t_start + (k + 1) * h;
        const double th = 0.5 * (t0 + t1);
        apply(t0, Psi, k1);
        stage = Psi + (h / 2) * k1;
        apply(th, stage, k2);
        stage = Psi + (h / 2) * k2;
        apply(th, stage, k3);
        stage = Psi + h * k3;
        apply(t1, stage, k4);
        Psi += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        on_sample(k + 1, t1);
    }
}

struct SampleRecorder {
    Trajectory& traj;
    const ComplexMatrix& Psi;  // single column
    const TimeGrid& grid;
    long n_steps;
    int N;

    void operator()(long step, double t) const {
        const bool keep = step == 0 || step == n_steps || step % grid.sample_stride == 0;
        if (!keep) return;
        StateVector s(Psi.col(0), N);
        const double nrm = s.norm();
        check_drift(nrm, t);
        traj.times.push_back(t);
        traj.probs.push_back(prob_kl(s));
        traj.norms.push_back(nrm);
        if (!traj.amp_indices.empty()) {
            std::vector<Complex> amps;
            amps.reserve(traj.amp_indices.size());
            for (int idx : traj.amp_indices) amps.push_back(Psi(idx, 0));
            traj.amplitudes.push_back(std::move(amps));
        }
    }
};

Trajectory make_trajectory(const StateVector& psi0, const TimeGrid& grid,
                           std::vector<int> amp_indices, long n_steps) {
    Trajectory traj;
    traj.phonon_dim = psi0.phonon_dim;
    for (int idx : amp_indices)
        if (idx < 0 || idx >= psi0.dim())
            throw std::out_of_range("schrodinger_evolve: amplitude index out of range");
    traj.amp_indices = std::move(amp_indices);
    const long samples = n_steps / grid.sample_stride + 2;
    traj.times.reserve(samples);
    traj.probs.reserve(samples);
    traj.norms.reserve(samples);
    if (!traj.amp_indices.empty()) traj.amplitudes.reserve(samples);
    return traj;
}

}  // namespace

double TimeGrid::default_dt(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("TimeGrid::default_dt: nu must be positive");
    // >= 50 steps per cycle of exp(2 i nu t), the fastest factor present.
    return (2.0 * M_PI / (2.0 * nu)) / 50.0;
}

void TimeGrid::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("TimeGrid: dt must be positive and finite");
    if (!(t_end > t_start) || !std::isfinite(t_end) || !std::isfinite(t_start))
        throw std::invalid_argument("TimeGrid: need finite t_end > t_start");
    if (sample_stride < 1)
        throw std::invalid_argument("TimeGrid: sample_stride must be >= 1");
}

std::array<double, 4> prob_kl(const StateVector& psi) {
    const int N = psi.phonon_dim;
    std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
    for (int sector = 0; sector < 4; ++sector)
        p[sector] = psi.amplitudes.segment(sector * N, N).squaredNorm();
    return p;
}

Trajectory schrodinger_evolve(const MatrixProvider& H, const StateVector& psi0,
                              const TimeGrid& grid, std::vector<int> amp_indices) {
    grid.validate();
    check_normalized(psi0);
    const long n_steps = step_count(grid.t_end - grid.t_start, grid.dt);
    const double h = (grid.t_end - grid.t_start) / n_steps;

    Trajectory traj = make_trajectory(psi0, grid, std::move(amp_indices), n_steps);
    ComplexMatrix Psi = psi0.amplitudes;

    // Cache H per distinct stage time: t+h of one step is t of the next, and
    // the two half-step stages share one evaluation.
    double cached_t = grid.t_start;
    ComplexMatrix Hcur = H(cached_t);
    if (Hcur.rows() != psi0.dim() || Hcur.cols() != psi0.dim())
        throw std::invalid_argument("schrodinger_evolve: state/Hamiltonian dimension mismatch");
    auto apply = [&](double t, const ComplexMatrix& X, ComplexMatrix& K) {
        if (t != cached_t) {
            Hcur = H(t);
            cached_t = t;
        }
        K.noalias() = Hcur * X;
        K *= -I;
    };
    rk4_drive(apply, Psi, grid.t_start, h, n_steps,
              SampleRecorder{traj, Psi, grid, n_steps, psi0.phonon_dim});
    return traj;
}

Trajectory schrodinger_evolve(const HarmonicHamiltonian& H, const StateVector& psi0,
                              const TimeGrid& grid, std::vector<int> amp_indices) {
    grid.validate();
    check_normalized(psi0);
    if (psi0.dim() != H.dim)
        throw std::invalid_argument("schrodinger_evolve: state/Hamiltonian dimension mismatch");
    const long n_steps = step_count(grid.t_end - grid.t_start, grid.dt);
    const double h = (grid.t_end - grid.t_start) / n_steps;

    Trajectory traj = make_trajectory(psi0, grid, std::move(amp_indices), n_steps);
    ComplexMatrix Psi = psi0.amplitudes;

    double cached_t = grid.t_start;
    ComplexMatrix Hcur = H.at(cached_t);
    auto apply = [&](double t, const ComplexMatrix& X, ComplexMatrix& K) {
        if (t != cached_t) {
            Hcur.setZero();
            for (std::size_t j = 0; j < H.freqs.size(); ++j)
                Hcur.noalias() += std::exp(I * (H.freqs[j] * t)) * H.coeffs[j];
            cached_t = t;
        }
        K.noalias() = Hcur * X;
        K *= -I;
    };
    rk4_drive(apply, Psi, grid.t_start, h, n_steps,
              SampleRecorder{traj, Psi, grid, n_steps, psi0.phonon_dim});
    return traj;
}

ComplexMatrix evolve_columns(const HarmonicHamiltonian& H, const ComplexMatrix& Psi0,
                             double t_end, double dt) {
    if (Psi0.rows() != H.dim)
        throw std::invalid_argument("evolve_columns: state/Hamiltonian dimension mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_columns: dt must be positive");
    if (t_end == 0.0) return Psi0;
    const long n_steps = step_count(t_end, dt);
    const double h = t_end / n_steps;

    ComplexMatrix Psi = Psi0;
    double cached_t = 0.0;
    ComplexMatrix Hcur = H.at(cached_t);
    auto apply = [&](double t, const ComplexMatrix& X, ComplexMatrix& K) {
        if (t != cached_t) {
            Hcur.setZero();
            for (std::size_t j = 0; j < H.freqs.size(); ++j)
                Hcur.noalias() += std::exp(I * (H.freqs[j] * t)) * H.coeffs[j];
            cached_t = t;
        }
        K.noalias() = Hcur * X;
        K *= -I;
    };
    rk4_drive(apply, Psi, 0.0, h, n_steps, [](long, double) {});
    for (long c = 0; c < Psi.cols(); ++c) {
        const double n0 = Psi0.col(c).norm();
        if (n0 > 0.0) check_drift(Psi.col(c).norm() / n0, t_end);
    }
    return Psi;
}

ComplexMatrix evolve_columns(const MatrixProvider& H, const ComplexMatrix& Psi0,
                             double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_columns: dt must be positive");
    if (t_end == 0.0) return Psi0;
    const long n_steps = step_count(t_end, dt);
    const double h = t_end / n_steps;

    ComplexMatrix Psi = Psi0;
    double cached_t = 0.0;
    ComplexMatrix Hcur = H(cached_t);
    if (Hcur.rows() != Psi0.rows() || Hcur.cols() != Psi0.rows())
        throw std::invalid_argument("evolve_columns: state/Hamiltonian dimension mismatch");
    auto apply = [&](double t, const ComplexMatrix& X, ComplexMatrix& K) {
        if (t != cached_t) {
            Hcur = H(t);
            cached_t = t;
        }
        K.noalias() = Hcur * X;
        K *= -I;
    };
    rk4_drive(apply, Psi, 0.0, h, n_steps, [](long, double) {});
    for (long c = 0; c < Psi.cols(); ++c) {
        const double n0 = Psi0.col(c).norm();
        if (n0 > 0.0) check_drift(Psi.col(c).norm() / n0, t_end);
    }
    return Psi;
}

ComplexVector evolve_affine(const ReducedSystem& sys, double t) {
    const long d = sys.A.rows();
    if (sys.A.cols() != d || sys.b.size() != d || sys.c0.size() != d)
        throw std::invalid_argument("evolve_affine: inconsistent system dimensions");

    Eigen::FullPivLU<ComplexMatrix> lu(sys.A);
    if (lu.isInvertible()) {
        Eigen::ComplexEigenSolver<ComplexMatrix> es(sys.A);
        if (es.info() == Eigen::Success) {
            const ComplexMatrix& V = es.eigenvectors();
            Eigen::JacobiSVD<ComplexMatrix> svd(V);
            const double smin = svd.singularValues().minCoeff();
            const double cond = smin > 0.0 ? svd.singularValues().maxCoeff() / smin
                                           : std::numeric_limits<double>::infinity();
            if (cond <= 1e8) {
                // Shifted variable u = c + A^{-1} b obeys u' = A u.
                const ComplexVector shift = lu.solve(sys.b);
                ComplexVector u = V.fullPivLu().solve(sys.c0 + shift);
                for (long k = 0; k < d; ++k) u[k] *= std::exp(es.eigenvalues()[k] * t);
                return (V * u - shift).eval();
            }
        }
    }

    // Defective/singular/ill-conditioned: integrate c' = A c + b directly.
    double lmax = 0.0;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(sys.A, false);
    if (es.info() == Eigen::Success) lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double dt = lmax > 0.0 ? 0.002 * 2.0 * M_PI / lmax : std::abs(t) / 1000.0;
    if (t == 0.0) return sys.c0;
    const long n_steps = step_count(std::abs(t), dt > 0.0 ? dt : 1.0);
    const double h = t / n_steps;  // signed: integrates backwards for t < 0
    ComplexVector c = sys.c0;
    ComplexVector k1(d), k2(d), k3(d), k4(d), stage(d);
    for (long k = 0; k < n_steps; ++k) {
        k1 = sys.A * c + sys.b;
        stage = c + (h / 2) * k1;
        k2 = sys.A * stage + sys.b;
        stage = c + (h / 2) * k2;
        k3 = sys.A * stage + sys.b;
        stage = c + h * k3;
        k4 = sys.A * stage + sys.b;
        c += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return c;
}

}  // namespace msgate
