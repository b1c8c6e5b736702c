#pragma once

#include <array>
#include <functional>
#include <vector>

#include "msgate/core.hpp"
#include "msgate/hamiltonians.hpp"

namespace msgate {

// Integration grid. The effective step is span/ceil(span/dt), i.e. never
// larger than dt and chosen so the grid lands exactly on t_end.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
    int sample_stride = 1;  // keep every k-th step (plus the final one)

    // >= 50 RK4 steps per cycle of the fastest phase factor exp(2 i nu t).
    static double default_dt(double nu);

    void validate() const;
};

// Time-sampled observables of one integration run.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::array<double, 4>> probs;  // Prob(gg), Prob(ge), Prob(eg), Prob(ee)
    std::vector<double> norms;
    std::vector<int> amp_indices;                   // which basis amplitudes were recorded
    std::vector<std::vector<Complex>> amplitudes;   // per sample, one entry per amp_index
    int phonon_dim = 0;

    std::size_t size() const { return times.size(); }
    double span() const { return times.empty() ? 0.0 : times.back() - times.front(); }
};

// Populations of the four ion sectors (phonons traced out); sums to |psi|^2.
std::array<double, 4> prob_kl(const StateVector& psi);

using MatrixProvider = std::function<ComplexMatrix(double)>;

// Classical RK4 for psi' = -i H(t) psi, H evaluated at t, t+h/2, t+h each
// step. Throws IntegrationDivergedError if the norm drifts from 1 by more
// than 1e-4 at any sample.
Trajectory schrodinger_evolve(const MatrixProvider& H, const StateVector& psi0,
                              const TimeGrid& grid, std::vector<int> amp_indices = {});
Trajectory schrodinger_evolve(const HarmonicHamiltonian& H, const StateVector& psi0,
                              const TimeGrid& grid, std::vector<int> amp_indices = {});

// Batched variant: evolves every column of Psi0 at once and returns only the
// final states (used for thermal ensembles where per-step samples are not
// needed). Same step rule and divergence guard as schrodinger_evolve.
ComplexMatrix evolve_columns(const HarmonicHamiltonian& H, const ComplexMatrix& Psi0,
                             double t_end, double dt);
ComplexMatrix evolve_columns(const MatrixProvider& H, const ComplexMatrix& Psi0,
                             double t_end, double dt);

// Solution of dc/dt = A c + b at time t. Diagonalizes A and uses the shifted
// variable c + A^{-1} b when A is safely invertible and well-conditioned;
// falls back to RK4 otherwise, so a result is always produced.
ComplexVector evolve_affine(const ReducedSystem& sys, double t);

}  // namespace msgate
