#pragma once

#include <vector>

#include "msgate/core.hpp"
#include "msgate/evolve.hpp"
#include "msgate/hamiltonians.hpp"

namespace msgate {

enum class PeriodMethod {
    trajectory_minimum,  // interior-extremum fit on a probability trace
    phase_slope,
    eigenvalue,
    closed_form,
    analytic_formula,
};

struct PeriodEstimate {
    double value = 0.0;  // +infinity encodes "no finite period"
    PeriodMethod method = PeriodMethod::analytic_formula;
    double uncertainty = 0.0;  // interpolation half-width or fit standard error
    int sign = +1;             // phase-slope direction; +1 for all other methods

    bool finite() const;
};

enum class ProbChannel : int { gg = 0, ge = 1, eg = 2, ee = 3 };

// Period from a population trace: locates the first interior extremum of the
// channel (maximum for Prob(ee), minimum for Prob(gg)) by a quadratic fit
// around the discrete extremum and returns twice that time, since the
// population follows (1 - cos(2 pi t / T))/2. The fit window starts at the
// immediate neighbours (3-point interpolation) and widens symmetrically only
// while the fitted curvature is not resolved above the local residual, which
// keeps the estimate stable under additive noise without distorting clean
// signals.
PeriodEstimate extract_period(const Trajectory& traj, ProbChannel channel = ProbChannel::ee);

// Signed period of a phase-rotating amplitude c(t) ~ exp(2 pi i t / T):
// unwraps arg c, least-squares fits the slope w, returns 2 pi / |w| with
// sign(w). Requires |c| >= 0.9 throughout (ChannelLeakageError otherwise).
PeriodEstimate extract_phase_period(const std::vector<double>& times,
                                    const std::vector<Complex>& amps);

// One period per eigenvalue of A, literally |Re(2 pi i / lambda)|; real
// eigenvalues (no oscillation) yield an infinite period.
std::vector<PeriodEstimate> eigen_periods(const ComplexMatrix& A);

// Longest finite entry, or an infinite estimate if none is finite.
PeriodEstimate longest_finite_period(const std::vector<PeriodEstimate>& periods);

// Closed-form gate period for the vacuum channel, evaluated with principal
// complex square and cube roots. Every call is validated against the
// eigenvalue periods of reduced3(p); disagreement beyond 1e-6 relative
// throws BranchError instead of returning a silently wrong value.
PeriodEstimate closed_form_T0(const GateParams& p);

// Longest finite eigenvalue period of reduced5(p, n), n >= 1.
PeriodEstimate t_prime(const GateParams& p, int n);

// Reference period pi * dnu / (eta^2 omega^2) of the standard bichromatic
// gate, for comparison curves.
double t_ms(const GateParams& p);

// Analytic estimate pi (nu + dnu) / omega^2 of the |ge> channel phase period
// for the vacuum phonon state.
double t_ge_zero_formula(const GateParams& p);

// Order-of-magnitude Cirac-Zoller timing scales (nothing is simulated):
// pulse time ~ 1/omega, sideband-pulse lower bound 1/(eta^2 nu), and the
// off-resonant energy shift -omega^2/nu.
struct CzScales {
    double t_cz1_scale;
    double t_cz2_lower_bound;
    double energy_shift;
};
CzScales cz_scales(const GateParams& p);

}  // namespace msgate
