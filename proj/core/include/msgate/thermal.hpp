#pragma once

#include <array>
#include <optional>
#include <vector>

#include "msgate/core.hpp"
#include "msgate/hamiltonians.hpp"

namespace msgate {

// Thermal phonon ensemble over a truncated Fock space.
struct ThermalSpec {
    double n_th = 0.0;      // mean phonon number, >= 0
    int trunc_dim = 4;      // truncation N
    bool renormalize = false;  // divide weights by the truncated sum

    ThermalSpec(double n_th_, int trunc_dim_, bool renormalize_ = false);
};

// Maximally entangled two-ion targets.
enum class BellTarget {
    phase_shifted,  // (e^{-i pi/4}/sqrt2)(|gg> + i |ee>)
    phi_plus,       // (|gg> + |ee>)/sqrt2
};

// Bose-Einstein weights p_n = n_th^n / (1+n_th)^{n+1} over n = 0..N-1.
// Without renormalization the truncated tail mass is simply dropped.
std::vector<double> phonon_weights(const ThermalSpec& spec);

// Overlap of a full gate state with (Bell target) x (any phonon state):
// sum_m |<target, m|psi>|^2.
double bell_overlap(const StateVector& psi, BellTarget target = BellTarget::phase_shifted);

// Per-channel gate quality: evolves each |g g n>, n = 0..N-1, under the
// order-2 Hamiltonian to t_gate and returns the N Bell overlaps. The
// expensive part of a thermal fidelity curve; weights are applied separately
// so one call serves every n_th.
// dt <= 0 selects TimeGrid::default_dt(p.nu). exact_h switches to the full
// (non-expanded) Hamiltonian, for comparison runs only.
std::vector<double> channel_overlaps(const GateParams& p, int trunc_dim, double t_gate,
                                     double dt = -1.0,
                                     BellTarget target = BellTarget::phase_shifted,
                                     bool exact_h = false);

// Thermal-averaged gate fidelity F = sum_n p_n * overlap_n at the given gate
// time. The overload without t_gate uses closed_form_T0(p)/4.
double fidelity_vs_nth(const GateParams& p, const ThermalSpec& spec, double t_gate,
                       double dt = -1.0);
double fidelity_vs_nth(const GateParams& p, const ThermalSpec& spec);

// Closed-form amplitudes (c0, c1, c2) of the toy gate started in |g g 0>.
std::array<Complex, 3> toy_closed_form(const ToyParams& tp, double t);

// Times (at alpha = 1; scale by 1/alpha for other couplings) at which
// |c0| resp. |c1| first reach 1/sqrt2. t_tilde0 is set when the two
// coincide, which happens at kappa = sqrt2 - 1. Throws NoSolutionError when
// an arccos argument falls outside [-1, 1].
struct ToyTimes {
    double t0;
    double t1;
    std::optional<double> t_tilde0;
};
ToyTimes toy_times(double kappa);

// Thermal fidelity of the toy gate at t = T~0: evolves each |g g n> under
// the time-independent toy Hamiltonian (matrix exponential via
// eigendecomposition), projects on |Phi+> x |n>, and weights by p_n.
double toy_fidelity_thermal(const ToyParams& tp, const ThermalSpec& spec);

}  // namespace msgate
