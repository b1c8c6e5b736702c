#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "msgate/evolve.hpp"

namespace msgate {

// All writers print floating-point fields with 17 significant digits
// ("%.17g"), so equal inputs give byte-identical files.

std::string format_double(double v);

// Header: t,prob_gg,prob_ge,prob_eg,prob_ee,norm[,re_cgg,im_cgg,re_cee,im_cee]
// The amplitude columns appear when the trajectory recorded exactly the
// (g,g,0) and (e,e,0) amplitudes, in that order.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// Header: param_value,t0_numeric,t0_closed,t_ms. One row per sweep point.
struct SweepRow {
    double param_value;
    double t0_numeric;
    double t0_closed;
    double t_ms;
};
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Header: n_th,F_dim<d0>,F_dim<d1>,... One fidelity column per truncation.
void write_fidelity_csv(std::ostream& os, const std::vector<int>& dims,
                        const std::vector<double>& n_ths,
                        const std::vector<std::vector<double>>& F_per_dim);

// Header: n_th,F_toy.
void write_toy_fidelity_csv(std::ostream& os, const std::vector<double>& n_ths,
                            const std::vector<double>& F);

// Header: t,prob_gg0,prob_ee0. Population trace of the toy gate.
void write_toy_trace_csv(std::ostream& os, const std::vector<double>& ts,
                         const std::vector<double>& p0, const std::vector<double>& p1);

}  // namespace msgate
