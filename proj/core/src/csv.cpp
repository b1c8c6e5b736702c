#include "msgate/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "msgate/core.hpp"

namespace msgate {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const int N = traj.phonon_dim;
    const bool with_amps =
        N > 0 && traj.amp_indices.size() == 2 &&
        traj.amp_indices[0] == basis_index(Level::g, Level::g, 0, N) &&
        traj.amp_indices[1] == basis_index(Level::e, Level::e, 0, N);
    os << "t,prob_gg,prob_ge,prob_eg,prob_ee,norm";
    if (with_amps) os << ",re_cgg,im_cgg,re_cee,im_cee";
    os << "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        os << format_double(traj.times[k]);
        for (double p : traj.probs[k]) os << ',' << format_double(p);
        os << ',' << format_double(traj.norms[k]);
        if (with_amps) {
            const Complex cgg = traj.amplitudes[k][0], cee = traj.amplitudes[k][1];
            os << ',' << format_double(cgg.real()) << ',' << format_double(cgg.imag())
               << ',' << format_double(cee.real()) << ',' << format_double(cee.imag());
        }
        os << "\n";
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "param_value,t0_numeric,t0_closed,t_ms\n";
    for (const SweepRow& r : rows)
        os << format_double(r.param_value) << ',' << format_double(r.t0_numeric) << ','
           << format_double(r.t0_closed) << ',' << format_double(r.t_ms) << "\n";
}

void write_fidelity_csv(std::ostream& os, const std::vector<int>& dims,
                        const std::vector<double>& n_ths,
                        const std::vector<std::vector<double>>& F_per_dim) {
    if (dims.size() != F_per_dim.size())
        throw std::invalid_argument("write_fidelity_csv: one F column per dim required");
    for (const auto& col : F_per_dim)
        if (col.size() != n_ths.size())
            throw std::invalid_argument("write_fidelity_csv: column/n_th length mismatch");
    os << "n_th";
    for (int d : dims) os << ",F_dim" << d;
    os << "\n";
    for (std::size_t k = 0; k < n_ths.size(); ++k) {
        os << format_double(n_ths[k]);
        for (std::size_t j = 0; j < dims.size(); ++j) os << ',' << format_double(F_per_dim[j][k]);
        os << "\n";
    }
}

void write_toy_fidelity_csv(std::ostream& os, const std::vector<double>& n_ths,
                            const std::vector<double>& F) {
    if (n_ths.size() != F.size())
        throw std::invalid_argument("write_toy_fidelity_csv: length mismatch");
    os << "n_th,F_toy\n";
    for (std::size_t k = 0; k < n_ths.size(); ++k)
        os << format_double(n_ths[k]) << ',' << format_double(F[k]) << "\n";
}

void write_toy_trace_csv(std::ostream& os, const std::vector<double>& ts,
                         const std::vector<double>& p0, const std::vector<double>& p1) {
    if (ts.size() != p0.size() || ts.size() != p1.size())
        throw std::invalid_argument("write_toy_trace_csv: length mismatch");
    os << "t,prob_gg0,prob_ee0\n";
    for (std::size_t k = 0; k < ts.size(); ++k)
        os << format_double(ts[k]) << ',' << format_double(p0[k]) << ','
           << format_double(p1[k]) << "\n";
}

}  // namespace msgate
