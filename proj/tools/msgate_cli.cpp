// Command-line front end: figure reproductions as CSV (optional SVG), plus a
// one-line period summary. See --help for commands and flags.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "msgate/msgate.hpp"
#include "svg.hpp"

namespace {

using namespace msgate;

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

struct Options {
    double omega = 0.1;
    double eta = 0.025;
    double nu = 5.0;
    double dnu = 0.025;
    int phonon_dim = 4;
    double dt = -1.0;     // <= 0: pi/(50 nu)
    double t_end = -1.0;  // <= 0: per-command default
    double n_th = -1.0;   // < 0: default n_th grid
    double alpha = 1.0;
    double kappa = std::sqrt(2.0) - 1.0;
    int jobs = default_jobs();
    std::string out;
    bool plot = false;
};

GateParams make_params(const Options& o) {
    return GateParams(o.omega, o.eta, o.nu, o.dnu, o.phonon_dim);
}

double pick_dt(const Options& o, double nu) {
    return o.dt > 0.0 ? o.dt : TimeGrid::default_dt(nu);
}

std::vector<double> nth_grid(const Options& o) {
    if (o.n_th >= 0.0) return {o.n_th};
    return {0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
    return v;
}

std::string out_path(const Options& o, const std::string& command) {
    return o.out.empty() ? command + ".csv" : o.out;
}

std::string svg_path(const std::string& csv) {
    const std::size_t dot = csv.rfind('.');
    return (dot == std::string::npos ? csv : csv.substr(0, dot)) + ".svg";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
    std::cout << "wrote " << path << "\n";
}

// Index-scheduled worker pool; results land in caller-owned slots, so the
// output order never depends on the number of workers.
template <class F>
void parallel_for(int jobs, std::size_t count, F&& f) {
    if (jobs < 1) jobs = 1;
    if (static_cast<std::size_t>(jobs) > count) jobs = static_cast<int>(count);
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

Trajectory run_gate_trajectory(const GateParams& p, double t_end, double dt, int n_start,
                               std::vector<int> amp_indices = {}, int stride = 16) {
    const HarmonicHamiltonian H = perturbative_harmonics(p, 2);
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, n_start, p.phonon_dim);
    TimeGrid grid;
    grid.t_end = t_end;
    grid.dt = dt;
    grid.sample_stride = stride;
    return schrodinger_evolve(H, psi0, grid, std::move(amp_indices));
}

double numeric_T0(const GateParams& p, double t_end, double dt, int n_start = 0) {
    return extract_period(run_gate_trajectory(p, t_end, dt, n_start), ProbChannel::ee).value;
}

PeriodEstimate phase_period_from(const GateParams& p, Level a, Level b, double t_end,
                                 double dt) {
    const int idx = basis_index(a, b, 0, p.phonon_dim);
    const HarmonicHamiltonian H = perturbative_harmonics(p, 2);
    StateVector psi0(ComplexVector::Zero(4 * p.phonon_dim), p.phonon_dim);
    psi0.amplitudes[idx] = 1.0;
    TimeGrid grid;
    grid.t_end = t_end;
    grid.dt = dt;
    grid.sample_stride = 8;
    const Trajectory traj = schrodinger_evolve(H, psi0, grid, {idx});
    std::vector<Complex> amps(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) amps[k] = traj.amplitudes[k][0];
    return extract_phase_period(traj.times, amps);
}

// ---- commands ----

int cmd_fig1(const Options& o) {
    const GateParams p = make_params(o);
    const double dt = pick_dt(o, p.nu);
    const double t_end = o.t_end > 0.0 ? o.t_end : 12000.0;
    const std::vector<int> amps = {basis_index(Level::g, Level::g, 0, p.phonon_dim),
                                   basis_index(Level::e, Level::e, 0, p.phonon_dim)};
    const Trajectory traj = run_gate_trajectory(p, t_end, dt, 0, amps);

    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    const std::string path = out_path(o, "fig1");
    write_file(path, csv.str());

    if (o.plot) {
        svgplot::Series gg{"prob_gg", traj.times, {}}, ee{"prob_ee", traj.times, {}};
        for (const auto& pr : traj.probs) {
            gg.y.push_back(pr[0]);
            ee.y.push_back(pr[3]);
        }
        svgplot::write_chart(svg_path(path), "two-ion populations", "t", {gg, ee});
        std::cout << "wrote " << svg_path(path) << "\n";
    }
    return 0;
}

int cmd_fig2(const Options& o, bool numeric_t0) {
    const GateParams p = make_params(o);
    const double dt = pick_dt(o, p.nu);
    const double T0 = numeric_t0
                          ? numeric_T0(p, o.t_end > 0.0 ? o.t_end : 12000.0, dt)
                          : closed_form_T0(p).value;
    const double t_gate = T0 / 4.0;

    const std::vector<int> dims = {4, 6, 8, 10};
    const std::vector<double> nths = nth_grid(o);
    std::vector<std::vector<double>> F(dims.size());
    parallel_for(o.jobs, dims.size(), [&](std::size_t j) {
        const std::vector<double> overlaps = channel_overlaps(p, dims[j], t_gate, dt);
        F[j].resize(nths.size());
        for (std::size_t k = 0; k < nths.size(); ++k) {
            const std::vector<double> w = phonon_weights(ThermalSpec(nths[k], dims[j]));
            double sum = 0.0;
            for (int n = 0; n < dims[j]; ++n) sum += w[n] * overlaps[n];
            F[j][k] = sum;
        }
    });

    std::ostringstream csv;
    write_fidelity_csv(csv, dims, nths, F);
    const std::string path = out_path(o, "fig2");
    write_file(path, csv.str());

    if (o.plot) {
        std::vector<svgplot::Series> series;
        for (std::size_t j = 0; j < dims.size(); ++j)
            series.push_back({"F_dim" + std::to_string(dims[j]), nths, F[j]});
        svgplot::write_chart(svg_path(path), "thermal gate fidelity", "n_th", series);
        std::cout << "wrote " << svg_path(path) << "\n";
    }
    return 0;
}

int run_param_sweep(const Options& o, const std::string& command, const std::string& param,
                    const std::vector<double>& values) {
    std::vector<SweepRow> rows(values.size());
    parallel_for(o.jobs, values.size(), [&](std::size_t i) {
        Options po = o;
        if (param == "omega")
            po.omega = values[i];
        else if (param == "eta")
            po.eta = values[i];
        else if (param == "nu")
            po.nu = values[i];
        else if (param == "dnu")
            po.dnu = values[i];
        const GateParams q = make_params(po);
        const double t0c = closed_form_T0(q).value;
        const double dt = pick_dt(po, q.nu);
        const double t_end = po.t_end > 0.0 ? po.t_end : 0.8 * t0c;
        rows[i] = {values[i], numeric_T0(q, t_end, dt), t0c, t_ms(q)};
    });

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    const std::string path = out_path(o, command);
    write_file(path, csv.str());

    if (o.plot) {
        svgplot::Series n{"t0_numeric", values, {}}, c{"t0_closed", values, {}},
            m{"t_ms", values, {}};
        for (const SweepRow& r : rows) {
            n.y.push_back(r.t0_numeric);
            c.y.push_back(r.t0_closed);
            m.y.push_back(r.t_ms);
        }
        svgplot::write_chart(svg_path(path), "gate period vs " + param, param, {n, c, m});
        std::cout << "wrote " << svg_path(path) << "\n";
    }
    return 0;
}

int cmd_fig3d(const Options& o) {
    const double tms = t_ms(make_params(o));
    std::vector<SweepRow> rows(6);
    parallel_for(o.jobs, rows.size(), [&](std::size_t i) {
        const int n = static_cast<int>(i);
        const GateParams q(o.omega, o.eta, o.nu, o.dnu, n + 3);
        const double dt = pick_dt(o, q.nu);
        const double t_end = o.t_end > 0.0 ? o.t_end : 13000.0;
        const double t0n =
            extract_period(run_gate_trajectory(q, t_end, dt, n), ProbChannel::ee).value;
        const double tp = n == 0 ? closed_form_T0(q).value : t_prime(q, n).value;
        rows[i] = {static_cast<double>(n), t0n, tp, tms};
    });

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    const std::string path = out_path(o, "fig3d");
    write_file(path, csv.str());

    if (o.plot) {
        std::vector<double> ns;
        svgplot::Series num{"T0(n) numeric", {}, {}}, pred{"T'(n) eigenvalue", {}, {}},
            ms{"T_MS", {}, {}};
        for (const SweepRow& r : rows) {
            num.x.push_back(r.param_value);
            num.y.push_back(r.t0_numeric);
            pred.x.push_back(r.param_value);
            pred.y.push_back(r.t0_closed);
            ms.x.push_back(r.param_value);
            ms.y.push_back(r.t_ms);
        }
        svgplot::write_chart(svg_path(path), "period vs initial phonon number", "n",
                             {num, pred, ms});
        std::cout << "wrote " << svg_path(path) << "\n";
    }
    return 0;
}

int cmd_fig4a(const Options& o) {
    const ToyParams tp(o.alpha, o.kappa);
    const double T0t = std::sqrt(2.0 + std::sqrt(2.0)) * M_PI / (2.0 * tp.alpha);
    const double t_end = o.t_end > 0.0 ? o.t_end : 4.0 * T0t;
    const int samples = 1001;
    std::vector<double> ts(samples), p0(samples), p1(samples);
    for (int k = 0; k < samples; ++k) {
        ts[k] = t_end * k / (samples - 1);
        const auto c = toy_closed_form(tp, ts[k]);
        p0[k] = std::norm(c[0]);
        p1[k] = std::norm(c[1]);
    }

    std::ostringstream csv;
    write_toy_trace_csv(csv, ts, p0, p1);
    const std::string path = out_path(o, "fig4a");
    write_file(path, csv.str());

    if (o.plot) {
        svgplot::write_chart(svg_path(path), "toy gate populations", "t",
                             {{"prob_gg0", ts, p0}, {"prob_ee0", ts, p1}});
        std::cout << "wrote " << svg_path(path) << "\n";
    }
    return 0;
}

int cmd_fig4b(const Options& o) {
    const ToyParams tp(o.alpha, o.kappa);
    const std::vector<double> nths = nth_grid(o);
    std::vector<double> F(nths.size());
    for (std::size_t k = 0; k < nths.size(); ++k)
        F[k] = toy_fidelity_thermal(tp, ThermalSpec(nths[k], o.phonon_dim));

    std::ostringstream csv;
    write_toy_fidelity_csv(csv, nths, F);
    const std::string path = out_path(o, "fig4b");
    write_file(path, csv.str());

    if (o.plot) {
        svgplot::write_chart(svg_path(path), "toy gate thermal fidelity", "n_th",
                             {{"F_toy", nths, F}});
        std::cout << "wrote " << svg_path(path) << "\n";
    }
    return 0;
}

int cmd_periods(const Options& o) {
    const GateParams p = make_params(o);
    const double dt = pick_dt(o, p.nu);
    const double t0n = numeric_T0(p, o.t_end > 0.0 ? o.t_end : 12000.0, dt);
    const double t0c = closed_form_T0(p).value;
    const PeriodEstimate ge = phase_period_from(p, Level::g, Level::e, 4000.0, dt);
    const PeriodEstimate eg = phase_period_from(p, Level::e, Level::g, 4000.0, dt);
    const ToyTimes tt = toy_times(o.kappa);
    const double toy0 = 0.5 * (tt.t0 + tt.t1) / o.alpha;
    const CzScales cz = cz_scales(p);

    char line[512];
    std::snprintf(line, sizeof line,
                  "T0_numeric=%.1f T0_closed=%.1f T_MS=%.2f T_ge=%+.2f T_eg=%+.2f "
                  "T_toy0=%.6f t_cz1=%g t_cz2_min=%g cz_shift=%g\n",
                  t0n, t0c, t_ms(p), ge.sign * ge.value, eg.sign * eg.value, toy0,
                  cz.t_cz1_scale, cz.t_cz2_lower_bound, cz.energy_shift);
    std::cout << line;
    if (!o.out.empty()) write_file(o.out, line);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"two-ion entangling-gate simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file with key = value lines")
        ->envname("MSGATE_CONFIG");

    app.add_option("--omega", o.omega, "Rabi frequency")->capture_default_str();
    app.add_option("--eta", o.eta, "Lamb-Dicke parameter")->capture_default_str();
    app.add_option("--nu", o.nu, "phonon frequency")->capture_default_str();
    app.add_option("--dnu", o.dnu, "detuning offset")->capture_default_str();
    app.add_option("--phonon-dim", o.phonon_dim, "Fock truncation")->capture_default_str();
    app.add_option("--dt", o.dt, "RK4 step (default pi/(50 nu))");
    app.add_option("--t-end", o.t_end, "integration end time (default per command)");
    app.add_option("--n-th", o.n_th, "single mean phonon number (default: built-in grid)");
    app.add_option("--alpha", o.alpha, "toy-gate coupling")->capture_default_str();
    app.add_option("--kappa", o.kappa, "toy-gate coupling ratio")->capture_default_str();
    app.add_option("--jobs", o.jobs, "worker threads for independent runs")
        ->capture_default_str();
    app.add_option("--out", o.out, "output file (default <command>.csv)");
    app.add_flag("--plot", o.plot, "also write an SVG chart next to the CSV");

    bool fig2_numeric_t0 = false;
    std::string sweep_param;
    double sweep_min = 0.0, sweep_max = 0.0;
    int sweep_points = 9;

    CLI::App* fig1 = app.add_subcommand("fig1", "population trajectory CSV");
    CLI::App* fig2 = app.add_subcommand("fig2", "thermal fidelity vs n_th, dims 4/6/8/10");
    fig2->add_flag("--numeric-t0", fig2_numeric_t0,
                   "gate time from the trajectory-extracted period instead of the closed form");
    CLI::App* fig3a = app.add_subcommand("fig3a", "period sweep over dnu");
    CLI::App* fig3b = app.add_subcommand("fig3b", "period sweep over nu");
    CLI::App* fig3c = app.add_subcommand("fig3c", "period sweep over omega");
    CLI::App* fig3d = app.add_subcommand("fig3d", "period vs initial phonon number n=0..5");
    CLI::App* fig4a = app.add_subcommand("fig4a", "toy-gate population trace");
    CLI::App* fig4b = app.add_subcommand("fig4b", "toy-gate thermal fidelity vs n_th");
    CLI::App* periods = app.add_subcommand("periods", "one-line period summary");
    CLI::App* sweep = app.add_subcommand("sweep", "custom parameter sweep");
    sweep->add_option("--param", sweep_param, "which parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"omega", "eta", "nu", "dnu"}));
    sweep->add_option("--min", sweep_min, "sweep start")->required();
    sweep->add_option("--max", sweep_max, "sweep end")->required();
    sweep->add_option("--points", sweep_points, "grid size")->capture_default_str();

    for (CLI::App* sub : {fig1, fig2, fig3a, fig3b, fig3c, fig3d, fig4a, fig4b, periods, sweep})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors exit 2 uniformly
    }

    try {
        if (periods->parsed() && o.plot) {
            std::cerr << "usage error: --plot has no meaning for 'periods'\n";
            return 2;
        }
        if (sweep->parsed()) {
            if (!(sweep_min < sweep_max) || sweep_points < 2) {
                std::cerr << "usage error: need --min < --max and --points >= 2\n";
                return 2;
            }
            if ((sweep_param == "omega" || sweep_param == "nu" || sweep_param == "dnu" ||
                 sweep_param == "eta") &&
                sweep_min <= 0.0) {
                std::cerr << "usage error: swept parameter must stay positive\n";
                return 2;
            }
            return run_param_sweep(o, "sweep", sweep_param,
                                   linspace(sweep_min, sweep_max, sweep_points));
        }
        if (fig1->parsed()) return cmd_fig1(o);
        if (fig2->parsed()) return cmd_fig2(o, fig2_numeric_t0);
        if (fig3a->parsed()) return run_param_sweep(o, "fig3a", "dnu", linspace(0.01, 0.05, 9));
        if (fig3b->parsed()) return run_param_sweep(o, "fig3b", "nu", linspace(3.0, 7.0, 9));
        if (fig3c->parsed()) return run_param_sweep(o, "fig3c", "omega", linspace(0.05, 0.2, 7));
        if (fig3d->parsed()) return cmd_fig3d(o);
        if (fig4a->parsed()) return cmd_fig4a(o);
        if (fig4b->parsed()) return cmd_fig4b(o);
        if (periods->parsed()) return cmd_periods(o);
        std::cerr << "usage error: no command given\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
