#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "msgate/csv.hpp"

using namespace msgate;

namespace {

Trajectory tiny_trajectory(std::vector<int> amp_indices) {
    Trajectory t;
    t.phonon_dim = 2;
    t.times = {0.0, 0.5};
    t.probs = {{1.0, 0.0, 0.0, 0.0}, {0.75, 0.0, 0.0, 0.25}};
    t.norms = {1.0, 1.0};
    t.amp_indices = std::move(amp_indices);
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        std::vector<Complex> row;
        for (std::size_t j = 0; j < t.amp_indices.size(); ++j)
            row.push_back(Complex(0.1 * (k + 1), -0.2 * double(j)));
        t.amplitudes.push_back(row);
    }
    return t;
}

std::string render(const Trajectory& t) {
    std::ostringstream os;
    write_trajectory_csv(os, t);
    return os.str();
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("doubles render with 17 significant digits") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(14790.7) == "14790.700000000001");
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("trajectory header grows amplitude columns only for the gate pair") {
    // (g,g,0) and (e,e,0) at N=2 are indices 0 and 6
    const std::string with = render(tiny_trajectory({0, 6}));
    CHECK(with.rfind("t,prob_gg,prob_ge,prob_eg,prob_ee,norm,re_cgg,im_cgg,re_cee,im_cee\n",
                     0) == 0);

    const std::string without = render(tiny_trajectory({0}));
    CHECK(without.rfind("t,prob_gg,prob_ge,prob_eg,prob_ee,norm\n", 0) == 0);

    const std::string wrong_pair = render(tiny_trajectory({0, 7}));
    CHECK(wrong_pair.rfind("t,prob_gg,prob_ge,prob_eg,prob_ee,norm\n", 0) == 0);
}

TEST_CASE("trajectory rows are complete and deterministic") {
    const Trajectory t = tiny_trajectory({0, 6});
    const std::string a = render(t), b = render(t);
    CHECK(a == b);

    std::istringstream is(a);
    std::string line;
    int rows = 0, commas_expected = 9;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == commas_expected);
    }
    CHECK(rows == 2);
}

TEST_CASE("sweep table format") {
    std::ostringstream os;
    write_sweep_csv(os, {{0.01, 100.0, 101.0, 90.0}, {0.02, 200.0, 201.0, 180.0}});
    const std::string s = os.str();
    CHECK(s.rfind("param_value,t0_numeric,t0_closed,t_ms\n", 0) == 0);
    CHECK(s.find("0.01,100,101,90\n") != std::string::npos);
    CHECK(s.find("0.02,200,201,180\n") != std::string::npos);
}

TEST_CASE("fidelity table format") {
    std::ostringstream os;
    write_fidelity_csv(os, {4, 6}, {0.0, 0.5}, {{0.97, 0.96}, {0.971, 0.961}});
    const std::string s = os.str();
    CHECK(s.rfind("n_th,F_dim4,F_dim6\n", 0) == 0);
    CHECK(s.find("0,0.96999999999999997,0.97099999999999997\n") != std::string::npos);

    CHECK_THROWS_AS(write_fidelity_csv(os, {4, 6}, {0.0}, {{0.97}}), std::invalid_argument);
    CHECK_THROWS_AS(write_fidelity_csv(os, {4}, {0.0, 0.5}, {{0.97}}), std::invalid_argument);
}

TEST_CASE("toy gate table formats") {
    std::ostringstream os;
    write_toy_fidelity_csv(os, {0.0, 0.25}, {1.0, 0.8});
    CHECK(os.str() == "n_th,F_toy\n0,1\n0.25,0.80000000000000004\n");

    std::ostringstream os2;
    write_toy_trace_csv(os2, {0.0, 1.0}, {1.0, 0.5}, {0.0, 0.5});
    CHECK(os2.str() == "t,prob_gg0,prob_ee0\n0,1,0\n1,0.5,0.5\n");

    std::ostringstream os3;
    CHECK_THROWS_AS(write_toy_fidelity_csv(os3, {0.0}, {1.0, 0.8}), std::invalid_argument);
    CHECK_THROWS_AS(write_toy_trace_csv(os3, {0.0}, {1.0, 0.5}, {0.0}),
                    std::invalid_argument);
}

}  // TEST_SUITE
