#pragma once

#include <random>

#include "msgate/core.hpp"

namespace msgate_test {

// Baseline parameter point used throughout: Omega=0.1, eta=0.025, nu=5,
// dnu=0.025, truncation 4 unless a test says otherwise.
inline msgate::GateParams base_params(int N = 4) {
    return msgate::GateParams(0.1, 0.025, 5.0, 0.025, N);
}

inline msgate::ComplexVector random_state(std::mt19937& rng, int dim) {
    std::normal_distribution<double> g;
    msgate::ComplexVector v(dim);
    for (int k = 0; k < dim; ++k) v[k] = msgate::Complex(g(rng), g(rng));
    v /= v.norm();
    return v;
}

}  // namespace msgate_test
