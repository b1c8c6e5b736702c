#pragma once

#include <stdexcept>
#include <string>

namespace msgate {

// Base class for all library-specific runtime failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// RK4 norm drift exceeded the hard guard (1e-4): step size too large.
struct IntegrationDivergedError : Error {
    using Error::Error;
};

// Closed-form period disagrees with the eigenvalue oracle beyond 1e-6
// relative: the principal-branch choice is wrong in this parameter region.
struct BranchError : Error {
    double closed_value;
    double eigen_value;
    BranchError(const std::string& msg, double closed, double eigen)
        : Error(msg), closed_value(closed), eigen_value(eigen) {}
};

// Trajectory has no usable interior extremum (too short, or channel flat).
struct NotPeriodicError : Error {
    using Error::Error;
};

// Amplitude left the single-excitation channel (|c| dropped below 0.9),
// so a phase-slope period is meaningless.
struct ChannelLeakageError : Error {
    using Error::Error;
};

// arccos argument outside [-1, 1]: the toy gate never reaches the target
// population for this kappa.
struct NoSolutionError : Error {
    using Error::Error;
};

// Numerical backend failure (eigensolver non-convergence and the like).
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace msgate
