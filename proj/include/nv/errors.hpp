#pragma once

#include <stdexcept>
#include <string>

namespace nv {

// Numerical-contract violations. Each names the surface that failed so the
// CLI can map them to exit codes (config -> 2, numerical -> 3).

struct InvalidSpectralPoint : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleAtOrigin : std::domain_error {
    using std::domain_error::domain_error;
};

struct NonFiniteSample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
    double residual;
    int iterations;
    NoConvergence(const std::string& what, double res, int iters)
        : std::runtime_error(what), residual(res), iterations(iters) {}
};

struct AmbiguousClassification : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EpsilonTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StationaryPointOnGridNode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooManyFailures : std::runtime_error {
    int failed;
    int total;
    TooManyFailures(const std::string& what, int nfail, int ntotal)
        : std::runtime_error(what), failed(nfail), total(ntotal) {}
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace nv
