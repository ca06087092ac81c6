#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "radkg/model.hpp"

namespace radkg {

/// Necessary condition (dt/dr)^2 < 1 + gamma*dt/4 + beta*dt/dr^2 + m^2*dt^2/4
/// obtained from the xi = pi Fourier mode of the linearized scheme.
struct StabilityReport {
    double R = 0.0;       // dt/dr
    double lhs = 0.0;     // R^2
    double rhs = 0.0;
    bool satisfied = false;
    double margin = 0.0;  // rhs - lhs
};

/// Fourier symbols k^(xi), h^(xi) of the two-level recurrence.
struct SymbolPair {
    double khat = 0.0;
    double hhat = 0.0;
};

class DegenerateSymbolError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr int kDefaultXiSamples = 1024;

StabilityReport necessary_condition(double dt, double dr, const PhysicsParams& params);

SymbolPair symbols(double xi, double dt, double dr, const PhysicsParams& params);

/// Roots of lambda^2 - (2q/k)lambda + h/k = 0 with q = 1 - 2R^2 sin^2(xi/2),
/// i.e. the eigenvalues (lambda+, lambda-) of the amplification matrix A(xi).
std::pair<std::complex<double>, std::complex<double>> amplification_eigenvalues(
    double xi, double dt, double dr, const PhysicsParams& params);

/// max over xi_k = k*pi/(n_xi - 1) of max(|lambda+|, |lambda-|).
double spectral_radius_scan(double dt, double dr, const PhysicsParams& params,
                            int n_xi = kDefaultXiSamples);

}  // namespace radkg
