#include "radkg/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace radkg {

StabilityReport necessary_condition(double dt, double dr, const PhysicsParams& params) {
    if (!(dt > 0.0) || !(dr > 0.0)) throw std::invalid_argument("stability: steps must be positive");
    StabilityReport rep;
    rep.R = dt / dr;
    rep.lhs = rep.R * rep.R;
    rep.rhs = 1.0 + params.gamma * dt / 4.0 + params.beta * dt / (dr * dr) +
              params.m * params.m * dt * dt / 4.0;
    rep.margin = rep.rhs - rep.lhs;
    rep.satisfied = rep.margin > 0.0;
    return rep;
}

SymbolPair symbols(double xi, double dt, double dr, const PhysicsParams& params) {
    const double s = std::sin(xi / 2.0);
    const double internal = 2.0 * params.beta * dt / (dr * dr) * s * s;
    const double external = params.gamma * dt / 2.0;
    const double mass = params.m * params.m * dt * dt / 2.0;
    return {1.0 + external + internal + mass, 1.0 - external - internal + mass};
}

std::pair<std::complex<double>, std::complex<double>> amplification_eigenvalues(
    double xi, double dt, double dr, const PhysicsParams& params) {
    const auto [khat, hhat] = symbols(xi, dt, dr, params);
    if (khat == 0.0) throw DegenerateSymbolError("amplification matrix: k^(xi) vanishes");
    const double R = dt / dr;
    const double s = std::sin(xi / 2.0);
    const double q = 1.0 - 2.0 * R * R * s * s;
    const std::complex<double> root = std::sqrt(std::complex<double>(q * q - hhat * khat, 0.0));
    return {(q + root) / khat, (q - root) / khat};
}

double spectral_radius_scan(double dt, double dr, const PhysicsParams& params, int n_xi) {
    if (n_xi < 2) throw std::invalid_argument("spectral_radius_scan: need at least two samples");
    double rho = 0.0;
    for (int k = 0; k < n_xi; ++k) {
        const double xi = k * std::numbers::pi / (n_xi - 1);
        const auto [lp, lm] = amplification_eigenvalues(xi, dt, dr, params);
        rho = std::max({rho, std::abs(lp), std::abs(lm)});
    }
    return rho;
}

}  // namespace radkg
