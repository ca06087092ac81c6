#include "radkg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radkg {

namespace {

// Radial potential term r^{1-p} G(v) (power law) or r^2 G(v/r) (general).
double radial_potential(const Nonlinearity& nl, double v, double r) {
    if (nl.is_power()) return nl.G(v) * std::pow(r, 1 - nl.power_exponent());
    return r * r * nl.G(v / r);
}

}  // namespace

double discrete_energy(const RadialField& vn, const RadialField& vnp1, const GridSpec& grid,
                       const PhysicsParams& params) {
    const double dt = grid.dt();
    const double dr = grid.dr();
    const double m2 = params.m * params.m;

    double kinetic = 0.0;
    double gradient = 0.0;
    double mass = 0.0;
    double potential = 0.0;
    for (int j = 0; j < grid.M; ++j) {
        const double vdot = (vnp1[j] - vn[j]) / dt;
        kinetic += vdot * vdot;
        gradient += (vnp1[j + 1] - vnp1[j]) / dr * ((vn[j + 1] - vn[j]) / dr);
        mass += 0.5 * (vnp1[j] * vnp1[j] + vn[j] * vn[j]);
    }
    for (int j = 1; j < grid.M; ++j) {
        const double r = grid.r(j);
        potential += 0.5 * (radial_potential(params.nonlinearity, vnp1[j], r) +
                            radial_potential(params.nonlinearity, vn[j], r));
    }
    return dr * (0.5 * kinetic + 0.5 * gradient + 0.5 * m2 * mass + potential);
}

double discrete_energy_rate(const RadialField& vnm1, const RadialField& vn, const RadialField& vnp1,
                            const GridSpec& grid, const PhysicsParams& params) {
    (void)vn;
    const double dt = grid.dt();
    const double dr = grid.dr();
    double internal = 0.0;
    double external = 0.0;
    for (int j = 1; j < grid.M; ++j) {
        const double du = vnp1[j] - vnm1[j];
        const double du_left = vnp1[j - 1] - vnm1[j - 1];
        const double vdot = du / (2.0 * dt);
        internal += vdot * (du - du_left) / (dt * dr * dr);
        external += vdot * vdot;
    }
    return -params.beta * internal * dr - params.gamma * external * dr;
}

EnergySeries energy_series(const Trajectory& traj) {
    const auto& grid = traj.grid;
    const int N = static_cast<int>(traj.levels.size()) - 1;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EnergySeries es;
    es.values.resize(N);
    es.rate_lhs.assign(N, nan);
    es.rate_rhs.assign(N, nan);
    for (int n = 0; n < N; ++n) {
        es.values[n] = discrete_energy(traj.levels[n], traj.levels[n + 1], grid, traj.params);
    }
    for (int n = 1; n < N; ++n) {
        es.rate_lhs[n] = (es.values[n] - es.values[n - 1]) / grid.dt();
        es.rate_rhs[n] = discrete_energy_rate(traj.levels[n - 1], traj.levels[n], traj.levels[n + 1],
                                              grid, traj.params);
    }
    return es;
}

double l2_dx_norm(std::span<const double> u, double dr) {
    double s = 0.0;
    for (double x : u) s += x * x;
    return std::sqrt(dr * s);
}

double relative_difference(std::span<const double> u_damped, std::span<const double> u_ref, double dr) {
    if (u_damped.size() != u_ref.size()) throw std::invalid_argument("relative_difference: size mismatch");
    const double ref = l2_dx_norm(u_ref, dr);
    if (ref == 0.0) throw UndefinedMetricError("relative_difference: reference has zero norm");
    std::vector<double> diff(u_ref.size());
    std::transform(u_damped.begin(), u_damped.end(), u_ref.begin(), diff.begin(), std::minus<>());
    return l2_dx_norm(diff, dr) / ref;
}

std::vector<double> recover_w(const RadialField& v, const GridSpec& grid) {
    const double dr = grid.dr();
    std::vector<double> w(v.size(), 0.0);
    for (std::size_t j = 1; j < v.size(); ++j) w[j] = v[j] / (static_cast<double>(j) * dr);
    if (v.size() >= 3) w[0] = (4.0 * v[1] - v[2]) / (2.0 * dr);
    return w;
}

double amplitude(const RadialField& v, const GridSpec& grid) {
    double amp = 0.0;
    for (double x : recover_w(v, grid)) amp = std::max(amp, std::abs(x));
    return amp;
}

std::vector<double> amplitude_bound_report(const RadialField& vn, const RadialField& vnp1,
                                           const GridSpec& grid, const PhysicsParams& params) {
    const double bound = std::sqrt(2.0 * std::max(0.0, discrete_energy(vn, vnp1, grid, params)));
    std::vector<double> slack(grid.M);
    for (int j = 1; j <= grid.M; ++j) {
        slack[j - 1] = bound / grid.r(j) - std::abs(vn[j] / grid.r(j));
    }
    return slack;
}

}  // namespace radkg
