#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "radkg/model.hpp"
#include "radkg/stepper.hpp"

namespace radkg {

/// Discrete energies of a trajectory. values[n] = E0^n couples levels n and
/// n+1 (n = 0..N-1) and is attached to t = (n + 1/2) dt. rate_lhs[n] is the
/// backward difference (E0^n - E0^{n-1})/dt and rate_rhs[n] the dissipation
/// sum over levels n-1, n, n+1; both are NaN at n = 0.
struct EnergySeries {
    std::vector<double> values;
    std::vector<double> rate_lhs;
    std::vector<double> rate_rhs;
};

class UndefinedMetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// E0^n from consecutive levels v^n, v^{n+1}.
double discrete_energy(const RadialField& vn, const RadialField& vnp1, const GridSpec& grid,
                       const PhysicsParams& params);

/// Right-hand side of the discrete energy balance:
/// -beta * sum(centered v_t * backward r-difference of centered v_t) / dr^2 * dr
/// -gamma * sum(centered v_t^2) * dr.
double discrete_energy_rate(const RadialField& vnm1, const RadialField& vn, const RadialField& vnp1,
                            const GridSpec& grid, const PhysicsParams& params);

EnergySeries energy_series(const Trajectory& traj);

/// sqrt(dr * sum u_j^2)
double l2_dx_norm(std::span<const double> u, double dr);

/// ||u_damped - u_ref|| / ||u_ref|| in the l2,dx norm. Throws
/// UndefinedMetricError if the reference has zero norm.
double relative_difference(std::span<const double> u_damped, std::span<const double> u_ref,
                           double dr = 1.0);

/// w_j = v_j / r_j for j >= 1; w_0 = (4 v_1 - v_2)/(2 dr), the one-sided
/// second-order estimate of dv/dr at the origin.
std::vector<double> recover_w(const RadialField& v, const GridSpec& grid);

/// max_j |w_j|
double amplitude(const RadialField& v, const GridSpec& grid);

/// Slack s_j = sqrt(2 E0^n)/r_j - |w_j^n| of the pointwise bound, j = 1..M
/// (entry j-1). Negative energies are clamped to zero.
std::vector<double> amplitude_bound_report(const RadialField& vn, const RadialField& vnp1,
                                           const GridSpec& grid, const PhysicsParams& params);

}  // namespace radkg
