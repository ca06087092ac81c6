#include "radkg/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace radkg {

namespace {

bool near_equal(double vplus, double vminus) {
    return std::abs(vplus - vminus) < kQuotientThreshold * (1.0 + std::abs(vplus) + std::abs(vminus));
}

// Sum_{k=0}^{p} x^{p-k} b^k, which equals (x^{p+1} - b^{p+1})/(x - b)
// without the cancellation, together with its x-derivative (Horner).
struct DividedDifference {
    double value;
    double dx;
};

DividedDifference power_divided_difference(double x, double b, int p) {
    double acc = 1.0;
    double d = 0.0;
    double bk = 1.0;
    for (int k = 1; k <= p; ++k) {
        bk *= b;
        d = d * x + acc;
        acc = acc * x + bk;
    }
    return {acc, d};
}

void check_radius(double r) {
    if (!(r > 0.0)) throw std::domain_error("sv_quotient: radius must be positive");
}

void check_field(const RadialField& f, const GridSpec& grid, const char* what) {
    if (f.size() != static_cast<std::size_t>(grid.M + 1)) {
        throw std::invalid_argument(std::string(what) + ": field length does not match grid");
    }
}

}  // namespace

double sv_quotient(const Nonlinearity& nl, double vplus, double vminus, double r) {
    check_radius(r);
    if (nl.is_power()) {
        const int p = nl.power_exponent();
        const double prefactor = std::pow(r, 1 - p);
        if (near_equal(vplus, vminus)) return prefactor * nl.Gp(0.5 * (vplus + vminus));
        return prefactor * power_divided_difference(vplus, vminus, p).value / (p + 1);
    }
    if (near_equal(vplus, vminus)) return r * nl.Gp(0.5 * (vplus + vminus) / r);
    return r * r * (nl.G(vplus / r) - nl.G(vminus / r)) / (vplus - vminus);
}

double sv_quotient_dplus(const Nonlinearity& nl, double vplus, double vminus, double r) {
    check_radius(r);
    if (nl.is_power()) {
        const int p = nl.power_exponent();
        const double prefactor = std::pow(r, 1 - p);
        if (near_equal(vplus, vminus)) return prefactor * 0.5 * nl.Gpp(0.5 * (vplus + vminus));
        return prefactor * power_divided_difference(vplus, vminus, p).dx / (p + 1);
    }
    if (near_equal(vplus, vminus)) return 0.5 * nl.Gpp(0.5 * (vplus + vminus) / r);
    const double d = vplus - vminus;
    const double dG = nl.G(vplus / r) - nl.G(vminus / r);
    return (r * nl.Gp(vplus / r) * d - r * r * dG) / (d * d);
}

std::vector<double> residual(const RadialField& cand, const RadialField& vn, const RadialField& vnm1,
                             const GridSpec& grid, const PhysicsParams& params) {
    check_field(cand, grid, "residual");
    check_field(vn, grid, "residual");
    check_field(vnm1, grid, "residual");
    const double dt = grid.dt();
    const double dr = grid.dr();
    const double dt2 = dt * dt;
    const double dr2 = dr * dr;
    const double m2 = params.m * params.m;
    const auto& nl = params.nonlinearity;

    std::vector<double> F(grid.M - 1);
    for (int j = 1; j < grid.M; ++j) {
        const double lap_n = vn[j + 1] - 2.0 * vn[j] + vn[j - 1];
        const double lap_p = cand[j + 1] - 2.0 * cand[j] + cand[j - 1];
        const double lap_m = vnm1[j + 1] - 2.0 * vnm1[j] + vnm1[j - 1];
        F[j - 1] = (cand[j] - 2.0 * vn[j] + vnm1[j]) / dt2 - lap_n / dr2 +
                   params.gamma * (cand[j] - vnm1[j]) / (2.0 * dt) -
                   params.beta * (lap_p - lap_m) / (2.0 * dt * dr2) +
                   0.5 * m2 * (cand[j] + vnm1[j]) + sv_quotient(nl, cand[j], vnm1[j], grid.r(j));
    }
    return F;
}

TridiagonalSystem jacobian(const RadialField& cand, const RadialField& vnm1, const GridSpec& grid,
                           const PhysicsParams& params) {
    check_field(cand, grid, "jacobian");
    check_field(vnm1, grid, "jacobian");
    const double dt = grid.dt();
    const double dr2 = grid.dr() * grid.dr();
    const double base = 1.0 / (dt * dt) + params.gamma / (2.0 * dt) + params.beta / (dt * dr2) +
                        0.5 * params.m * params.m;
    const double off = -params.beta / (2.0 * dt * dr2);

    TridiagonalSystem J(grid.M - 1);
    for (int j = 1; j < grid.M; ++j) {
        J.main[j - 1] = base + sv_quotient_dplus(params.nonlinearity, cand[j], vnm1[j], grid.r(j));
    }
    std::fill(J.sub.begin(), J.sub.end(), off);
    std::fill(J.super.begin(), J.super.end(), off);
    return J;
}

double sup_norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) {
        if (std::isnan(v)) return v;
        s = std::max(s, std::abs(v));
    }
    return s;
}

StepResult newton_solve_step(const RadialField& vn, const RadialField& vnm1, const GridSpec& grid,
                             const PhysicsParams& params, const NewtonConfig& cfg) {
    cfg.validate();
    StepResult out{vn, {}};
    auto& cand = out.level;
    cand.front() = 0.0;
    cand.back() = 0.0;

    auto F = residual(cand, vn, vnm1, grid, params);
    double res = sup_norm(F);
    int it = 0;
    RadialField trial(cand.size(), 0.0);
    while (res > cfg.tol && it < cfg.max_iter) {
        const auto delta = crout_solve(jacobian(cand, vnm1, grid, params), F);
        ++it;
        // Full Newton step unless it fails to reduce the residual; then halve.
        bool accepted = false;
        double lambda = 1.0;
        for (int k = 0; k <= kMaxBacktracks; ++k, lambda *= 0.5) {
            for (int j = 1; j < grid.M; ++j) trial[j] = cand[j] - lambda * delta[j - 1];
            auto Ftrial = residual(trial, vn, vnm1, grid, params);
            const double rtrial = sup_norm(Ftrial);
            if (std::isfinite(rtrial) && (k == 0 ? rtrial < res : rtrial <= (1.0 - 1e-4 * lambda) * res)) {
                cand.swap(trial);
                F = std::move(Ftrial);
                res = rtrial;
                accepted = true;
                break;
            }
        }
        // No descent left: the residual sits at its rounding floor (or Newton is stuck).
        if (!accepted) break;
    }
    out.stats = {it, res, res <= cfg.tol};
    return out;
}

RadialField first_step(const RadialField& v0, const RadialField& vt0, const GridSpec& grid,
                       const PhysicsParams& params) {
    check_field(v0, grid, "first_step");
    check_field(vt0, grid, "first_step");
    const double dt = grid.dt();
    const double dr2 = grid.dr() * grid.dr();
    const double m2 = params.m * params.m;

    RadialField v1(grid.M + 1, 0.0);
    for (int j = 1; j < grid.M; ++j) {
        const double r = grid.r(j);
        const double lap0 = (v0[j + 1] - 2.0 * v0[j] + v0[j - 1]) / dr2;
        const double lapt = (vt0[j + 1] - 2.0 * vt0[j] + vt0[j - 1]) / dr2;
        const double vtt = lap0 + params.beta * lapt - params.gamma * vt0[j] - m2 * v0[j] -
                           r * params.nonlinearity.Gp(v0[j] / r);
        v1[j] = v0[j] + dt * vt0[j] + 0.5 * dt * dt * vtt;
    }
    return v1;
}

bool Trajectory::all_converged() const {
    return std::all_of(stats.begin(), stats.end(), [](const StepStats& s) { return s.converged; });
}

int Trajectory::max_newton_iterations() const {
    int k = 0;
    for (const auto& s : stats) k = std::max(k, s.newton_iterations);
    return k;
}

Trajectory run(const GridSpec& grid, const PhysicsParams& params, const InitialData& ic,
               const NewtonConfig& cfg, DivergencePolicy policy) {
    grid.validate();
    params.validate();
    cfg.validate();

    Trajectory traj{grid, params, necessary_condition(grid.dt(), grid.dr(), params), {}, {}};
    traj.levels.reserve(grid.N + 1);
    traj.stats.reserve(grid.N);

    auto init = sample_initial_levels(grid, ic);
    init.v0.back() = 0.0;
    init.vt0.back() = 0.0;
    traj.levels.push_back(init.v0);
    traj.levels.push_back(first_step(init.v0, init.vt0, grid, params));
    // The Taylor start has no residual; it only fails by overflowing.
    const double start = sup_norm(traj.levels[1]);
    const bool start_ok = std::isfinite(start);
    traj.stats.push_back({0, start_ok ? 0.0 : start, start_ok});
    if (!start_ok && policy == DivergencePolicy::Abort) throw NewtonDivergence(1, traj.stats.back());

    for (int n = 1; n < grid.N; ++n) {
        auto step = newton_solve_step(traj.levels[n], traj.levels[n - 1], grid, params, cfg);
        if (!step.stats.converged && policy == DivergencePolicy::Abort) {
            throw NewtonDivergence(n + 1, step.stats);
        }
        traj.levels.push_back(std::move(step.level));
        traj.stats.push_back(step.stats);
    }
    return traj;
}

}  // namespace radkg
