#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "radkg/linalg.hpp"
#include "radkg/model.hpp"
#include "radkg/stability.hpp"

namespace radkg {

// Below this relative gap between v^{n+1} and v^{n-1} the energy-conserving
// quotient is replaced by its midpoint limit.
inline constexpr double kQuotientThreshold = 1e-8;

// Step halvings tried when a full Newton step does not reduce the residual.
inline constexpr int kMaxBacktracks = 12;

struct StepStats {
    int newton_iterations = 0;
    double final_residual = 0.0;  // sup-norm
    bool converged = false;
};

enum class DivergencePolicy { Abort, Mark };

struct Trajectory {
    GridSpec grid;
    PhysicsParams params;
    StabilityReport stability;
    std::vector<RadialField> levels;  // n = 0..N
    std::vector<StepStats> stats;     // entry n describes how levels[n + 1] was obtained, n = 1..N-1
                                      // (entry 0 is the Taylor start, always converged)

    bool all_converged() const;
    int max_newton_iterations() const;
};

class NewtonDivergence : public std::runtime_error {
public:
    NewtonDivergence(int step, const StepStats& stats)
        : std::runtime_error("Newton iteration did not converge at time step " + std::to_string(step) +
                             " (residual " + std::to_string(stats.final_residual) + " after " +
                             std::to_string(stats.newton_iterations) + " iterations)"),
          step_(step),
          stats_(stats) {}

    int step() const { return step_; }
    const StepStats& stats() const { return stats_; }

private:
    int step_;
    StepStats stats_;
};

/// Discrete analogue of r*G'(v/r) built from two time levels:
/// r^{1-p}(G(v+) - G(v-))/(v+ - v-) for power laws, the w-form
/// r^2 (G(v+/r) - G(v-/r))/(v+ - v-) for general G.
double sv_quotient(const Nonlinearity& nl, double vplus, double vminus, double r);

/// Partial derivative of sv_quotient with respect to vplus.
double sv_quotient_dplus(const Nonlinearity& nl, double vplus, double vminus, double r);

/// Scheme residual at the interior nodes j = 1..M-1 (entry j-1) with
/// v^{n+1} := cand.
std::vector<double> residual(const RadialField& cand, const RadialField& vn, const RadialField& vnm1,
                             const GridSpec& grid, const PhysicsParams& params);

/// Exact Jacobian of residual() with respect to the interior of cand.
TridiagonalSystem jacobian(const RadialField& cand, const RadialField& vnm1, const GridSpec& grid,
                           const PhysicsParams& params);

struct StepResult {
    RadialField level;
    StepStats stats;
};

/// Newton iteration for v^{n+1}, warm-started from vn, on the residual
/// sup-norm. A full step is taken whenever it lowers the residual; otherwise
/// the step is halved (Armijo test) up to kMaxBacktracks times. Iteration
/// stops early if no halving lowers the residual.
StepResult newton_solve_step(const RadialField& vn, const RadialField& vnm1, const GridSpec& grid,
                             const PhysicsParams& params, const NewtonConfig& cfg);

/// Second-order Taylor start for v^1 using the PDE for v_tt at t = 0.
RadialField first_step(const RadialField& v0, const RadialField& vt0, const GridSpec& grid,
                       const PhysicsParams& params);

/// Full time march. Under DivergencePolicy::Abort a non-converged step throws
/// NewtonDivergence; under Mark it is recorded in the stats and kept.
Trajectory run(const GridSpec& grid, const PhysicsParams& params, const InitialData& ic,
               const NewtonConfig& cfg, DivergencePolicy policy = DivergencePolicy::Abort);

/// max_i |x_i|; NaN if any entry is NaN.
double sup_norm(const std::vector<double>& x);

}  // namespace radkg
