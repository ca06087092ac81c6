// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "radkg/diagnostics.hpp"
#include "radkg/harness.hpp"
#include "radkg/stability.hpp"
#include "radkg/stepper.hpp"

using namespace radkg;

namespace {

using Grid5 = std::vector<std::array<double, 5>>;

// Published values. Rows: n = 20..100 (tables 1, 3) or
// zero, u3, u5, u7, u9, sinh5 (tables 2, 4).
const Grid5 kTable1 = {{{.0028, .0142, .0283, .1395, .2693}},
                       {{.0103, .0509, .1006, .4491, .7706}},
                       {{.0167, .0821, .1611, .6579, .9573}},
                       {{.0192, .0942, .1836, .6954, .9387}},
                       {{.0200, .0977, .1896, .6994, .9308}}};

const Grid5 kTable2 = {{{.0098, .0478, .0923, .3642, .5631}},
                       {{.0097, .0477, .0929, .3528, .5554}},
                       {{.0137, .0665, .1287, .4024, .6418}},
                       {{.0171, .0833, .1618, .5068, .7819}},
                       {{.0204, .0999, .1728, .5736, .8488}},
                       {{.0263, .1377, .2518, .6284, .8813}}};

const Grid5 kTable4 = {{{.0003, .0027, .0242, .0859, .1326}},
                       {{.0003, .0032, .0289, .1040, .1621}},
                       {{.0011, .0105, .0948, .3374, .5043}},
                       {{.0023, .0224, .1825, .5663, .7327}},
                       {{.0041, .0397, .3133, .7318, .9256}},
                       {{.0063, .0577, .4717, .9403, 1.1007}}};

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::printf("[%s] AC%02d %s -- %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

PhysicsParams params(double beta, double gamma, double m, Nonlinearity nl) {
    PhysicsParams p;
    p.beta = beta;
    p.gamma = gamma;
    p.m = m;
    p.nonlinearity = std::move(nl);
    return p;
}

// Computed rows of a table, skipping the n = 0 row for step tables.
std::vector<std::vector<double>> body(const TableResult& t) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        if (t.spec.rows_are_steps() && t.spec.steps[i] == 0) continue;
        out.push_back(t.cells[i]);
    }
    return out;
}

std::string worst_cell(const std::vector<std::vector<double>>& got, const Grid5& want, const TableResult& t,
                       double& worst) {
    worst = 0.0;
    std::string where;
    for (std::size_t i = 0; i < want.size(); ++i)
        for (std::size_t k = 0; k < 5; ++k) {
            const double e = std::abs(got[i][k] - want[i][k]);
            if (e > worst) {
                worst = e;
                where = "row " + std::to_string(i) + " col " + std::to_string(k) + fmt(" (%.4f vs %.4f)", got[i][k], want[i][k]);
            }
        }
    (void)t;
    return where;
}

void criterion_tables_v() {
    const RunOptions opts;
    const auto t1 = reproduce_table(table_spec("table1"), opts);
    const auto g1 = body(t1);
    double worst;
    const auto where = worst_cell(g1, kTable1, t1, worst);
    bool mono = true;
    for (const auto& row : g1)
        for (std::size_t k = 1; k < row.size(); ++k) mono = mono && row[k] > row[k - 1];
    report(1, "table1 within 0.02, increasing in gamma", worst <= 0.02 && mono,
           "max |err| " + fmt("%.4f", worst) + " at " + where + (mono ? "" : "; not monotone"));

    const auto t2 = reproduce_table(table_spec("table2"), opts);
    const auto g2 = body(t2);
    int bad = 0;
    std::string list;
    for (std::size_t i = 0; i < kTable2.size(); ++i)
        for (std::size_t k = 0; k < 5; ++k)
            if (std::abs(g2[i][k] - kTable2[i][k]) > 0.03) {
                ++bad;
                list += " [" + t2.row_labels[i] + fmt(" col %g: %.4f vs %.4f]", k, g2[i][k], kTable2[i][k]);
            }
    bool dominance = true;
    for (const auto& row : g2) dominance = dominance && row[4] > row[0];
    report(2, "table2 within 0.03, gamma=10 column above gamma=0.1", bad == 0 && dominance,
           std::to_string(bad) + " cells out of tolerance" + list);
}

void criterion_tables_w() {
    const RunOptions opts;
    const auto t4 = reproduce_table(table_spec("table4"), opts);
    const auto g4 = body(t4);
    const auto& betas = t4.spec.values;
    int bad = 0;
    bool mono = true;
    std::string list;
    for (std::size_t i = 0; i < kTable4.size(); ++i) {
        for (std::size_t k = 0; k < 5; ++k) {
            const double got = g4[i][k], want = kTable4[i][k];
            const bool ok = betas[k] <= 1e-4 ? std::abs(got - want) <= 0.05 : std::abs(got - want) <= 0.25 * want;
            if (!ok) {
                ++bad;
                list += " [" + t4.row_labels[i] + fmt(" col %g: %.4f vs %.4f]", k, got, want);
            }
            if (k > 0) mono = mono && got > g4[i][k - 1];
        }
    }
    report(3, "table4 within 0.05 abs / 25% rel, increasing in beta", bad == 0 && mono,
           std::to_string(bad) + " cells out of tolerance" + list + (mono ? "" : "; not monotone"));

    const auto t3 = reproduce_table(table_spec("table3"), opts);
    bool inc = true;
    double first = 0.0;
    for (std::size_t i = 0; i < t3.cells.size(); ++i) {
        const int n = t3.spec.steps[i];
        if (n == 20) first = t3.cells[i][0];
        if (n == 20 || n == 40)
            for (std::size_t k = 1; k < t3.cells[i].size(); ++k) inc = inc && t3.cells[i][k] > t3.cells[i][k - 1];
    }
    report(4, "table3 increasing in beta at n=20,40; delta(1e-6, n=20) <= 0.002", inc && first <= 0.002,
           fmt("delta(1e-6, 20) = %.5f", first) + (inc ? "" : "; not monotone"));
}

void criterion_conservation() {
    double worst = 0.0;
    for (int p : {3, 7})
        for (auto ic : {InitialPreset::A, InitialPreset::B}) {
            const auto t = run(GridSpec{}, params(0, 0, 1, Nonlinearity::power(p)), ic, NewtonConfig{1e-12, 20},
                               DivergencePolicy::Mark);
            const auto e = energy_series(t);
            for (double v : e.values) worst = std::max(worst, std::abs(v - e.values[0]) / e.values[0]);
        }
    report(5, "undamped energy drift <= 1e-6 (p = 3, 7)", worst <= 1e-6, fmt("max relative drift %.3e", worst));
}

void criterion_dissipation() {
    bool nonincreasing = true;
    std::map<std::pair<std::string, std::string>, double> drop;  // (nonlinearity, kind) -> relative drop
    for (const std::string group : {"fig7-external", "fig7-internal"}) {
        for (const auto& sc : lookup(group)) {
            const auto res = execute(sc, RunOptions{});
            const auto& e = res.energy.values;
            for (std::size_t n = 1; n < e.size(); ++n) nonincreasing = nonincreasing && e[n] <= e[n - 1] + 1e-8 * e[0];
            const double d = (e.front() - e.back()) / e.front();
            if (sc.gamma == 10.0) drop[{sc.nonlinearity.name(), "ext"}] = d;
            if (sc.beta == 5e-3) drop[{sc.nonlinearity.name(), "int"}] = d;
        }
    }
    bool stronger = true;
    std::string detail;
    for (const std::string nl : {"u3", "u5", "u7"}) {
        const double di = drop[{nl, "int"}], de = drop[{nl, "ext"}];
        stronger = stronger && di > de;
        detail += " " + nl + fmt(": beta=5e-3 %.3f vs gamma=10 %.3f;", di, de);
    }
    report(6, "energy non-increasing; beta=5e-3 dissipates more than gamma=10", nonincreasing && stronger,
           (nonincreasing ? "monotone;" : "NOT monotone;") + detail);
}

void criterion_rate_identity() {
    const RunOptions opts;
    double worst = 0.0;
    int checked = 0;
    for (const auto& sc : catalog()) {
        const auto res = execute(sc, opts);
        const auto& e = res.energy;
        const double scale = std::max(1.0, e.values[0]);
        for (std::size_t n = 1; n < e.values.size(); ++n) {
            if (!res.trajectory.stats[n].converged) continue;
            worst = std::max(worst, std::abs(e.rate_lhs[n] - e.rate_rhs[n]) / scale);
            ++checked;
        }
    }
    const double bound = 10.0 * opts.newton.tol;
    report(7, "discrete energy balance on every converged catalog step", worst <= bound,
           fmt("%g steps, max |lhs - rhs|/scale %.3e (bound %.1e)", checked, worst, bound));
}

void criterion_convergence() {
    const auto rows = convergence_study(4);
    const double o2 = rows[2].order, o3 = rows[3].order;
    const bool ok = o2 >= 1.8 && o2 <= 2.2 && o3 >= 1.8 && o3 <= 2.2;
    report(8, "second-order convergence on the linear solution", ok,
           fmt("errors %.3e .. %.3e", rows[0].error, rows[3].error) + fmt(", finest orders %.3f %.3f", o2, o3));
}

void criterion_stability() {
    const auto rep = necessary_condition(0.002, 0.002, params(0, 0, 1, Nonlinearity::zero()));
    bool ok = rep.lhs == 1.0 && std::abs(rep.rhs - 1.000001) <= 1e-12 && rep.satisfied;
    const auto edge = necessary_condition(0.002, 0.002, params(0, 0, 0, Nonlinearity::zero()));
    ok = ok && edge.lhs == 1.0 && edge.rhs == 1.0 && !edge.satisfied;
    const auto half = necessary_condition(0.001, 0.002, params(0, 0, 0, Nonlinearity::zero()));
    ok = ok && half.lhs == 0.25 && half.satisfied;
    const auto [lp, lm] = amplification_eigenvalues(std::numbers::pi, 1.0, 1.0, params(0, 0, 0, Nonlinearity::zero()));
    ok = ok && std::abs(lp + 1.0) <= 1e-7 && std::abs(lm + 1.0) <= 1e-7;
    int agree = 0, total = 0;
    for (double R : {0.5, 0.9, 1.1, 2.0})
        {
            const auto p = params(0, 0, 0, Nonlinearity::zero());
            const double dr = 0.002, dt = R * dr;
            const auto r = necessary_condition(dt, dr, p);
            const double rho = spectral_radius_scan(dt, dr, p);
            ++total;
            if (r.satisfied == (rho <= 1.0 + 1e-12)) ++agree;
        }
    report(9, "stability examples and predicate/scan agreement", ok && agree == total,
           fmt("rhs %.7f; agreement %g/%g", rep.rhs, agree, total));
}

void criterion_oracles() {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> size(1, 80);
    std::uniform_real_distribution<double> u(-1, 1);
    double crout_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto sys = oracle::random_dominant_system(size(rng), rng);
        std::vector<double> b(sys.size());
        for (auto& x : b) x = u(rng);
        crout_err = std::max(crout_err, oracle::max_abs_diff(crout_solve(sys, b), oracle::dense_solve(oracle::to_dense(sys), b)));
    }
    const GridSpec g{0.4, 0.1, 20, 10};
    double jac_err = 0.0;
    for (const auto& name : Nonlinearity::catalog_names()) {
        const auto p = params(1e-4, 1, 1, Nonlinearity::from_name(name));
        for (int k = 0; k < 50; ++k) {
            const auto c = oracle::random_field(g, rng), vn = oracle::random_field(g, rng), vm = oracle::random_field(g, rng);
            const auto J = jacobian(c, vm, g, p);
            for (int j = 1; j < g.M; ++j) {
                const double h = 1e-6 * std::max(1.0, std::abs(c[j]));
                auto cp = c, cm = c;
                cp[j] += h;
                cm[j] -= h;
                const auto Fp = residual(cp, vn, vm, g, p), Fm = residual(cm, vn, vm, g, p);
                const double fd = (Fp[j - 1] - Fm[j - 1]) / (2 * h);
                jac_err = std::max(jac_err, std::abs(J.main[j - 1] - fd) / std::abs(J.main[j - 1]));
            }
        }
    }
    double bump_err = 0.0;
    for (double r : {0.03, 0.06, 0.09, 0.13, 0.17}) {
        const double fd = oracle::central_difference(bump_h, r, 1e-7);
        bump_err = std::max(bump_err, std::abs(bump_h_prime(r) - fd) / std::abs(fd));
    }
    const bool ok = crout_err <= 1e-10 && jac_err <= 1e-4 && bump_err <= 1e-5 &&
                    std::abs(bump_h(0.05) - 1.6691188976825031e-14) <= 1e-12 * 1.67e-14;
    report(10, "Crout, Jacobian and bump derivative oracles", ok,
           fmt("crout %.2e, jacobian rel %.2e, h' rel %.2e", crout_err, jac_err, bump_err));
}

void criterion_invariants() {
    const InitialData zero(InitialData::Custom{[](double) { return 0.0; }, [](double) { return 0.0; }, "zero"});
    bool zeros = true, pinned = true;
    for (const auto& sc : catalog()) {
        const auto t = run(sc.grid, sc.params(), zero, NewtonConfig{});
        for (const auto& lv : t.levels)
            for (double v : lv) zeros = zeros && v == 0.0;
        const auto live = run(sc.grid, sc.params(), sc.ic, NewtonConfig{}, DivergencePolicy::Mark);
        for (const auto& lv : live.levels) pinned = pinned && lv.front() == 0.0 && lv.back() == 0.0;
    }
    const GridSpec g{0.4, 0.1, 100, 50};
    const auto p = params(0, 0, 1, Nonlinearity::zero());
    const NewtonConfig cfg{1e-9, 5};
    const auto t = run(g, p, InitialPreset::C, cfg);
    RadialField next = t.levels[g.N - 1], cur = t.levels[g.N];
    for (int n = g.N - 1; n >= 1; --n) {
        auto prev = newton_solve_step(next, cur, g, p, cfg).level;
        cur = std::move(next);
        next = std::move(prev);
    }
    const double rev = oracle::max_abs_diff(next, t.levels[0]);
    report(11, "zero data stays zero, boundaries pinned, reversible", zeros && pinned && rev <= 1e-8,
           std::string(zeros ? "zero ok" : "zero FAILED") + (pinned ? ", pinned ok" : ", pinning FAILED") +
               fmt(", reversal error %.2e", rev));
}

void criterion_decay() {
    const auto t = run(GridSpec{}, params(0, 10, 1, Nonlinearity::power(3)), InitialPreset::B, NewtonConfig{});
    double peak = 0.0;
    for (const auto& lv : t.levels) peak = std::max(peak, amplitude(lv, t.grid));
    const double last = amplitude(t.levels.back(), t.grid);
    report(12, "presetB, p=3, gamma=10: final amplitude below 20% of peak", last < 0.2 * peak,
           fmt("final %.4f, peak %.4f, ratio %.3f", last, peak, last / peak));
}

}  // namespace

int main() {
    criterion_tables_v();
    criterion_tables_w();
    criterion_conservation();
    criterion_dissipation();
    criterion_rate_identity();
    criterion_convergence();
    criterion_stability();
    criterion_oracles();
    criterion_invariants();
    criterion_decay();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
