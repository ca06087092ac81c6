#include "radkg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace radkg {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt4(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

// Compact parameter label: 0.1, 5, 1e-06, 0.0005 ...
std::string label(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string file_stem(const std::string& name) {
    std::string s = name;
    for (char& c : s) {
        if (c == '/' || c == ' ' || c == ':') c = '_';
    }
    return s;
}

std::ofstream open_csv(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + file.string() + " for writing");
    return os;
}

const std::vector<std::string> kTableNonlinearities{"zero", "u3", "u5", "u7", "u9", "sinh5"};
const std::vector<double> kGammaColumns{0.1, 0.5, 1.0, 5.0, 10.0};
const std::vector<double> kBetaColumns{1e-6, 1e-5, 1e-4, 5e-4, 1e-3};
const std::vector<int> kTableSteps{0, 20, 40, 60, 80, 100};
const std::vector<int> kFigureSteps{0, 20, 40, 60, 80, 100};

struct CatalogBuilder {
    std::vector<Scenario> out;

    void add(const std::string& group, InitialPreset ic, const std::string& nl, double beta, double gamma,
             std::set<Output> outputs, std::vector<int> snapshots, const std::string& note) {
        Scenario sc;
        sc.group = group;
        sc.ic = InitialData(ic);
        sc.nonlinearity = Nonlinearity::from_name(nl);
        sc.beta = beta;
        sc.gamma = gamma;
        sc.outputs = std::move(outputs);
        sc.snapshot_steps = std::move(snapshots);
        sc.note = note;
        sc.name = group + "/" + sc.ic.name() + "/" + nl + "/beta=" + label(beta) + "/gamma=" + label(gamma);
        out.push_back(std::move(sc));
    }

    void sweep(const std::string& group, InitialPreset ic, const std::vector<std::string>& nls, Axis axis,
               std::vector<double> values, double other, const std::set<Output>& outputs,
               const std::vector<int>& snapshots, const std::string& note) {
        for (const auto& nl : nls) {
            for (double v : values) {
                const double beta = axis == Axis::Beta ? v : other;
                const double gamma = axis == Axis::Gamma ? v : other;
                add(group, ic, nl, beta, gamma, outputs, snapshots, note);
            }
        }
    }
};

std::vector<Scenario> build_catalog() {
    CatalogBuilder b;
    const std::set<Output> table_out{Output::Fields};
    const std::vector<int> last{100};

    auto with_zero = [](std::vector<double> v) {
        v.insert(v.begin(), 0.0);
        return v;
    };

    b.sweep("table1", InitialPreset::A, {"u7"}, Axis::Gamma, with_zero(kGammaColumns), 0.0, table_out,
            kTableSteps, "external damping, relative differences vs time step");
    b.sweep("table2", InitialPreset::B, kTableNonlinearities, Axis::Gamma, with_zero(kGammaColumns), 0.0,
            table_out, last, "external damping, relative differences at t = 0.2");
    b.sweep("table3", InitialPreset::A, {"u7"}, Axis::Beta, with_zero(kBetaColumns), 0.0, table_out, kTableSteps,
            "internal damping, relative differences vs time step (gamma = 0, setup of fig3)");
    b.sweep("table4", InitialPreset::B, kTableNonlinearities, Axis::Beta, with_zero(kBetaColumns), 0.0, table_out,
            last, "internal damping, relative differences at t = 0.2");

    const std::set<Output> fields{Output::Fields, Output::Amplitude};
    b.sweep("fig1", InitialPreset::A, {"u7"}, Axis::Gamma, {0.0, 5.0, 10.0}, 0.0, fields, kFigureSteps,
            "snapshots at t = 0, 0.04, ..., 0.2, beta = 0");
    b.sweep("fig2", InitialPreset::B, {"zero", "u3", "u5", "u7", "u9", "sin5"}, Axis::Gamma, {0.0, 5.0, 10.0}, 0.0,
            fields, last, "t = 0.2, beta = 0; sin5 as in the figure panel");
    // Caption values; the accompanying text quotes 0.001 and 0.003 instead.
    b.sweep("fig3", InitialPreset::A, {"u7"}, Axis::Beta, {0.0, 1e-4, 2e-4}, 0.0, fields, kFigureSteps,
            "snapshots, gamma = 0, beta from the figure caption");
    b.sweep("fig4", InitialPreset::B, {"u3", "u5", "u7"}, Axis::Beta, {0.0, 1e-4, 2e-4}, 0.0, fields, last,
            "t = 0.2, gamma = 0, left column");
    b.sweep("fig4", InitialPreset::C, {"u3", "u5", "u7"}, Axis::Beta, {0.0, 1e-4, 2e-4}, 0.0, fields, last,
            "t = 0.2, gamma = 0, right column");
    b.sweep("fig5", InitialPreset::B, kTableNonlinearities, Axis::Beta, {0.0, 5e-4, 5e-3}, 5.0, fields, last,
            "t = 0.2, gamma = 5");
    const std::set<Output> origin{Output::Origin, Output::Amplitude};
    b.sweep("fig6-external", InitialPreset::B, {"u3", "u5", "u7"}, Axis::Gamma, {0.0, 10.0, 20.0}, 0.0, origin, {},
            "origin trace, beta = 0");
    b.sweep("fig6-internal", InitialPreset::B, {"u3", "u5", "u7"}, Axis::Beta, {0.0, 1e-3, 2.5e-3, 5e-3}, 0.0,
            origin, {}, "origin trace, gamma = 0");
    const std::set<Output> energy{Output::Energy};
    b.sweep("fig7-external", InitialPreset::B, {"u3", "u5", "u7"}, Axis::Gamma, {1.0, 5.0, 10.0}, 0.0, energy, {},
            "energy vs time, beta = 0");
    b.sweep("fig7-internal", InitialPreset::B, {"u3", "u5", "u7"}, Axis::Beta, {5e-4, 1e-3, 5e-3}, 0.0, energy, {},
            "energy vs time, gamma = 0");
    return b.out;
}

std::string json_outputs(const std::set<Output>& outs) {
    std::string s;
    for (auto o : outs) {
        if (!s.empty()) s += ",";
        s += to_string(o);
    }
    return s;
}

void write_header(std::ostream& os, const Scenario& sc, const RunOptions& opts, const Trajectory* traj) {
    os << "# radkg run\n";
    os << "# scenario: " << sc.name << "\n";
    if (!sc.group.empty()) os << "# group: " << sc.group << "\n";
    if (!sc.note.empty()) os << "# note: " << sc.note << "\n";
    os << "# config: " << config_to_json(sc, opts).dump() << "\n";
    if (traj) {
        const auto& s = traj->stability;
        os << "# stability: R=" << fmt17(s.R) << " lhs=" << fmt17(s.lhs) << " rhs=" << fmt17(s.rhs)
           << " satisfied=" << (s.satisfied ? "true" : "false") << " margin=" << fmt17(s.margin) << "\n";
        const auto ns = summarize(*traj);
        os << "# newton: max_iterations=" << ns.max_iterations << " total_iterations=" << ns.total_iterations
           << " nonconverged_steps=" << ns.nonconverged_steps.size() << "\n";
    }
}

std::vector<int> steps_or_all(const std::vector<int>& steps, int N) {
    if (!steps.empty()) return steps;
    std::vector<int> all(N + 1);
    for (int n = 0; n <= N; ++n) all[n] = n;
    return all;
}

double field_difference(const RadialField& a, const RadialField& ref, const GridSpec& grid, MetricField field) {
    if (field == MetricField::V) return relative_difference(a, ref, grid.dr());
    return relative_difference(recover_w(a, grid), recover_w(ref, grid), grid.dr());
}

}  // namespace

std::string to_string(Output o) {
    switch (o) {
        case Output::Fields: return "fields";
        case Output::Energy: return "energy";
        case Output::RelDiff: return "reldiff";
        case Output::Origin: return "origin";
        case Output::Amplitude: return "amplitude";
    }
    return "";
}

std::string to_string(MetricField f) { return f == MetricField::V ? "v" : "w"; }
std::string to_string(Axis a) { return a == Axis::Gamma ? "gamma" : "beta"; }

std::set<Output> parse_outputs(const std::string& csv) {
    static const std::map<std::string, Output> names{{"fields", Output::Fields},
                                                     {"energy", Output::Energy},
                                                     {"reldiff", Output::RelDiff},
                                                     {"origin", Output::Origin},
                                                     {"amplitude", Output::Amplitude}};
    std::set<Output> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto it = names.find(item);
        if (it == names.end()) throw ConfigError("unknown output '" + item + "'");
        out.insert(it->second);
    }
    return out;
}

CatalogMiss::CatalogMiss(const std::string& name)
    : std::invalid_argument([&] {
          std::string msg = "unknown scenario '" + name + "'; valid groups:";
          for (const auto& g : catalog_groups()) msg += " " + g;
          msg += " (or a full scenario name from `radkg list`)";
          return msg;
      }()) {}

const std::vector<Scenario>& catalog() {
    static const std::vector<Scenario> cat = build_catalog();
    return cat;
}

std::vector<std::string> catalog_groups() {
    std::vector<std::string> groups;
    for (const auto& sc : catalog()) {
        if (std::find(groups.begin(), groups.end(), sc.group) == groups.end()) groups.push_back(sc.group);
    }
    return groups;
}

std::vector<Scenario> lookup(const std::string& name) {
    std::vector<Scenario> hits;
    for (const auto& sc : catalog()) {
        if (sc.name == name || sc.group == name) hits.push_back(sc);
    }
    if (hits.empty()) throw CatalogMiss(name);
    return hits;
}

NewtonSummary summarize(const Trajectory& traj) {
    NewtonSummary s;
    for (std::size_t k = 0; k < traj.stats.size(); ++k) {
        const auto& st = traj.stats[k];
        s.max_iterations = std::max(s.max_iterations, st.newton_iterations);
        s.total_iterations += st.newton_iterations;
        if (!st.converged) s.nonconverged_steps.push_back(static_cast<int>(k) + 1);
    }
    return s;
}

RunResult execute(const Scenario& sc, const RunOptions& opts) {
    RunResult res{sc, run(sc.grid, sc.params(), sc.ic, opts.newton, opts.policy), {}};
    res.energy = energy_series(res.trajectory);
    return res;
}

RunArtifact write_outputs(const RunResult& result, const RunOptions& opts, const fs::path& out_dir) {
    const auto& sc = result.scenario;
    const auto& traj = result.trajectory;
    const auto& grid = traj.grid;
    RunArtifact art{sc.name, {}, traj.stability, summarize(traj)};
    const std::string stem = file_stem(sc.name);

    if (sc.outputs.contains(Output::Fields)) {
        const fs::path file = out_dir / (stem + "_fields.csv");
        auto os = open_csv(file);
        write_header(os, sc, opts, &traj);
        os << "n,t,j,r,v,w\n";
        for (int n : steps_or_all(sc.snapshot_steps, grid.N)) {
            if (n < 0 || n > grid.N) continue;
            const auto& v = traj.levels[n];
            const auto w = recover_w(v, grid);
            for (int j = 0; j <= grid.M; ++j) {
                os << n << ',' << fmt17(grid.t(n)) << ',' << j << ',' << fmt17(grid.r(j)) << ',' << fmt17(v[j])
                   << ',' << fmt17(w[j]) << '\n';
            }
        }
        art.files.push_back(file);
    }
    if (sc.outputs.contains(Output::Energy)) {
        const fs::path file = out_dir / (stem + "_energy.csv");
        auto os = open_csv(file);
        write_header(os, sc, opts, &traj);
        os << "n,t_mid,E0,rate_lhs,rate_rhs\n";
        const auto& es = result.energy;
        for (std::size_t n = 0; n < es.values.size(); ++n) {
            os << n << ',' << fmt17((static_cast<double>(n) + 0.5) * grid.dt()) << ',' << fmt17(es.values[n])
               << ',' << fmt17(es.rate_lhs[n]) << ',' << fmt17(es.rate_rhs[n]) << '\n';
        }
        art.files.push_back(file);
    }
    if (sc.outputs.contains(Output::Origin)) {
        const fs::path file = out_dir / (stem + "_origin.csv");
        auto os = open_csv(file);
        write_header(os, sc, opts, &traj);
        os << "n,t,w0\n";
        for (int n = 0; n <= grid.N; ++n) {
            os << n << ',' << fmt17(grid.t(n)) << ',' << fmt17(recover_w(traj.levels[n], grid)[0]) << '\n';
        }
        art.files.push_back(file);
    }
    if (sc.outputs.contains(Output::Amplitude)) {
        const fs::path file = out_dir / (stem + "_amplitude.csv");
        auto os = open_csv(file);
        write_header(os, sc, opts, &traj);
        os << "n,t,amplitude\n";
        for (int n = 0; n <= grid.N; ++n) {
            os << n << ',' << fmt17(grid.t(n)) << ',' << fmt17(amplitude(traj.levels[n], grid)) << '\n';
        }
        art.files.push_back(file);
    }
    if (sc.outputs.contains(Output::RelDiff)) {
        Scenario undamped = sc;
        undamped.beta = 0.0;
        undamped.gamma = 0.0;
        const auto ref = run(grid, undamped.params(), undamped.ic, opts.newton, opts.policy);
        const fs::path file = out_dir / (stem + "_reldiff.csv");
        auto os = open_csv(file);
        write_header(os, sc, opts, &traj);
        os << "n,delta_v,delta_w\n";
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (int n = 0; n <= grid.N; ++n) {
            double dv = nan;
            double dw = nan;
            try {
                dv = field_difference(traj.levels[n], ref.levels[n], grid, MetricField::V);
                dw = field_difference(traj.levels[n], ref.levels[n], grid, MetricField::W);
            } catch (const UndefinedMetricError&) {
            }
            os << n << ',' << fmt17(dv) << ',' << fmt17(dw) << '\n';
        }
        art.files.push_back(file);
    }
    return art;
}

RunArtifact run_scenario(const Scenario& sc, const RunOptions& opts, const fs::path& out_dir) {
    return write_outputs(execute(sc, opts), opts, out_dir);
}

SweepResult sweep(const SweepSpec& spec, const RunOptions& opts) {
    if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
    const auto run_with = [&](double value) {
        Scenario sc = spec.base;
        (spec.axis == Axis::Gamma ? sc.gamma : sc.beta) = value;
        return run(sc.grid, sc.params(), sc.ic, opts.newton, opts.policy);
    };

    // The reference completes before any difference is formed; members run concurrently.
    auto ref_future = std::async(std::launch::async, run_with, 0.0);
    std::vector<std::future<Trajectory>> members;
    members.reserve(spec.values.size());
    for (double v : spec.values) members.push_back(std::async(std::launch::async, run_with, v));
    const Trajectory ref = ref_future.get();

    SweepResult res{spec, {}, {}, summarize(ref)};
    res.delta.assign(spec.steps.size(), std::vector<double>(spec.values.size(), 0.0));
    for (std::size_t k = 0; k < members.size(); ++k) {
        const Trajectory traj = members[k].get();
        res.newton.push_back(summarize(traj));
        for (std::size_t i = 0; i < spec.steps.size(); ++i) {
            const int n = spec.steps[i];
            if (n < 0 || n > spec.base.grid.N) throw ConfigError("sweep step out of range");
            res.delta[i][k] = field_difference(traj.levels[n], ref.levels[n], spec.base.grid, spec.field);
        }
    }
    return res;
}

void write_sweep_csv(const SweepResult& res, const fs::path& file) {
    auto os = open_csv(file);
    write_header(os, res.spec.base, RunOptions{}, nullptr);
    os << "# sweep: axis=" << to_string(res.spec.axis) << " field=" << to_string(res.spec.field) << "\n";
    os << "n";
    for (double v : res.spec.values) os << ',' << to_string(res.spec.axis) << '=' << label(v);
    os << '\n';
    for (std::size_t i = 0; i < res.spec.steps.size(); ++i) {
        os << res.spec.steps[i];
        for (double d : res.delta[i]) os << ',' << fmt17(d);
        os << '\n';
    }
}

const std::vector<TableSpec>& table_specs() {
    static const std::vector<TableSpec> specs{
        {"table1", Axis::Gamma, kGammaColumns, {"u7"}, InitialPreset::A, kTableSteps, MetricField::V,
         "external damping, presetA, G'(u) = u^7, beta = 0"},
        {"table2", Axis::Gamma, kGammaColumns, kTableNonlinearities, InitialPreset::B, {100}, MetricField::V,
         "external damping, presetB, t = 0.2, beta = 0"},
        {"table3", Axis::Beta, kBetaColumns, {"u7"}, InitialPreset::A, kTableSteps, MetricField::W,
         "internal damping, presetA, G'(u) = u^7, gamma = 0"},
        {"table4", Axis::Beta, kBetaColumns, kTableNonlinearities, InitialPreset::B, {100}, MetricField::W,
         "internal damping, presetB, t = 0.2, gamma = 0"},
    };
    return specs;
}

const TableSpec& table_spec(const std::string& name) {
    for (const auto& t : table_specs()) {
        if (t.name == name) return t;
    }
    throw CatalogMiss(name);
}

TableResult reproduce_table(const TableSpec& spec, const RunOptions& opts) {
    TableResult out{spec, {}, {}, {}};
    for (const auto& nl : spec.nonlinearities) {
        SweepSpec ss;
        ss.base.name = spec.name + "/" + nl;
        ss.base.group = spec.name;
        ss.base.ic = InitialData(spec.ic);
        ss.base.nonlinearity = Nonlinearity::from_name(nl);
        ss.axis = spec.axis;
        ss.values = spec.values;
        ss.steps = spec.steps;
        ss.field = spec.field;
        const auto res = sweep(ss, opts);
        out.newton.push_back(res.reference_newton);
        for (const auto& n : res.newton) out.newton.push_back(n);
        if (spec.rows_are_steps()) {
            for (std::size_t i = 0; i < spec.steps.size(); ++i) {
                out.row_labels.push_back(std::to_string(spec.steps[i]));
                out.cells.push_back(res.delta[i]);
            }
        } else {
            out.row_labels.push_back(nl);
            out.cells.push_back(res.delta.front());
        }
    }
    return out;
}

void write_table_csv(const TableResult& table, const fs::path& file) {
    const auto& spec = table.spec;
    auto os = open_csv(file);
    os << "# radkg table: " << spec.name << "\n";
    os << "# note: " << spec.note << "\n";
    os << "# metric: relative l2 difference of " << to_string(spec.field) << " against the undamped run\n";
    os << "# grid: a=0.4 T=0.2 dr=0.002 dt=0.002 m=1\n";
    os << (spec.rows_are_steps() ? "n" : "nonlinearity");
    for (double v : spec.values) os << ',' << to_string(spec.axis) << '=' << label(v);
    os << '\n';
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
        os << table.row_labels[i];
        for (double d : table.cells[i]) os << ',' << fmt4(d);
        os << '\n';
    }
}

double linear_solution_error(const GridSpec& grid) {
    const double k = 2.0 * std::numbers::pi / grid.a;
    const double m = 1.0;
    const double omega = std::sqrt(k * k + m * m);
    InitialData ic(InitialData::Custom{[k](double r) { return r > 0.0 ? std::sin(k * r) / r : k; },
                                       [](double) { return 0.0; }, "standing-wave"});
    PhysicsParams params{0.0, 0.0, m, Nonlinearity::zero()};
    const auto traj = run(grid, params, ic, NewtonConfig{1e-9, 5}, DivergencePolicy::Mark);
    const auto& v = traj.levels.back();
    double err = 0.0;
    for (int j = 0; j <= grid.M; ++j) {
        const double exact = std::sin(k * grid.r(j)) * std::cos(omega * grid.T);
        err = std::max(err, std::abs(v[j] - exact));
    }
    return err;
}

std::vector<ConvergenceRow> convergence_study(int k_levels, double courant) {
    if (k_levels < 3) throw ConfigError("convergence study needs at least 3 levels");
    std::vector<ConvergenceRow> rows;
    // omega*T close to pi/2, where the phase error is fully visible.
    const double a = 0.4;
    const double T = 0.1;
    for (int level = 0; level < k_levels; ++level) {
        const int M = kConvergenceBaseM << level;
        const double dr = a / M;
        const double dt = courant * dr;
        const GridSpec grid = GridSpec::from_steps(a, T, dr, dt);
        ConvergenceRow row{grid.dr(), grid.dt(), linear_solution_error(grid),
                           std::numeric_limits<double>::quiet_NaN()};
        if (!rows.empty()) row.order = std::log2(rows.back().error / row.error);
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const fs::path& file) {
    auto os = open_csv(file);
    os << "# radkg convergence study: v = sin(kr)cos(wt), k = 2pi/a, G' = 0, beta = gamma = 0, m = 1\n";
    os << "dr,dt,error,order\n";
    for (const auto& r : rows) {
        os << fmt17(r.dr) << ',' << fmt17(r.dt) << ',' << fmt17(r.error) << ',' << fmt17(r.order) << '\n';
    }
}

void print_stability(std::ostream& os, const StabilityReport& rep, double spectral_radius) {
    os << "R=" << fmt17(rep.R) << "\n"
       << "lhs=" << fmt17(rep.lhs) << "\n"
       << "rhs=" << fmt17(rep.rhs) << "\n"
       << "satisfied=" << (rep.satisfied ? "true" : "false") << "\n"
       << "margin=" << fmt17(rep.margin) << "\n"
       << "spectral_radius_scan=" << fmt17(spectral_radius) << "\n";
}

nlohmann::json config_to_json(const Scenario& sc, const RunOptions& opts) {
    nlohmann::json j;
    j["name"] = sc.name;
    j["ic"] = sc.ic.name();
    j["nonlinearity"] = sc.nonlinearity.name();
    j["beta"] = sc.beta;
    j["gamma"] = sc.gamma;
    j["m"] = sc.m;
    j["a"] = sc.grid.a;
    j["T"] = sc.grid.T;
    j["M"] = sc.grid.M;
    j["N"] = sc.grid.N;
    j["newton_tol"] = opts.newton.tol;
    j["newton_max"] = opts.newton.max_iter;
    j["emit"] = json_outputs(sc.outputs);
    j["on_divergence"] = opts.policy == DivergencePolicy::Abort ? "abort" : "mark";
    if (!sc.snapshot_steps.empty()) j["snapshots"] = sc.snapshot_steps;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig cfg) {
    static const std::set<std::string> known{"scenario", "name", "ic", "nonlinearity", "p", "beta", "gamma",
                                             "m", "a", "T", "dr", "dt", "M", "N", "newton_tol", "newton_max",
                                             "emit", "on_divergence", "snapshots"};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    try {
        auto& sc = cfg.scenario;
        if (j.contains("scenario")) {
            const auto name = j.at("scenario").get<std::string>();
            const auto hits = lookup(name);
            if (hits.size() != 1) throw ConfigError("scenario '" + name + "' is a group; name a single run");
            sc = hits.front();
        }
        if (j.contains("name")) sc.name = j.at("name").get<std::string>();
        if (j.contains("ic")) sc.ic = InitialData::from_name(j.at("ic").get<std::string>());
        if (j.contains("nonlinearity")) sc.nonlinearity = Nonlinearity::from_name(j.at("nonlinearity").get<std::string>());
        if (j.contains("p")) sc.nonlinearity = Nonlinearity::power(j.at("p").get<int>());
        if (j.contains("beta")) sc.beta = j.at("beta").get<double>();
        if (j.contains("gamma")) sc.gamma = j.at("gamma").get<double>();
        if (j.contains("m")) sc.m = j.at("m").get<double>();

        double a = j.value("a", sc.grid.a);
        double T = j.value("T", sc.grid.T);
        int M = j.value("M", static_cast<int>(std::lround(a / sc.grid.dr())));
        int N = j.value("N", static_cast<int>(std::lround(T / sc.grid.dt())));
        if (j.contains("dr") || j.contains("dt")) {
            const double dr = j.value("dr", a / M);
            const double dt = j.value("dt", T / N);
            sc.grid = GridSpec::from_steps(a, T, dr, dt);
        } else {
            sc.grid = GridSpec{a, T, M, N};
            sc.grid.validate();
        }

        if (j.contains("newton_tol")) cfg.options.newton.tol = j.at("newton_tol").get<double>();
        if (j.contains("newton_max")) cfg.options.newton.max_iter = j.at("newton_max").get<int>();
        if (j.contains("emit")) sc.outputs = parse_outputs(j.at("emit").get<std::string>());
        if (j.contains("snapshots")) sc.snapshot_steps = j.at("snapshots").get<std::vector<int>>();
        if (j.contains("on_divergence")) {
            const auto p = j.at("on_divergence").get<std::string>();
            if (p == "abort") cfg.options.policy = DivergencePolicy::Abort;
            else if (p == "mark") cfg.options.policy = DivergencePolicy::Mark;
            else throw ConfigError("on_divergence must be abort or mark");
        }
        sc.params().validate();
        cfg.options.newton.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

}  // namespace radkg
