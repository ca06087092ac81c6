// Command-line front end: single runs, sweeps, table and figure regeneration,
// stability reports and the refinement study.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "radkg/harness.hpp"

namespace fs = std::filesystem;
using namespace radkg;

namespace {

constexpr int kExitDivergence = 2;
constexpr int kExitConfig = 3;

struct CommonFlags {
    std::string scenario;
    std::string config;
    std::string out = "out";
    std::optional<double> gamma, beta, m, dr, dt, a, T, newton_tol;
    std::optional<int> p, newton_max;
    std::string nonlinearity, ic, emit, on_divergence;

    void attach(CLI::App* app) {
        app->add_option("--scenario", scenario, "catalog scenario or group name");
        app->add_option("--config", config, "flat JSON config file");
        app->add_option("--out", out, "output directory");
        app->add_option("--gamma", gamma, "external damping");
        app->add_option("--beta", beta, "internal damping");
        app->add_option("--m", m, "mass");
        app->add_option("--p", p, "power-law exponent (odd, > 1)");
        app->add_option("--nonlinearity", nonlinearity, "zero,u3,u5,u7,u9,sinh5,sin5");
        app->add_option("--ic", ic, "presetA,presetB,presetC");
        app->add_option("--dr", dr, "space step");
        app->add_option("--dt", dt, "time step");
        app->add_option("--a", a, "outer radius");
        app->add_option("--T", T, "final time");
        app->add_option("--newton-tol", newton_tol, "Newton residual tolerance");
        app->add_option("--newton-max", newton_max, "Newton iteration budget");
        app->add_option("--emit", emit, "fields,energy,reldiff,origin,amplitude");
        app->add_option("--on-divergence", on_divergence, "abort or mark");
    }

    // File values first, then command-line flags on top.
    nlohmann::json overrides() const {
        nlohmann::json j = nlohmann::json::object();
        if (!config.empty()) {
            std::ifstream is(config);
            if (!is) throw ConfigError("cannot read config file " + config);
            try {
                j = nlohmann::json::parse(is);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config parse error: ") + e.what());
            }
            if (!j.is_object()) throw ConfigError("config must be a JSON object");
            j.erase("scenario");
        }
        auto set = [&](const char* key, const auto& opt) {
            if (opt) j[key] = *opt;
        };
        set("gamma", gamma);
        set("beta", beta);
        set("m", m);
        set("dr", dr);
        set("dt", dt);
        set("a", a);
        set("T", T);
        set("newton_tol", newton_tol);
        set("p", p);
        set("newton_max", newton_max);
        if (!nonlinearity.empty()) j["nonlinearity"] = nonlinearity;
        if (!ic.empty()) j["ic"] = ic;
        if (!emit.empty()) j["emit"] = emit;
        if (!on_divergence.empty()) j["on_divergence"] = on_divergence;
        if (j.contains("p") && j.contains("nonlinearity")) j.erase("nonlinearity");
        return j;
    }

    std::string scenario_name() const {
        if (!scenario.empty()) return scenario;
        if (config.empty()) return {};
        std::ifstream is(config);
        if (!is) return {};
        try {
            const auto j = nlohmann::json::parse(is);
            if (j.contains("scenario")) return j.at("scenario").get<std::string>();
        } catch (const nlohmann::json::exception&) {
        }
        return {};
    }

    // Every run the flags describe: each member of a catalog group, or one custom run.
    std::vector<RunConfig> resolve() const {
        const auto over = overrides();
        std::vector<RunConfig> out;
        const auto name = scenario_name();
        if (name.empty()) {
            out.push_back(config_from_json(over));
        } else {
            for (const auto& sc : lookup(name)) {
                RunConfig base{sc, {}};
                out.push_back(config_from_json(over, base));
            }
        }
        return out;
    }
};

void print_artifact(const RunArtifact& art) {
    std::cout << art.scenario << ": newton max " << art.newton.max_iterations << ", total "
              << art.newton.total_iterations;
    if (!art.newton.nonconverged_steps.empty()) {
        std::cout << ", " << art.newton.nonconverged_steps.size() << " non-converged steps";
    }
    std::cout << "\n";
    if (!art.stability.satisfied) {
        std::cerr << "warning: " << art.scenario << " violates the necessary stability condition (margin "
                  << art.stability.margin << ")\n";
    }
    for (const auto& f : art.files) std::cout << "  wrote " << f.string() << "\n";
}

int cmd_run(const CommonFlags& flags) {
    const auto configs = flags.resolve();
    for (const auto& cfg : configs) {
        const auto art = run_scenario(cfg.scenario, cfg.options, flags.out);
        print_artifact(art);
    }
    const auto name = flags.scenario_name();
    for (const auto& t : table_specs()) {
        if (t.name != name) continue;
        RunOptions opts = configs.front().options;
        const auto table = reproduce_table(t, opts);
        const fs::path file = fs::path(flags.out) / (t.name + ".csv");
        write_table_csv(table, file);
        std::cout << "wrote " << file.string() << "\n";
    }
    return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& axis, const std::vector<double>& values,
              std::vector<int> steps, const std::string& field) {
    const auto configs = flags.resolve();
    if (configs.size() != 1) throw ConfigError("sweep needs a single base run, not a group");
    SweepSpec spec;
    spec.base = configs.front().scenario;
    if (axis == "gamma") spec.axis = Axis::Gamma;
    else if (axis == "beta") spec.axis = Axis::Beta;
    else throw ConfigError("axis must be gamma or beta");
    if (field == "v") spec.field = MetricField::V;
    else if (field == "w") spec.field = MetricField::W;
    else throw ConfigError("field must be v or w");
    spec.values = values;
    if (steps.empty()) steps.push_back(spec.base.grid.N);
    spec.steps = steps;
    const auto res = sweep(spec, configs.front().options);
    const fs::path file = fs::path(flags.out) / "sweep_reldiff.csv";
    write_sweep_csv(res, file);
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

int cmd_tables(const std::string& out, const RunOptions& opts, const std::string& only) {
    for (const auto& t : table_specs()) {
        if (!only.empty() && only != t.name) continue;
        const auto table = reproduce_table(t, opts);
        const fs::path file = fs::path(out) / (t.name + ".csv");
        write_table_csv(table, file);
        std::cout << "wrote " << file.string() << "\n";
    }
    return 0;
}

int cmd_figures(const std::string& out, const RunOptions& opts) {
    for (const auto& sc : catalog()) {
        if (sc.group.rfind("fig", 0) != 0) continue;
        print_artifact(run_scenario(sc, opts, fs::path(out) / sc.group));
    }
    return 0;
}

int cmd_stability(const CommonFlags& flags) {
    const auto configs = flags.resolve();
    for (const auto& cfg : configs) {
        const auto& sc = cfg.scenario;
        const auto params = sc.params();
        const double dt = sc.grid.dt();
        const double dr = sc.grid.dr();
        if (configs.size() > 1) std::cout << "# " << sc.name << "\n";
        print_stability(std::cout, necessary_condition(dt, dr, params), spectral_radius_scan(dt, dr, params));
    }
    return 0;
}

int cmd_converge(int levels, const std::string& out) {
    const auto rows = convergence_study(levels);
    for (const auto& r : rows) {
        std::cout << "dr=" << r.dr << " dt=" << r.dt << " error=" << r.error;
        if (!std::isnan(r.order)) std::cout << " order=" << r.order;
        std::cout << "\n";
    }
    const fs::path file = fs::path(out) / "convergence.csv";
    write_convergence_csv(rows, file);
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radially symmetric damped nonlinear Klein-Gordon solver"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, stab_flags;
    auto* run = app.add_subcommand("run", "run a catalog scenario, group, or custom configuration");
    run_flags.attach(run);

    auto* sw = app.add_subcommand("sweep", "damping sweep against the undamped reference");
    sweep_flags.attach(sw);
    std::string axis = "gamma";
    std::vector<double> values;
    std::vector<int> steps;
    std::string field = "v";
    sw->add_option("--axis", axis, "gamma or beta");
    sw->add_option("--values", values, "damping values")->required()->delimiter(',');
    sw->add_option("--steps", steps, "time steps to sample (default: last)")->delimiter(',');
    sw->add_option("--field", field, "compare v or recovered w");

    std::string out = "out";
    std::string only;
    double tol = 1e-5;
    int max_iter = 20;
    auto* tables = app.add_subcommand("tables", "regenerate the four relative-difference tables");
    tables->add_option("--out", out, "output directory");
    tables->add_option("--only", only, "table1..table4");
    tables->add_option("--newton-tol", tol, "Newton residual tolerance");
    tables->add_option("--newton-max", max_iter, "Newton iteration budget");

    auto* figures = app.add_subcommand("figures", "emit data for every figure scenario");
    figures->add_option("--out", out, "output directory");
    figures->add_option("--newton-tol", tol, "Newton residual tolerance");
    figures->add_option("--newton-max", max_iter, "Newton iteration budget");

    auto* stab = app.add_subcommand("stability", "print the necessary-condition report");
    stab_flags.attach(stab);

    int levels = 4;
    auto* conv = app.add_subcommand("converge", "grid refinement study on the linear problem");
    conv->add_option("--levels", levels, "number of grids (>= 3)");
    conv->add_option("--out", out, "output directory");

    auto* list = app.add_subcommand("list", "list catalog scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_flags);
        if (*sw) return cmd_sweep(sweep_flags, axis, values, steps, field);
        if (*tables) return cmd_tables(out, RunOptions{{tol, max_iter}, DivergencePolicy::Abort}, only);
        if (*figures) return cmd_figures(out, RunOptions{{tol, max_iter}, DivergencePolicy::Abort});
        if (*stab) return cmd_stability(stab_flags);
        if (*conv) return cmd_converge(levels, out);
        if (*list) {
            for (const auto& sc : catalog()) std::cout << sc.name << "\n";
            return 0;
        }
    } catch (const NewtonDivergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
