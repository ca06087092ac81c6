#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "radkg/diagnostics.hpp"
#include "radkg/model.hpp"
#include "radkg/stability.hpp"
#include "radkg/stepper.hpp"

namespace radkg {

enum class Output { Fields, Energy, RelDiff, Origin, Amplitude };

/// Which field the relative difference is measured on: the solver variable
/// v = r*w, or the recovered solution w.
enum class MetricField { V, W };

enum class Axis { Gamma, Beta };

std::string to_string(Output o);
std::string to_string(MetricField f);
std::string to_string(Axis a);
std::set<Output> parse_outputs(const std::string& csv);

/// One fully specified run.
struct Scenario {
    std::string name = "custom";
    std::string group;
    InitialData ic;
    Nonlinearity nonlinearity;
    double beta = 0.0;
    double gamma = 0.0;
    double m = 1.0;
    GridSpec grid;
    std::set<Output> outputs{Output::Fields, Output::Energy};
    std::vector<int> snapshot_steps;  // empty: every level
    std::string note;                 // free-form provenance echoed in file headers

    PhysicsParams params() const { return {beta, gamma, m, nonlinearity}; }
};

class CatalogMiss : public std::invalid_argument {
public:
    explicit CatalogMiss(const std::string& name);
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every scenario reproducing the published tables and figures.
const std::vector<Scenario>& catalog();

/// Scenarios whose name or group equals `name`; throws CatalogMiss otherwise.
std::vector<Scenario> lookup(const std::string& name);

/// Sorted group names followed by nothing else; used in error messages and --help.
std::vector<std::string> catalog_groups();

struct RunOptions {
    NewtonConfig newton;
    DivergencePolicy policy = DivergencePolicy::Abort;
};

struct NewtonSummary {
    int max_iterations = 0;
    long total_iterations = 0;
    std::vector<int> nonconverged_steps;
};

struct RunArtifact {
    std::string scenario;
    std::vector<std::filesystem::path> files;
    StabilityReport stability;
    NewtonSummary newton;
};

struct RunResult {
    Scenario scenario;
    Trajectory trajectory;
    EnergySeries energy;
};

RunResult execute(const Scenario& sc, const RunOptions& opts);

/// Runs the scenario and writes one CSV per requested output into out_dir.
RunArtifact run_scenario(const Scenario& sc, const RunOptions& opts, const std::filesystem::path& out_dir);
RunArtifact write_outputs(const RunResult& result, const RunOptions& opts, const std::filesystem::path& out_dir);

NewtonSummary summarize(const Trajectory& traj);

/// Parameter sweep against the axis-zero reference run.
struct SweepSpec {
    Scenario base;
    Axis axis = Axis::Gamma;
    std::vector<double> values;  // a zero entry (if any) is the reference itself
    std::vector<int> steps;      // time steps at which differences are sampled
    MetricField field = MetricField::V;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<std::vector<double>> delta;  // delta[i][k]: steps[i], values[k]
    std::vector<NewtonSummary> newton;       // per value
    NewtonSummary reference_newton;
};

SweepResult sweep(const SweepSpec& spec, const RunOptions& opts);

void write_sweep_csv(const SweepResult& res, const std::filesystem::path& file);

/// Table layout: rows are time steps (one nonlinearity) or nonlinearities
/// (one time step); columns are the nonzero damping values.
struct TableSpec {
    std::string name;
    Axis axis = Axis::Gamma;
    std::vector<double> values;
    std::vector<std::string> nonlinearities;
    InitialPreset ic = InitialPreset::A;
    std::vector<int> steps;
    MetricField field = MetricField::V;
    std::string note;

    bool rows_are_steps() const { return nonlinearities.size() == 1; }
};

struct TableResult {
    TableSpec spec;
    std::vector<std::string> row_labels;
    std::vector<std::vector<double>> cells;  // [row][column]
    std::vector<NewtonSummary> newton;       // one per underlying sweep
};

const std::vector<TableSpec>& table_specs();
const TableSpec& table_spec(const std::string& name);

TableResult reproduce_table(const TableSpec& spec, const RunOptions& opts);
void write_table_csv(const TableResult& table, const std::filesystem::path& file);

/// Refinement study on v = sin(k r) cos(omega t), k = 2 pi / a,
/// omega^2 = k^2 + m^2 (G' = 0, beta = gamma = 0, m = 1).
struct ConvergenceRow {
    double dr = 0.0;
    double dt = 0.0;
    double error = 0.0;
    double order = 0.0;  // NaN on the coarsest level
};

inline constexpr int kConvergenceBaseM = 20;

std::vector<ConvergenceRow> convergence_study(int k_levels, double courant = 0.5);

/// Sup-norm error at t = T of the linear test problem on the given grid.
double linear_solution_error(const GridSpec& grid);

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::filesystem::path& file);

/// Key-value listing of the stability report plus the spectral radius scan.
void print_stability(std::ostream& os, const StabilityReport& rep, double spectral_radius);

/// Flat key-value configuration. Unknown keys are rejected.
struct RunConfig {
    Scenario scenario;
    RunOptions options;
};

RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json config_to_json(const Scenario& sc, const RunOptions& opts);

}  // namespace radkg
