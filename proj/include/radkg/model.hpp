#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace radkg {

/// Uniform space-time grid over [0, a] x [0, T].
///
/// Nodes are r_j = j*dr (j = 0..M) and t_n = n*dt (n = 0..N). The step
/// sizes are always derived from the interval lengths so that M*dr and
/// N*dt reproduce a and T to rounding.
struct GridSpec {
    double a = 0.4;
    double T = 0.2;
    int M = 200;
    int N = 100;

    double dr() const { return a / M; }
    double dt() const { return T / N; }
    double r(int j) const { return j * dr(); }
    double t(int n) const { return n * dt(); }

    /// Throws std::invalid_argument unless a, T > 0, M >= 3 and N >= 1.
    void validate() const;

    /// Builds a grid from step sizes; a/dr and T/dt must be (close to) integers.
    static GridSpec from_steps(double a, double T, double dr, double dt);
};

/// G'(w) = w^p with p odd, p > 1.
struct PowerLaw {
    int p = 3;
};

/// Caller-supplied potential G together with its first two derivatives.
struct GeneralLaw {
    std::function<double(double)> G;
    std::function<double(double)> Gp;
    std::function<double(double)> Gpp;
    std::string label;
};

class Nonlinearity {
public:
    Nonlinearity() : Nonlinearity(zero()) {}
    Nonlinearity(PowerLaw law);
    Nonlinearity(GeneralLaw law);

    // Catalog entries. G is normalized so that G(0) = 0.
    static Nonlinearity zero();
    static Nonlinearity power(int p) { return Nonlinearity(PowerLaw{p}); }
    static Nonlinearity sinh5();
    static Nonlinearity sin5();

    /// Resolves one of: zero, u3, u5, u7, u9, sinh5, sin5.
    static Nonlinearity from_name(const std::string& name);
    static const std::vector<std::string>& catalog_names();

    bool is_power() const { return std::holds_alternative<PowerLaw>(law_); }
    int power_exponent() const;  // throws unless is_power()
    const GeneralLaw& general() const { return std::get<GeneralLaw>(law_); }

    double G(double w) const;
    double Gp(double w) const;
    double Gpp(double w) const;

    /// Short identifier (u7, sinh5, ...) used in file names and tables.
    std::string name() const;

private:
    std::variant<PowerLaw, GeneralLaw> law_;
};

struct PhysicsParams {
    double beta = 0.0;   // internal damping
    double gamma = 0.0;  // external damping, negative allowed
    double m = 1.0;      // mass
    Nonlinearity nonlinearity;

    void validate() const;
};

enum class InitialPreset { A, B, C };

/// Initial data (phi, psi) for w; the solver works with v = r*w.
///
/// PresetA: phi = h, psi = h' + h/r. PresetB: phi = 0, psi = 100 h.
/// PresetC: phi = h, psi = 0. Custom carries arbitrary callables.
class InitialData {
public:
    struct Custom {
        std::function<double(double)> phi;
        std::function<double(double)> psi;
        std::string label = "custom";
    };

    InitialData(InitialPreset preset = InitialPreset::A) : data_(preset) {}
    InitialData(Custom custom) : data_(std::move(custom)) {}

    static InitialData from_name(const std::string& name);

    double phi(double r) const;
    double psi(double r) const;
    std::string name() const;

private:
    std::variant<InitialPreset, Custom> data_;
};

struct NewtonConfig {
    double tol = 1e-5;
    int max_iter = 20;

    void validate() const;
};

/// Compactly supported bump: 5*exp(100*(1 - 1/(1 - (10r - 1)^2))) on
/// [0, 0.2), zero elsewhere. Throws std::domain_error for r < 0.
double bump_h(double r);

/// Analytic derivative of bump_h.
double bump_h_prime(double r);

/// One time level of v_j = r_j * w_j, j = 0..M.
using RadialField = std::vector<double>;

struct InitialLevels {
    RadialField v0;
    RadialField vt0;
};

/// v0_j = r_j*phi(r_j), vt0_j = r_j*psi(r_j); the j = 0 entries are exactly 0.
InitialLevels sample_initial_levels(const GridSpec& grid, const InitialData& ic);

}  // namespace radkg
