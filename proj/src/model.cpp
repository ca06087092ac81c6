#include "radkg/model.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace radkg {

namespace {

double ipow(double x, int k) {
    double result = 1.0;
    for (; k > 0; --k) result *= x;
    return result;
}

// Below this exponent exp() only produces subnormals or zero.
const double kMinExponent = std::log(DBL_MIN);

}  // namespace

void GridSpec::validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("grid: a must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("grid: T must be positive");
    if (M < 3) throw std::invalid_argument("grid: M must be at least 3");
    if (N < 1) throw std::invalid_argument("grid: N must be at least 1");
}

GridSpec GridSpec::from_steps(double a, double T, double dr, double dt) {
    if (!(dr > 0.0) || !(dt > 0.0)) throw std::invalid_argument("grid: steps must be positive");
    const double m = a / dr;
    const double n = T / dt;
    const double mr = std::round(m);
    const double nr = std::round(n);
    if (std::abs(m - mr) > 1e-9 * mr || std::abs(n - nr) > 1e-9 * nr) {
        throw std::invalid_argument("grid: a/dr and T/dt must be integers");
    }
    GridSpec g{a, T, static_cast<int>(mr), static_cast<int>(nr)};
    g.validate();
    return g;
}

Nonlinearity::Nonlinearity(PowerLaw law) : law_(law) {
    if (law.p <= 1 || law.p % 2 == 0) {
        throw std::invalid_argument("power nonlinearity needs an odd exponent p > 1");
    }
}

Nonlinearity::Nonlinearity(GeneralLaw law) : law_(std::move(law)) {
    const auto& g = std::get<GeneralLaw>(law_);
    if (!g.G || !g.Gp || !g.Gpp) throw std::invalid_argument("general nonlinearity needs G, G', G''");
}

Nonlinearity Nonlinearity::zero() {
    return Nonlinearity(GeneralLaw{
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        "zero"});
}

// G'(u) = sinh(5u) - 5u, G(u) = (cosh(5u) - 1)/5 - 5u^2/2.
Nonlinearity Nonlinearity::sinh5() {
    return Nonlinearity(GeneralLaw{
        [](double u) {
            const double s = std::sinh(2.5 * u);
            return 0.4 * s * s - 2.5 * u * u;
        },
        [](double u) { return std::sinh(5.0 * u) - 5.0 * u; },
        [](double u) { return 5.0 * std::cosh(5.0 * u) - 5.0; },
        "sinh5"});
}

// G'(u) = sin(5u) - 5u, G(u) = (1 - cos(5u))/5 - 5u^2/2.
Nonlinearity Nonlinearity::sin5() {
    return Nonlinearity(GeneralLaw{
        [](double u) {
            const double s = std::sin(2.5 * u);
            return 0.4 * s * s - 2.5 * u * u;
        },
        [](double u) { return std::sin(5.0 * u) - 5.0 * u; },
        [](double u) { return 5.0 * std::cos(5.0 * u) - 5.0; },
        "sin5"});
}

const std::vector<std::string>& Nonlinearity::catalog_names() {
    static const std::vector<std::string> names{"zero", "u3", "u5", "u7", "u9", "sinh5", "sin5"};
    return names;
}

Nonlinearity Nonlinearity::from_name(const std::string& name) {
    if (name == "zero") return zero();
    if (name == "sinh5") return sinh5();
    if (name == "sin5") return sin5();
    if (name.size() >= 2 && name[0] == 'u') {
        std::size_t used = 0;
        int p = 0;
        try {
            p = std::stoi(name.substr(1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == name.size() - 1) return power(p);
    }
    throw std::invalid_argument("unknown nonlinearity '" + name + "'");
}

int Nonlinearity::power_exponent() const {
    if (!is_power()) throw std::logic_error("nonlinearity is not a power law");
    return std::get<PowerLaw>(law_).p;
}

double Nonlinearity::G(double w) const {
    if (const auto* pw = std::get_if<PowerLaw>(&law_)) return ipow(w, pw->p + 1) / (pw->p + 1);
    return general().G(w);
}

double Nonlinearity::Gp(double w) const {
    if (const auto* pw = std::get_if<PowerLaw>(&law_)) return ipow(w, pw->p);
    return general().Gp(w);
}

double Nonlinearity::Gpp(double w) const {
    if (const auto* pw = std::get_if<PowerLaw>(&law_)) return pw->p * ipow(w, pw->p - 1);
    return general().Gpp(w);
}

std::string Nonlinearity::name() const {
    if (const auto* pw = std::get_if<PowerLaw>(&law_)) return "u" + std::to_string(pw->p);
    return general().label;
}

void PhysicsParams::validate() const {
    if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(m)) {
        throw std::invalid_argument("physics parameters must be finite");
    }
    if (m < 0.0) throw std::invalid_argument("mass must be non-negative");
}

void NewtonConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("newton tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("newton max_iter must be at least 1");
}

double bump_h(double r) {
    if (r < 0.0 || std::isnan(r)) throw std::domain_error("bump_h: negative radius");
    if (r >= 0.2) return 0.0;
    const double s = 10.0 * r - 1.0;
    const double q = 1.0 - s * s;
    if (q <= 0.0) return 0.0;
    const double exponent = 100.0 * (1.0 - 1.0 / q);
    if (exponent < kMinExponent) return 0.0;
    return 5.0 * std::exp(exponent);
}

double bump_h_prime(double r) {
    if (r < 0.0 || std::isnan(r)) throw std::domain_error("bump_h_prime: negative radius");
    const double h = bump_h(r);
    if (h == 0.0) return 0.0;
    const double s = 10.0 * r - 1.0;
    const double q = 1.0 - s * s;
    return -2000.0 * s * h / (q * q);
}

InitialData InitialData::from_name(const std::string& name) {
    if (name == "presetA" || name == "A") return InitialData(InitialPreset::A);
    if (name == "presetB" || name == "B") return InitialData(InitialPreset::B);
    if (name == "presetC" || name == "C") return InitialData(InitialPreset::C);
    throw std::invalid_argument("unknown initial data '" + name + "'");
}

double InitialData::phi(double r) const {
    if (const auto* c = std::get_if<Custom>(&data_)) return c->phi(r);
    switch (std::get<InitialPreset>(data_)) {
        case InitialPreset::A:
        case InitialPreset::C:
            return bump_h(r);
        case InitialPreset::B:
            return 0.0;
    }
    return 0.0;
}

double InitialData::psi(double r) const {
    if (const auto* c = std::get_if<Custom>(&data_)) return c->psi(r);
    switch (std::get<InitialPreset>(data_)) {
        case InitialPreset::A:
            // h vanishes to all orders at the origin.
            if (r == 0.0) return 0.0;
            return bump_h_prime(r) + bump_h(r) / r;
        case InitialPreset::B:
            return 100.0 * bump_h(r);
        case InitialPreset::C:
            return 0.0;
    }
    return 0.0;
}

std::string InitialData::name() const {
    if (const auto* c = std::get_if<Custom>(&data_)) return c->label;
    switch (std::get<InitialPreset>(data_)) {
        case InitialPreset::A: return "presetA";
        case InitialPreset::B: return "presetB";
        case InitialPreset::C: return "presetC";
    }
    return "";
}

InitialLevels sample_initial_levels(const GridSpec& grid, const InitialData& ic) {
    grid.validate();
    InitialLevels out{RadialField(grid.M + 1, 0.0), RadialField(grid.M + 1, 0.0)};
    for (int j = 1; j <= grid.M; ++j) {
        const double r = grid.r(j);
        out.v0[j] = r * ic.phi(r);
        out.vt0[j] = r * ic.psi(r);
    }
    return out;
}

}  // namespace radkg
