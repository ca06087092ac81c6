#include "radkg/linalg.hpp"

#include <cmath>

namespace radkg {

void TridiagonalSystem::validate() const {
    const std::size_t n = main.size();
    if (n == 0) throw std::invalid_argument("tridiagonal system is empty");
    if (sub.size() != n - 1 || super.size() != n - 1) {
        throw std::invalid_argument("tridiagonal system has inconsistent diagonal lengths");
    }
}

std::vector<double> TridiagonalSystem::apply(std::span<const double> x) const {
    validate();
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("tridiagonal apply: size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = main[i] * x[i];
        if (i > 0) acc += sub[i - 1] * x[i - 1];
        if (i + 1 < n) acc += super[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

std::vector<double> crout_solve(const TridiagonalSystem& sys, std::span<const double> rhs) {
    sys.validate();
    const std::size_t n = sys.size();
    if (rhs.size() != n) throw std::invalid_argument("crout_solve: rhs size mismatch");

    // l: diagonal of L, u: superdiagonal of U, z: forward-substituted rhs.
    std::vector<double> u(n > 0 ? n - 1 : 0);
    std::vector<double> z(n);

    double l = sys.main[0];
    if (std::abs(l) < kPivotThreshold) throw SingularSystemError(0, l);
    z[0] = rhs[0] / l;
    for (std::size_t i = 1; i < n; ++i) {
        u[i - 1] = sys.super[i - 1] / l;
        l = sys.main[i] - sys.sub[i - 1] * u[i - 1];
        if (std::abs(l) < kPivotThreshold) throw SingularSystemError(i, l);
        z[i] = (rhs[i] - sys.sub[i - 1] * z[i - 1]) / l;
    }

    std::vector<double> x(n);
    x[n - 1] = z[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = z[i] - u[i] * x[i + 1];
    }
    return x;
}

}  // namespace radkg
