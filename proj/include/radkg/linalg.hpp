#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radkg {

/// Tridiagonal matrix stored by diagonals; sub[i] sits at (i+1, i),
/// super[i] at (i, i+1).
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> main;
    std::vector<double> super;

    explicit TridiagonalSystem(std::size_t n = 0)
        : sub(n > 0 ? n - 1 : 0, 0.0), main(n, 0.0), super(n > 0 ? n - 1 : 0, 0.0) {}

    std::size_t size() const { return main.size(); }

    /// Throws std::invalid_argument on inconsistent diagonal lengths.
    void validate() const;

    /// y = A x
    std::vector<double> apply(std::span<const double> x) const;
};

class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(std::size_t index, double pivot)
        : std::runtime_error("tridiagonal solve: near-zero pivot " + std::to_string(pivot) +
                             " at row " + std::to_string(index)),
          index_(index),
          pivot_(pivot) {}

    std::size_t index() const { return index_; }
    double pivot() const { return pivot_; }

private:
    std::size_t index_;
    double pivot_;
};

inline constexpr double kPivotThreshold = 1e-30;

/// Solves A x = rhs by Crout factorization A = L U (L lower bidiagonal,
/// U unit upper bidiagonal), no pivoting. O(n).
std::vector<double> crout_solve(const TridiagonalSystem& sys, std::span<const double> rhs);

}  // namespace radkg
