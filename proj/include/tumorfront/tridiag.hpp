#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tumorfront {

/// Tridiagonal system in three-band storage. Row i reads
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i],
/// with lower[0] and upper[n-1] ignored.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
  std::size_t size() const { return diag.size(); }

  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double v = diag[i] * x[i];
      if (i > 0) v += lower[i] * x[i - 1];
      if (i + 1 < n) v += upper[i] * x[i + 1];
      y[i] = v;
    }
    return y;
  }

  /// Thomas algorithm without pivoting. Fine for the diagonally dominant
  /// operators used here; a vanishing pivot throws.
  std::vector<double> solve(std::vector<double> rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n) throw std::invalid_argument("Tridiagonal::solve: size mismatch");
    if (n == 0) return rhs;
    std::vector<double> c(n);
    double pivot = diag[0];
    if (pivot == 0.0) throw std::runtime_error("Tridiagonal::solve: zero pivot");
    c[0] = n > 1 ? upper[0] / pivot : 0.0;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
      pivot = diag[i] - lower[i] * c[i - 1];
      if (pivot == 0.0) throw std::runtime_error("Tridiagonal::solve: zero pivot");
      c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
      rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
  }
};

}  // namespace tumorfront
