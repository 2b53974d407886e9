#pragma once

// Test-only oracles, deliberately independent of the library's spectral
// implementation path: a Sturm-count bisection eigensolver on the
// characteristic polynomial, a scaling-and-squaring Taylor matrix
// exponential, the analytic open-chain spectrum, and the determinant
// recursion for zero-diagonal tridiagonal matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qst/random.hpp"

namespace qst::test {

// Eigenvalue count below x from the LDL^T pivot sequence of H - xI,
// H tridiagonal with zero diagonal and off-diagonal `e`.
inline int sturm_count_below(const std::vector<double>& e, double x) {
  constexpr double kPivMin = 1e-290;
  int count = 0;
  double d = -x;
  if (d == 0.0) d = -kPivMin;
  if (d < 0.0) ++count;
  for (double coupling : e) {
    d = -x - coupling * coupling / d;
    if (d == 0.0) d = -kPivMin;
    if (d < 0.0) ++count;
  }
  return count;
}

// All eigenvalues, ascending, by bisection on the Sturm count.
inline std::vector<double> sturm_eigenvalues(const std::vector<double>& e) {
  const int n = static_cast<int>(e.size()) + 1;
  double radius = 0.0;
  for (int row = 0; row < n; ++row) {
    double sum = 0.0;
    if (row > 0) sum += std::abs(e[static_cast<std::size_t>(row) - 1]);
    if (row < n - 1) sum += std::abs(e[static_cast<std::size_t>(row)]);
    radius = std::max(radius, sum);
  }
  radius += 1.0;
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double lo = -radius;
    double hi = radius;
    for (int iter = 0; iter < 140 && hi - lo > 1e-16 * radius; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count_below(e, mid) >= k + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
  }
  return values;
}

// exp(A) by scaling and squaring with a Taylor series.
inline Eigen::MatrixXcd dense_expm(Eigen::MatrixXcd a) {
  const int n = static_cast<int>(a.rows());
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    norm = std::max(norm, a.row(i).cwiseAbs().sum());
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  a *= std::ldexp(1.0, -squarings);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  return result;
}

// <to| exp(-i H t) |from> for the zero-diagonal tridiagonal H.
inline std::complex<double> expm_amplitude(const std::vector<double>& offdiag, double time,
                                           int from, int to) {
  const int n = static_cast<int>(offdiag.size()) + 1;
  Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(n, n);
  const std::complex<double> minus_i{0.0, -1.0};
  for (int i = 0; i + 1 < n; ++i) {
    generator(i, i + 1) = minus_i * offdiag[static_cast<std::size_t>(i)] * time;
    generator(i + 1, i) = minus_i * offdiag[static_cast<std::size_t>(i)] * time;
  }
  return dense_expm(generator)(to, from);
}

// Open uniform chain: eps_k = 2 cos(k pi / (n+1)), ascending.
inline std::vector<double> uniform_chain_eigenvalues(int n) {
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    values[static_cast<std::size_t>(k) - 1] = 2.0 * std::cos(k * M_PI / (n + 1));
  }
  std::sort(values.begin(), values.end());
  return values;
}

struct ScaledDeterminant {
  int sign;         // 0 when the determinant vanishes
  double log2_abs;  // log2 |det|, meaningful when sign != 0
};

// D_i = -e_{i-1}^2 D_{i-2} for zero-diagonal tridiagonal matrices,
// carried as mantissa/exponent to dodge under/overflow.
inline ScaledDeterminant tridiagonal_determinant(const std::vector<double>& e) {
  double mant_back = 1.0;  // D_{i-2}, starting at D_0
  long exp_back = 0;
  double mant = 0.0;  // D_{i-1}, starting at D_1 = 0 (zero diagonal)
  long exp_cur = 0;
  for (double coupling : e) {
    double next = -coupling * coupling * mant_back;
    long next_exp = exp_back;
    int adjust = 0;
    next = std::frexp(next, &adjust);
    next_exp += adjust;
    mant_back = mant;
    exp_back = exp_cur;
    mant = next;
    exp_cur = next_exp;
  }
  if (mant == 0.0) return {0, 0.0};
  return {mant > 0.0 ? 1 : -1, std::log2(std::abs(mant)) + static_cast<double>(exp_cur)};
}

inline std::vector<double> random_couplings(std::mt19937_64& rng, int n_sites, double lo = 0.05) {
  std::vector<double> couplings(static_cast<std::size_t>(n_sites) - 1);
  for (auto& j : couplings) {
    j = lo + (1.0 - lo) * uniform_unit(rng);
  }
  return couplings;
}

inline double max_relative_deviation(const std::vector<double>& values) {
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  double max_diff = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      max_diff = std::max(max_diff, std::abs(values[i] - values[j]));
    }
  }
  return (max_abs > 0.0) ? max_diff / max_abs : max_diff;
}

}  // namespace qst::test
