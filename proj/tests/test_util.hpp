#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "etf/exactpoly.hpp"
#include "etf/frames.hpp"

namespace etf::testing {

inline Complex unit(double theta) { return std::polar(1.0, theta); }

inline Complex random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 2 * std::numbers::pi);
  return unit(d(rng));
}

// Schoolbook product, kept independent of Eigen's kernels.
inline ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Complex s = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  }
  return c;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  }
  return m;
}

// Loop-based ETF check: self-adjoint, unit diagonal, off-diagonal modulus alpha
// and m G^2 = n G.
inline double naive_etf_residual(const ComplexMatrix& g, int n, int m) {
  const double alpha = std::sqrt(double(n - m) / (m * (n - 1.0)));
  double r = max_diff(g, naive_adjoint(g));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      double want = i == j ? 1.0 : alpha;
      if (i == j) r = std::max(r, std::abs(g(i, j) - 1.0));
      else r = std::max(r, std::abs(std::abs(g(i, j)) - want));
    }
  }
  ComplexMatrix lhs = naive_mul(g, g) * double(m);
  ComplexMatrix rhs = g * double(n);
  return std::max(r, max_diff(lhs, rhs));
}

inline ComplexMatrix leading_block(const ComplexMatrix& g, int k) {
  return g.topLeftCorner(k, k);
}

inline VarTablePtr vars(std::vector<std::string> names) { return VarTable::make(std::move(names)); }

}  // namespace etf::testing
