#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cpswf/errors.hpp"

namespace cpswf::linalg {

// number of eigenvalues of the symmetric tridiagonal (diag, off) strictly below x
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x);

// index-th smallest eigenvalue (0-based) by Sturm bisection
double tridiag_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off, int index);

// eigenvector for an isolated eigenvalue chi by inverse iteration from the seed e_seed
std::vector<double> tridiag_inverse_iteration(const std::vector<double>& diag, const std::vector<double>& off,
                                              double chi, int seed, int iterations = 3);

// all eigenvalues of a dense symmetric matrix (row-major, n x n, overwritten), ascending.
// Householder reduction to tridiagonal form followed by implicit QL.
template <class Real>
std::vector<Real> symmetric_eigenvalues(std::vector<Real>& a, int n) {
  using std::abs;
  using std::sqrt;
  auto A = [&](int i, int j) -> Real& { return a[static_cast<std::size_t>(i) * n + j]; };
  std::vector<Real> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    Real h(0), scale(0);
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += abs(A(i, k));
      if (scale == Real(0)) {
        e[i] = A(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        Real f = A(i, l);
        Real g = f >= Real(0) ? -sqrt(h) : sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = Real(0);
        for (int j = 0; j <= l; ++j) {
          g = Real(0);
          for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const Real hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = A(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) A(j, k) -= (f * e[k] + g * A(i, k));
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = A(i, i);

  // implicit QL on (d, e)
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  if (n > 0) e[n - 1] = Real(0);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const Real dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw ConvergenceError("symmetric_eigenvalues: QL did not converge");
        Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
        Real r = sqrt(g * g + Real(1));
        g = d[m] - d[l] + e[l] / (g + (g >= Real(0) ? abs(r) : -abs(r)));
        Real s(1), c(1), p(0);
        int i;
        for (i = m - 1; i >= l; --i) {
          Real f = s * e[i];
          const Real b = c * e[i];
          r = sqrt(f * f + g * g);
          e[i + 1] = r;
          if (r == Real(0)) {
            d[i + 1] -= p;
            e[m] = Real(0);
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + Real(2) * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == Real(0) && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = Real(0);
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace cpswf::linalg
