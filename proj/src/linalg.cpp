#include "cpswf/linalg.hpp"

#include <string>

namespace cpswf::linalg {

int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  const std::size_t n = diag.size();
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiag_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off, int index) {
  const std::size_t n = diag.size();
  if (index < 0 || static_cast<std::size_t>(index) >= n)
    throw ContractError("tridiag_eigenvalue: index out of range");
  // Gershgorin enclosure
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(off[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double span = std::max(std::fabs(lo), std::fabs(hi));
  lo -= 1e-12 * span + 1e-300;
  hi += 1e-12 * span + 1e-300;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> tridiag_inverse_iteration(const std::vector<double>& diag, const std::vector<double>& off,
                                              double chi, int seed, int iterations) {
  const std::size_t n = diag.size();
  if (seed < 0 || static_cast<std::size_t>(seed) >= n)
    throw ContractError("tridiag_inverse_iteration: seed index out of range");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(diag[i]));
  const double guard = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);

  // LU of T - chi I without pivoting (Thomas); zero pivots are nudged
  std::vector<double> piv(n), mult(n, 0.0);
  piv[0] = diag[0] - chi;
  if (piv[0] == 0.0) piv[0] = guard;
  for (std::size_t i = 1; i < n; ++i) {
    mult[i] = off[i - 1] / piv[i - 1];
    piv[i] = diag[i] - chi - mult[i] * off[i - 1];
    if (piv[i] == 0.0) piv[i] = guard;
  }

  std::vector<double> v(n, 0.0);
  v[static_cast<std::size_t>(seed)] = 1.0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 1; i < n; ++i) v[i] -= mult[i] * v[i - 1];
    v[n - 1] /= piv[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) v[i] = (v[i] - off[i] * v[i + 1]) / piv[i];
    double nrm = 0.0, big = 0.0;
    for (double t : v) big = std::max(big, std::fabs(t));
    if (!(big > 0.0) || !std::isfinite(big))
      throw ConvergenceError("tridiag_inverse_iteration: breakdown at index " + std::to_string(seed));
    for (double& t : v) t /= big;
    for (double t : v) nrm += t * t;
    nrm = std::sqrt(nrm);
    for (double& t : v) t /= nrm;
  }
  return v;
}

}  // namespace cpswf::linalg
