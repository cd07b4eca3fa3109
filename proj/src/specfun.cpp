#include "cpswf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "cpswf/detail/jacobi_rec.hpp"
#include "cpswf/errors.hpp"

namespace cpswf {

namespace {

void check_order(double nu, const char* who) {
  if (!(nu >= -0.5)) throw DomainError(std::string(who) + ": order below -1/2");
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double bessel_j(double nu, double x) {
  check_order(nu, "bessel_j");
  if (!(x >= 0.0)) throw DomainError("bessel_j: negative argument");
  if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : INFINITY);
  return boost::math::cyl_bessel_j(nu, x);
}

BesselZeroTable bessel_zero(double alpha, int jmax) {
  check_order(alpha, "bessel_zero");
  if (jmax < 1) throw DomainError("bessel_zero: jmax must be >= 1");
  BesselZeroTable t;
  t.alpha = alpha;
  t.zeros.reserve(static_cast<std::size_t>(jmax));
  t.norms.reserve(static_cast<std::size_t>(jmax));
  for (int j = 1; j <= jmax; ++j) {
    double z = boost::math::cyl_bessel_j_zero(alpha, j);
    // bracket check on a small interval; spacing of zeros is close to pi
    const double h = 1e-6 * std::max(1.0, z);
    const double lo = boost::math::cyl_bessel_j(alpha, z - h);
    const double hi = boost::math::cyl_bessel_j(alpha, z + h);
    if (!(lo * hi < 0.0) || (j > 1 && !(z > t.zeros.back())))
      throw ConvergenceError("bessel_zero: failed to bracket zero j=" + std::to_string(j));
    // polish by bisection inside the bracket, keep whichever residual is smaller
    double a = z - h, b = z + h, fa = lo;
    for (int it = 0; it < 60 && b - a > 4e-16 * z; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = boost::math::cyl_bessel_j(alpha, m);
      if (fm == 0.0) { a = b = m; break; }
      if ((fm < 0.0) == (fa < 0.0)) { a = m; fa = fm; } else { b = m; }
    }
    const double za = 0.5 * (a + b);
    if (std::fabs(boost::math::cyl_bessel_j(alpha, za)) <= std::fabs(boost::math::cyl_bessel_j(alpha, z)))
      z = za;
    t.zeros.push_back(z);
    t.norms.push_back(std::fabs(boost::math::cyl_bessel_j(alpha + 1.0, z)));
  }
  return t;
}

double binom_shift(double alpha, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b *= (i + alpha) / i;
  return b;
}

double jacobi_p(int n, double alpha, double u) {
  if (n < 0) throw DomainError("jacobi_p: negative degree");
  double p0 = 1.0;
  if (n == 0) return p0;
  auto s = detail::jacobi_step(1, alpha);
  double p1 = s.a * u + s.b;
  for (int k = 2; k <= n; ++k) {
    s = detail::jacobi_step(k, alpha);
    const double p2 = (s.a * u + s.b) * p1 - s.g * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_T(int n, double alpha, double x) {
  check_order(alpha, "jacobi_T");
  if (x > 1.0) throw DomainError("jacobi_T: x > 1");
  const double e = alpha + 0.5;
  if (x <= 0.0 && e != std::floor(e)) throw DomainError("jacobi_T: x <= 0 with fractional power");
  return std::sqrt(2.0 * (2.0 * n + alpha + 1.0)) * std::pow(x, e) * jacobi_p(n, alpha, 1.0 - 2.0 * x * x);
}

double phi(int j, const BesselZeroTable& table, double x) {
  if (j < 1 || j > table.size()) throw ContractError("phi: index out of range");
  if (x < 0.0 || x > 1.0) throw DomainError("phi: x outside [0,1]");
  const double lam = table.lambda(j);
  return std::sqrt(2.0 * x) * bessel_j(table.alpha, lam * x) / table.norm(j);
}

double spherical_j(int k, double alpha, double c, double x) {
  if (!(x > 0.0)) throw DomainError("spherical_j: x must be positive");
  if (!(c > 0.0)) throw DomainError("spherical_j: c must be positive");
  const double z = c * x;
  return std::sqrt(2.0 * (2.0 * k + alpha + 1.0)) * bessel_j(2.0 * k + alpha + 1.0, z) / std::sqrt(z);
}

}  // namespace cpswf
