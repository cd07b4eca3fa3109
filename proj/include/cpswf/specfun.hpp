#pragma once

#include <vector>

namespace cpswf {

double gamma(double x);
// log Gamma for x > 0, used by bound formulas that overflow Gamma itself
double log_gamma(double x);

// J_nu(x) for nu >= -1/2 and 0 <= x <= 1e4
double bessel_j(double nu, double x);

struct BesselZeroTable {
  double alpha = 0.0;
  std::vector<double> zeros;  // lambda_1 < lambda_2 < ...
  std::vector<double> norms;  // |J_{alpha+1}(lambda_j)|

  int size() const { return static_cast<int>(zeros.size()); }
  // 1-based
  double lambda(int j) const { return zeros.at(static_cast<std::size_t>(j - 1)); }
  double norm(int j) const { return norms.at(static_cast<std::size_t>(j - 1)); }
};

BesselZeroTable bessel_zero(double alpha, int jmax);

// binom(k + alpha, k) = P_k^{(alpha,0)}(1)
double binom_shift(double alpha, int k);

// P_n^{(alpha,0)}(u) by forward recurrence
double jacobi_p(int n, double alpha, double u);

// T_n^alpha(x) = sqrt(2(2n+alpha+1)) x^{alpha+1/2} P_n^{(alpha,0)}(1-2x^2)
double jacobi_T(int n, double alpha, double x);

// phi_j(x) = sqrt(2x) J_alpha(lambda_j x) / |J_{alpha+1}(lambda_j)|, j >= 1
double phi(int j, const BesselZeroTable& table, double x);

// j_{k,c}(x) = sqrt(2(2k+alpha+1)) J_{2k+alpha+1}(cx) / sqrt(cx)
double spherical_j(int k, double alpha, double c, double x);

}  // namespace cpswf
