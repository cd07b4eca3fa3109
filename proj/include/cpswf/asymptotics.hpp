#pragma once

#include <vector>

#include "cpswf/cpswf.hpp"
#include "cpswf/quadrature.hpp"
#include "cpswf/specfun.hpp"

namespace cpswf {

// S(x) = int_x^1 sqrt((1 - q t^2)/(1 - t^2)) dt
double liouville_S(double q, double x);

struct ApproxReport {
  std::vector<double> grid;
  std::vector<double> approx;
  std::vector<double> truth;
  std::vector<double> error;   // |truth - approx|
  std::vector<double> bound;   // pointwise bound
  std::vector<double> scaled;  // Jacobi form: |psi - A T_n| / x^{2 alpha + 1/2}
  std::vector<char> excluded;  // bound vacuous at this point
  double A = 0.0;
  int admissible = 0;
  int flagged = 0;  // admissible points with error > bound
  double flag_rate = 1.0;
  double worst_ratio = 0.0;      // max error / bound over admissible points
  double sup_scaled = 0.0;       // Jacobi form: sup rho
  double scaled_constant = 0.0;  // Jacobi form: sup rho (2n+alpha+1) / c^2
};

// Bessel-type uniform approximation; requires q <= 1/2
ApproxReport bessel_type_approx(const CpswfFunction& psi, const std::vector<double>& grid);
double bessel_type_bound(const CpswfFunction& psi, double x);

// Jacobi-type approximation A_n T_n with A_n from the value at the origin
ApproxReport jacobi_type_approx(const CpswfFunction& psi, const std::vector<double>& grid);
double jacobi_constant(const CpswfFunction& psi);

struct SupLocalization {
  double x_star = 0.0, delta1 = 0.0, delta2 = 0.0;
  bool pass = false;
};
SupLocalization sup_localization_check(const CpswfFunction& psi);

// largest k with chi >= (alpha+2k+1/2)(alpha+2k+3/2) + (2 sqrt(alpha+1)/((alpha+2) sqrt(alpha+3)) + b_0) c^2;
// -1 when no k qualifies
int admissible_index(const ProlateParams& p, double chi);

struct CoefficientDecayReport {
  int n_alpha = -1;          // admissible range is k = 0..n_alpha
  int sign_violations = 0;   // recurrence coefficients (-1)^k d_k against k = 0
  int monotone_violations = 0;
  bool theorem_applies = false;  // alpha > 0
  int bound_terms = 0;
  double max_bound_ratio = 0.0;
  bool sign_constant() const { return sign_violations == 0; }
  bool monotone() const { return monotone_violations == 0; }
};
CoefficientDecayReport coefficient_decay_report(const CpswfFunction& psi);

struct MomentCheck {
  double moment = 0.0;         // from the finite T expansion, under d_0 >= 0
  double moment_direct = 0.0;  // plain quadrature of t^{2k+alpha+1/2} psi, same sign choice
  double bound = 0.0;
  bool pass = false;
};
bool moment_hypothesis(const CpswfFunction& psi, int k);
MomentCheck moment_check(const CpswfFunction& psi, int k, const QuadratureRule& rule);

// <phi_j, psi_n> from the expansion of phi_j in the T basis
double coupling(const CpswfFunction& psi, const BesselZeroTable& table, int j);

struct CouplingReport {
  int n_lo = 0, n_hi = 0;
  std::vector<int> js;                   // j with at least two admissible n
  std::vector<double> slopes;            // d log|G_jn| / dn per j
  std::vector<double> scaled_max;        // max_n |G_jn| lambda_j per j
  double a = 0.0, M = 0.0;               // |G_jn| lambda_j ~ M exp(-a n) over all admissible pairs
  double scaling_exponent = 0.0;         // slope of log scaled_max vs log lambda_j
  int pairs = 0;
  bool empty = true;
};
CouplingReport coupling_decay_report(const std::vector<CpswfFunction>& family, const BesselZeroTable& table,
                                     int n_lo, int n_hi, int j_max);

// smallest n0 with chi_n >= improved_lower(p, n, eps) for all n0 <= n <= nmax; nmax + 1 if none
int improved_bound_onset(const std::vector<CpswfFunction>& family, double eps);

}  // namespace cpswf
