#pragma once

#include <memory>
#include <vector>

#include "cpswf/quadrature.hpp"

namespace cpswf {

struct ProlateParams {
  double alpha = 0.0;
  double c = 1.0;
  void validate() const;
};

// Symmetric tridiagonal matrix of the three-term recurrence for the expansion
// coefficients. offdiag[k] couples rows k and k+1 and equals a_{k+1}.
struct TridiagonalOperator {
  ProlateParams params;
  std::vector<double> diag;
  std::vector<double> offdiag;
  int size() const { return static_cast<int>(diag.size()); }
};

// b_k with the removable k = 0, alpha = 0 singularity filled in
double recurrence_b(int k, double alpha);
double recurrence_a(int k, double alpha, double c);

TridiagonalOperator build_operator(const ProlateParams& p, int K);

struct EigenPairs {
  std::vector<double> chis;                  // ascending
  // unit vectors; entry i of vector i is positive (largest entry if that one vanishes)
  std::vector<std::vector<double>> vectors;
};

EigenPairs eig_tridiagonal(const TridiagonalOperator& op, int count);

struct CpswfFunction {
  ProlateParams params;
  int n = 0;
  double chi = 0.0;
  // coefficients of psi in the orthonormal T_k basis, d[n] > 0
  std::vector<double> d;
  double mu = 0.0;
  double q = 0.0;
  int K() const { return static_cast<int>(d.size()); }
};

CpswfFunction compute(const ProlateParams& p, int n);
// psi_0 .. psi_nmax
std::vector<CpswfFunction> compute_range(const ProlateParams& p, int nmax);

double evaluate(const CpswfFunction& psi, double x);
std::vector<double> evaluate(const CpswfFunction& psi, const std::vector<double>& xs);
GridFunction sample(const CpswfFunction& psi, const RulePtr& rule);

// lim_{x->0} psi(x) / x^{alpha+1/2}
double limit_at_zero(const CpswfFunction& psi);

struct MuEstimate {
  double mu = 0.0;
  double x_star = 0.0;
  double x_check = 0.0;
  double mu_check = 0.0;
  double rel_diff = 0.0;
  double kappa = 0.0;  // cancellation factor of the numerator at x_star
  double kappa_check = 0.0;
  bool certified = false;
};

// mu from the expansion of H_c psi in the spherical Bessel basis, taken at the
// point of a 200-point grid where the expansion suffers least cancellation and
// checked at the next best point at least 0.05 away
MuEstimate mu_spectral(const CpswfFunction& psi);

// eigenvalues of the symmetrized Nystrom matrix, ordered by decreasing |.|
std::vector<double> nystrom_spectrum(const ProlateParams& p, const QuadratureRule& rule, int count);
// same discretization carried out in binary128 arithmetic on an m-point rule
std::vector<double> nystrom_spectrum_extended(const ProlateParams& p, int m, int count);

// H_c kernel sqrt(c x y) J_alpha(c x y) tabulated on one rule, reusable across inputs
class HankelKernel {
 public:
  HankelKernel(const ProlateParams& p, RulePtr rule);
  GridFunction apply(const GridFunction& f) const;
  const RulePtr& rule() const { return rule_; }
  double at(int i, int j) const { return k_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  ProlateParams p_;
  RulePtr rule_;
  int n_;
  std::vector<double> k_;
};

GridFunction hankel_apply(const GridFunction& f, const ProlateParams& p);

// chi bounds: Slepian bracket and the improved lower bound with parameter eps
double slepian_lower(const ProlateParams& p, int n);
double slepian_upper(const ProlateParams& p, int n);
double improved_lower(const ProlateParams& p, int n, double eps);

}  // namespace cpswf
