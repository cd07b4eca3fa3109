#pragma once

#include <memory>
#include <vector>

#include "cpswf/cpswf.hpp"
#include "cpswf/quadrature.hpp"
#include "cpswf/specfun.hpp"

namespace cpswf {

// psi_0 .. psi_N for one parameter pair, shared read-only by expansions
struct CpswfFamily {
  ProlateParams params;
  std::vector<CpswfFunction> psi;
  int size() const { return static_cast<int>(psi.size()); }
  std::vector<double> chis() const;
};

std::shared_ptr<const CpswfFamily> make_family(const ProlateParams& p, int nmax);

enum class Basis { T, phi, psi };

struct SpectralFunction {
  Basis basis = Basis::T;
  double alpha = 0.0;
  std::shared_ptr<const BesselZeroTable> table;  // phi basis
  std::shared_ptr<const CpswfFamily> family;     // psi basis
  std::vector<double> coeffs;                    // T, psi: index from 0; phi: coeffs[j-1] = b_j
};

enum class SobolevFlavor { hankel, sturm_liouville };

struct SobolevSpec {
  SobolevFlavor flavor = SobolevFlavor::hankel;
  double r = 0.0;
};

// phi_1..phi_J sampled on the nodes, row j-1
std::vector<std::vector<double>> phi_table(const BesselZeroTable& table, const QuadratureRule& rule, int J);

SpectralFunction fb_analyze(const GridFunction& f, std::shared_ptr<const BesselZeroTable> table, int J);
GridFunction synthesize(const SpectralFunction& g, const RulePtr& rule);
double sobolev_norm(const SpectralFunction& g, const SobolevSpec& spec, const std::vector<double>& eigs);
double derivative_norm_integer(const SpectralFunction& u, int k, const RulePtr& rule);

SpectralFunction project(const GridFunction& f, std::shared_ptr<const CpswfFamily> family, int N);

struct SlTruncationReport {
  double lhs = 0.0;     // H~^delta norm of the tail beyond N (plain l2 tail when delta = 0)
  double lhs_l2 = 0.0;  // plain l2 tail
  double rhs = 0.0;     // chi_{N+1}^{(delta-r)/2} ||u||_{H~^r}
  bool holds = false;
};

SlTruncationReport sl_truncation_check(const SpectralFunction& u, const std::vector<double>& chis, double r, int N,
                                       double delta);

struct RateRow {
  int N = 0;
  double lambda_next = 0.0;
  double error = 0.0;
  bool used = false;
};

struct RateReport {
  double r = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms deviation of the log-log fit
  int used = 0;
  std::vector<RateRow> rows;
};

RateReport convergence_study(const GridFunction& f, std::shared_ptr<const CpswfFamily> family,
                             const BesselZeroTable& table, const std::vector<int>& Ns, double r);

// phi series with b_j = lambda_j^{-s}, j = 1..J
SpectralFunction fb_power_law(std::shared_ptr<const BesselZeroTable> table, double s, int J);

// least-squares line through (x_i, y_i): returns {slope, intercept, rms residual}
struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cpswf
