#include "cpswf/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cpswf/errors.hpp"

namespace cpswf {

std::vector<double> CpswfFamily::chis() const {
  std::vector<double> out;
  out.reserve(psi.size());
  for (const auto& f : psi) out.push_back(f.chi);
  return out;
}

std::shared_ptr<const CpswfFamily> make_family(const ProlateParams& p, int nmax) {
  auto fam = std::make_shared<CpswfFamily>();
  fam->params = p;
  fam->psi = compute_range(p, nmax);
  return fam;
}

std::vector<std::vector<double>> phi_table(const BesselZeroTable& table, const QuadratureRule& rule, int J) {
  if (J > table.size()) throw ContractError("phi_table: J exceeds the zero table");
  std::vector<std::vector<double>> out(static_cast<std::size_t>(J));
  for (int j = 1; j <= J; ++j) {
    auto& row = out[j - 1];
    row.reserve(rule.nodes.size());
    for (double x : rule.nodes) row.push_back(phi(j, table, x));
  }
  return out;
}

SpectralFunction fb_analyze(const GridFunction& f, std::shared_ptr<const BesselZeroTable> table, int J) {
  if (!table) throw ContractError("fb_analyze: null zero table");
  if (J < 1 || J > table->size()) throw ContractError("fb_analyze: J outside the zero table");
  if (f.rule->size() < 8 * J)
    throw ResolutionError("fb_analyze: rule of " + std::to_string(f.rule->size()) + " nodes cannot resolve phi_" +
                          std::to_string(J));
  const auto rows = phi_table(*table, *f.rule, J);
  SpectralFunction g;
  g.basis = Basis::phi;
  g.alpha = table->alpha;
  g.coeffs.resize(static_cast<std::size_t>(J));
  const auto& w = f.rule->weights;
  for (int j = 0; j < J; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values[i] * rows[j][i];
    g.coeffs[j] = s;
  }
  g.table = std::move(table);
  return g;
}

GridFunction synthesize(const SpectralFunction& g, const RulePtr& rule) {
  std::vector<double> v(rule->nodes.size(), 0.0);
  const std::size_t nc = g.coeffs.size();
  switch (g.basis) {
    case Basis::T:
      for (std::size_t k = 0; k < nc; ++k) {
        if (g.coeffs[k] == 0.0) continue;
        for (std::size_t i = 0; i < v.size(); ++i)
          v[i] += g.coeffs[k] * jacobi_T(static_cast<int>(k), g.alpha, rule->nodes[i]);
      }
      break;
    case Basis::phi:
      if (!g.table || static_cast<int>(nc) > g.table->size()) throw ContractError("synthesize: zero table too short");
      for (std::size_t j = 0; j < nc; ++j) {
        if (g.coeffs[j] == 0.0) continue;
        for (std::size_t i = 0; i < v.size(); ++i)
          v[i] += g.coeffs[j] * phi(static_cast<int>(j) + 1, *g.table, rule->nodes[i]);
      }
      break;
    case Basis::psi:
      if (!g.family || static_cast<int>(nc) > g.family->size())
        throw ContractError("synthesize: CPSWF family too short");
      for (std::size_t n = 0; n < nc; ++n) {
        if (g.coeffs[n] == 0.0) continue;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.coeffs[n] * evaluate(g.family->psi[n], rule->nodes[i]);
      }
      break;
  }
  return GridFunction(rule, std::move(v));
}

double sobolev_norm(const SpectralFunction& g, const SobolevSpec& spec, const std::vector<double>& eigs) {
  if (spec.r < 0.0) throw DomainError("sobolev_norm: r must be nonnegative");
  const bool ok = (spec.flavor == SobolevFlavor::hankel && g.basis == Basis::phi) ||
                  (spec.flavor == SobolevFlavor::sturm_liouville && g.basis == Basis::psi);
  if (!ok) throw ContractError("sobolev_norm: basis does not match the norm flavor");
  if (eigs.size() < g.coeffs.size()) throw ContractError("sobolev_norm: fewer eigenvalues than coefficients");
  const double p = spec.flavor == SobolevFlavor::hankel ? 2.0 * spec.r : spec.r;
  double s = 0.0;
  for (std::size_t i = 0; i < g.coeffs.size(); ++i) s += std::pow(eigs[i], p) * g.coeffs[i] * g.coeffs[i];
  return std::sqrt(s);
}

double derivative_norm_integer(const SpectralFunction& u, int k, const RulePtr& rule) {
  if (u.basis != Basis::phi || !u.table) throw ContractError("derivative_norm_integer: needs a phi series");
  if (k < 0 || k > 4) throw ContractError("derivative_norm_integer: k > 4 unsupported");
  const auto& t = *u.table;
  if (static_cast<int>(u.coeffs.size()) > t.size()) throw ContractError("derivative_norm_integer: table too short");
  double s = 0.0;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const double x = rule->nodes[i];
    double v = 0.0;
    for (std::size_t j = 0; j < u.coeffs.size(); ++j) {
      const double lam = t.zeros[j];
      v += u.coeffs[j] * std::pow(-lam, k) * std::sqrt(2.0 * x) * bessel_j(t.alpha + k, lam * x) / t.norms[j];
    }
    s += rule->weights[i] * v * v;
  }
  return std::sqrt(s);
}

SpectralFunction project(const GridFunction& f, std::shared_ptr<const CpswfFamily> family, int N) {
  if (!family) throw ContractError("project: null family");
  if (N < 0 || N >= family->size()) throw ContractError("project: psi_N not available");
  SpectralFunction g;
  g.basis = Basis::psi;
  g.alpha = family->params.alpha;
  g.coeffs.resize(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) g.coeffs[n] = inner_product(f, sample(family->psi[n], f.rule));
  g.family = std::move(family);
  return g;
}

SlTruncationReport sl_truncation_check(const SpectralFunction& u, const std::vector<double>& chis, double r, int N,
                                       double delta) {
  if (u.basis != Basis::psi) throw ContractError("sl_truncation_check: needs a psi expansion");
  if (!(r >= 0.0) || !(delta >= 0.0) || delta > r) throw DomainError("sl_truncation_check: need 0 <= delta <= r");
  if (N < 0 || static_cast<std::size_t>(N + 1) >= chis.size() || chis.size() < u.coeffs.size())
    throw ContractError("sl_truncation_check: chi values beyond N are required");
  double tail = 0.0, tail2 = 0.0, full = 0.0;
  for (std::size_t n = 0; n < u.coeffs.size(); ++n) {
    const double a2 = u.coeffs[n] * u.coeffs[n];
    full += std::pow(chis[n], r) * a2;
    if (static_cast<int>(n) > N) {
      tail += std::pow(chis[n], delta) * a2;
      tail2 += a2;
    }
  }
  SlTruncationReport rep;
  rep.lhs = std::sqrt(tail);
  rep.lhs_l2 = std::sqrt(tail2);
  rep.rhs = std::pow(chis[N + 1], 0.5 * (delta - r)) * std::sqrt(full);
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ContractError("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

RateReport convergence_study(const GridFunction& f, std::shared_ptr<const CpswfFamily> family,
                             const BesselZeroTable& table, const std::vector<int>& Ns, double r) {
  if (!family) throw ContractError("convergence_study: null family");
  if (Ns.empty()) throw ContractError("convergence_study: empty N list");
  const double c = family->params.c;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (i > 0 && Ns[i] <= Ns[i - 1]) throw ContractError("convergence_study: N list must ascend");
    if (!(Ns[i] > std::numbers::e * c / 4.0))
      throw HypothesisError("convergence_study: N = " + std::to_string(Ns[i]) + " violates N > e c / 4");
  }
  const int Nmax = Ns.back();
  if (Nmax >= family->size()) throw ContractError("convergence_study: family too short");
  if (Nmax + 1 > table.size()) throw ContractError("convergence_study: zero table too short");

  const auto& rule = f.rule;
  const std::size_t m = rule->nodes.size();
  std::vector<double> resid = f.values;
  RateReport rep;
  rep.r = r;
  std::size_t next = 0;
  for (int n = 0; n <= Nmax && next < Ns.size(); ++n) {
    const GridFunction pn = sample(family->psi[n], rule);
    const double a = inner_product(f, pn);
    for (std::size_t i = 0; i < m; ++i) resid[i] -= a * pn.values[i];
    if (n == Ns[next]) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += rule->weights[i] * resid[i] * resid[i];
      RateRow row;
      row.N = n;
      row.lambda_next = table.lambda(n + 1);
      row.error = std::sqrt(s);
      row.used = row.error >= 1e-13;
      rep.rows.push_back(row);
      ++next;
    }
  }
  std::vector<double> lx, ly;
  for (const auto& row : rep.rows)
    if (row.used) {
      lx.push_back(std::log(row.lambda_next));
      ly.push_back(std::log(row.error));
    }
  rep.used = static_cast<int>(lx.size());
  rep.slope = rep.intercept = rep.residual = std::nan("");
  if (lx.size() >= 2) {
    const LineFit lf = fit_line(lx, ly);
    rep.slope = lf.slope;
    rep.intercept = lf.intercept;
    rep.residual = lf.rms;
  }
  return rep;
}

SpectralFunction fb_power_law(std::shared_ptr<const BesselZeroTable> table, double s, int J) {
  if (!table || J > table->size()) throw ContractError("fb_power_law: zero table too short");
  SpectralFunction g;
  g.basis = Basis::phi;
  g.alpha = table->alpha;
  g.coeffs.resize(static_cast<std::size_t>(J));
  for (int j = 1; j <= J; ++j) g.coeffs[j - 1] = std::pow(table->lambda(j), -s);
  g.table = std::move(table);
  return g;
}

}  // namespace cpswf
