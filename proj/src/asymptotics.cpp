#include "cpswf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cpswf/errors.hpp"
#include "cpswf/sobolev.hpp"

namespace cpswf {

namespace {

const QuadratureRule& rule64() {
  static const QuadratureRule r = gauss_legendre(64);
  return r;
}

}  // namespace

double liouville_S(double q, double x) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("liouville_S: q outside (0,1)");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("liouville_S: x outside [0,1]");
  // t = cos(theta) removes the endpoint singularity
  const double tmax = std::acos(x);
  const auto& r = rule64();
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    const double ct = std::cos(tmax * r.nodes[i]);
    s += r.weights[i] * std::sqrt(1.0 - q * ct * ct);
  }
  return tmax * s;
}

double bessel_type_bound(const CpswfFunction& psi, double x) {
  const double a = psi.params.alpha, q = psi.q, chi = psi.chi;
  const double x2 = x * x;
  return 2.0 / ((1.0 - q) * std::sqrt(chi)) * (std::fabs(a * a - 0.25) / x2 + 3.0 + 2.0 * q) *
         std::pow(1.0 - x2, 0.25) / std::pow(1.0 - q * x2, 0.75);
}

ApproxReport bessel_type_approx(const CpswfFunction& psi, const std::vector<double>& grid) {
  if (!(psi.q <= 0.5))
    throw HypothesisError("Bessel-type approximation theorem requires q = c^2/chi <= 1/2, got q = " +
                          std::to_string(psi.q));
  ApproxReport rep;
  rep.grid = grid;
  const double chi = psi.chi, q = psi.q, rc = std::sqrt(chi);
  // amplitude fixed at x = 1, where the remainder vanishes
  rep.A = evaluate(psi, 1.0) / std::pow(chi, 0.25);
  double vmax = 0.0;
  for (double x : grid) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("bessel_type_approx: grid must lie in (0,1)");
    const double t = evaluate(psi, x);
    const double z = rc * liouville_S(q, x);
    const double ap = rep.A * std::sqrt(z) * bessel_j(0.0, z) / (std::pow(1.0 - x * x, 0.25) * std::pow(1.0 - q * x * x, 0.25));
    rep.truth.push_back(t);
    rep.approx.push_back(ap);
    rep.error.push_back(std::fabs(t - ap));
    rep.bound.push_back(bessel_type_bound(psi, x));
    vmax = std::max(vmax, std::fabs(t));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool ex = rep.bound[i] > 1e3 * vmax;
    rep.excluded.push_back(ex ? 1 : 0);
    if (ex) continue;
    ++rep.admissible;
    if (rep.error[i] > rep.bound[i]) ++rep.flagged;
    rep.worst_ratio = std::max(rep.worst_ratio, rep.error[i] / rep.bound[i]);
  }
  rep.flag_rate = rep.admissible > 0 ? 1.0 - static_cast<double>(rep.flagged) / rep.admissible : 1.0;
  return rep;
}

double jacobi_constant(const CpswfFunction& psi) {
  const double a = psi.params.alpha;
  const int n = psi.n;
  return limit_at_zero(psi) / (std::sqrt(2.0 * (2.0 * n + a + 1.0)) * binom_shift(a, n));
}

ApproxReport jacobi_type_approx(const CpswfFunction& psi, const std::vector<double>& grid) {
  ApproxReport rep;
  rep.grid = grid;
  rep.A = jacobi_constant(psi);
  const double a = psi.params.alpha, c = psi.params.c;
  const double scale = (2.0 * psi.n + a + 1.0) / (c * c);
  for (double x : grid) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("jacobi_type_approx: grid must lie in (0,1)");
    const double t = evaluate(psi, x);
    const double ap = rep.A * jacobi_T(psi.n, a, x);
    const double e = std::fabs(t - ap);
    const double rho = e / std::pow(x, 2.0 * a + 0.5);
    rep.truth.push_back(t);
    rep.approx.push_back(ap);
    rep.error.push_back(e);
    rep.scaled.push_back(rho);
    rep.excluded.push_back(0);
    rep.sup_scaled = std::max(rep.sup_scaled, rho);
  }
  rep.scaled_constant = rep.sup_scaled * scale;
  for (double x : grid) rep.bound.push_back(rep.sup_scaled * std::pow(x, 2.0 * a + 0.5));
  rep.admissible = static_cast<int>(grid.size());
  return rep;
}

SupLocalization sup_localization_check(const CpswfFunction& psi) {
  const double a = psi.params.alpha, c = psi.params.c, chi = psi.chi, q = psi.q;
  if (!(a >= 0.5)) throw HypothesisError("sup localization: requires alpha >= 1/2");
  if (!(c * c > a * a - 0.25)) throw HypothesisError("sup localization: requires c^2 > alpha^2 - 1/4");
  if (!(q <= 0.5)) throw HypothesisError("sup localization: requires q <= 1/2");
  constexpr int G = 4000;
  SupLocalization s;
  double best = -1.0;
  for (int i = 0; i < G; ++i) {
    const double x = (i + 0.5) / G;
    const double v = std::fabs(std::pow(1.0 - x * x, 0.25) * std::pow(1.0 - q * x * x, 0.25) * evaluate(psi, x));
    if (v > best) {
      best = v;
      s.x_star = x;
    }
  }
  const double pi = std::numbers::pi;
  s.delta1 = std::sqrt(2.0 * (a * a - 0.25) / chi);
  s.delta2 = (pi + 0.5 * pi * a - 0.75) / std::sqrt(chi + 0.25 - a * a);
  s.pass = s.delta1 < s.x_star && s.x_star < s.delta2;
  return s;
}

int admissible_index(const ProlateParams& p, double chi) {
  const double a = p.alpha, c2 = p.c * p.c;
  const double shift = (2.0 * std::sqrt(a + 1.0) / ((a + 2.0) * std::sqrt(a + 3.0)) + recurrence_b(0, a)) * c2;
  int last = -1;
  for (int k = 0;; ++k) {
    const double s = a + 2.0 * k;
    if (chi >= (s + 0.5) * (s + 1.5) + shift)
      last = k;
    else
      break;
  }
  return last;
}

CoefficientDecayReport coefficient_decay_report(const CpswfFunction& psi) {
  CoefficientDecayReport rep;
  const double a = psi.params.alpha;
  rep.n_alpha = std::min(admissible_index(psi.params, psi.chi), psi.K() - 1);
  rep.theorem_applies = a > 0.0;
  // the recurrence runs on e_k = (-1)^k d_k
  auto e = [&](int k) { return (k % 2 ? -1.0 : 1.0) * psi.d[k]; };
  for (int k = 1; k <= rep.n_alpha; ++k) {
    if ((e(k) > 0.0) != (e(0) > 0.0) || e(k) == 0.0) ++rep.sign_violations;
    if (std::fabs(e(k)) < std::fabs(e(k - 1))) ++rep.monotone_violations;
  }
  if (psi.n >= 1 && psi.mu != 0.0) {
    const int jmax = std::min(psi.n, rep.n_alpha);
    for (int j = 0; j <= jmax; ++j) {
      if (psi.d[j] == 0.0) continue;
      const double lr = std::log(std::fabs(psi.d[j])) + 0.5 * std::log(2.0 * (2.0 * j + a + 1.0)) +
                        j * std::log(psi.q / 8.0) - std::lgamma(a + j + 1.0) - a * std::log(double(psi.n)) -
                        std::log(std::fabs(psi.mu));
      rep.max_bound_ratio = std::max(rep.max_bound_ratio, std::exp(lr));
      ++rep.bound_terms;
    }
  }
  return rep;
}

bool moment_hypothesis(const CpswfFunction& psi, int k) {
  const double a = psi.params.alpha;
  return psi.chi >= 4.0 * (k + 1.0) * (k + 2.0 + a) + (a + 0.5) * (a + 1.5);
}

MomentCheck moment_check(const CpswfFunction& psi, int k, const QuadratureRule& rule) {
  if (k < 0) throw DomainError("moment_check: k must be nonnegative");
  if (!moment_hypothesis(psi, k))
    throw HypothesisError("moment bound: requires chi_n >= 4(k+1)(k+2+alpha) + (alpha+1/2)(alpha+3/2)");
  const double a = psi.params.alpha, c = psi.params.c;
  const double sgn = psi.d[0] >= 0.0 ? 1.0 : -1.0;
  const double p = 2.0 * k + a + 0.5;
  // t^{2k+alpha+1/2} is orthogonal to T_m for m > k, so only d_0..d_k contribute
  MomentCheck m;
  const int top = std::min(k, psi.K() - 1);
  for (int j = 0; j <= top; ++j) {
    double s = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
      const double t = rule.nodes[i];
      s += rule.weights[i] * std::pow(t, p) * jacobi_T(j, a, t);
    }
    m.moment += psi.d[j] * s;
  }
  for (int i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    m.moment_direct += rule.weights[i] * std::pow(t, p) * evaluate(psi, t);
  }
  m.moment *= sgn;
  m.moment_direct *= sgn;
  const double lb = (a + k) * std::log(2.0) + std::lgamma(a + k + 1.0) - (a + 0.5) * std::log(c) - k * std::log(psi.q);
  m.bound = std::exp(lb) * std::fabs(psi.mu) * std::fabs(limit_at_zero(psi));
  m.pass = m.moment >= 0.0 && m.moment <= m.bound * (1.0 + 1e-10);
  return m;
}

double coupling(const CpswfFunction& psi, const BesselZeroTable& table, int j) {
  const double a = psi.params.alpha;
  const double lam = table.lambda(j);
  double s = 0.0;
  for (int k = 0; k < psi.K(); ++k) {
    const double nu = 2.0 * k + a + 1.0;
    s += psi.d[k] * std::sqrt(2.0 * k + a + 1.0) * bessel_j(nu, lam);
  }
  return 2.0 * s / (lam * table.norm(j));
}

CouplingReport coupling_decay_report(const std::vector<CpswfFunction>& family, const BesselZeroTable& table,
                                     int n_lo, int n_hi, int j_max) {
  CouplingReport rep;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  if (family.empty() || n_hi >= static_cast<int>(family.size()) || j_max > table.size())
    throw ContractError("coupling_decay_report: family or zero table too short");
  const ProlateParams& p = family.front().params;
  if (!(n_lo > std::numbers::e * p.c / 4.0))
    throw HypothesisError("coupling decay: requires n > e c / 4 for every n in range");
  std::vector<double> gx, gy;
  for (int j = 1; j <= j_max; ++j) {
    const double lam = table.lambda(j);
    std::vector<double> ns, lg;
    double smax = 0.0;
    for (int n = n_lo; n <= n_hi; ++n) {
      if (!(lam < admissible_index(p, family[n].chi))) continue;
      const double g = std::fabs(coupling(family[n], table, j));
      if (!(g > 0.0)) continue;
      ns.push_back(n);
      lg.push_back(std::log(g));
      gx.push_back(n);
      gy.push_back(std::log(g * lam));
      smax = std::max(smax, g * lam);
    }
    if (ns.size() < 2) continue;
    rep.js.push_back(j);
    rep.slopes.push_back(fit_line(ns, lg).slope);
    rep.scaled_max.push_back(smax);
  }
  rep.pairs = static_cast<int>(gx.size());
  rep.empty = rep.js.empty();
  if (rep.empty) return rep;
  rep.a = -fit_line(gx, gy).slope;
  double lm = -INFINITY;
  for (std::size_t i = 0; i < gx.size(); ++i) lm = std::max(lm, gy[i] + rep.a * gx[i]);
  rep.M = std::exp(lm);
  if (rep.js.size() >= 2) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rep.js.size(); ++i) {
      lx.push_back(std::log(table.lambda(rep.js[i])));
      ly.push_back(std::log(rep.scaled_max[i]));
    }
    rep.scaling_exponent = fit_line(lx, ly).slope;
  }
  return rep;
}

int improved_bound_onset(const std::vector<CpswfFunction>& family, double eps) {
  const int nmax = static_cast<int>(family.size()) - 1;
  int n0 = nmax + 1;
  for (int n = nmax; n >= 0; --n) {
    if (family[n].chi >= improved_lower(family[n].params, n, eps))
      n0 = n;
    else
      break;
  }
  return n0;
}

}  // namespace cpswf
