#include "cpswf/cpswf.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "cpswf/detail/jacobi_rec.hpp"
#include "cpswf/errors.hpp"
#include "cpswf/linalg.hpp"
#include "cpswf/specfun.hpp"

namespace cpswf {

void ProlateParams::validate() const {
  if (!(alpha >= -0.5)) throw DomainError("ProlateParams: alpha must be >= -1/2");
  if (!(c > 0.0)) throw DomainError("ProlateParams: c must be positive");
}

double recurrence_b(int k, double alpha) {
  // 1/2 [1 + alpha^2 / ((alpha+2k)(alpha+2k+2))]; at k = 0 the ratio is alpha/(alpha+2)
  if (k == 0) return 0.5 * (1.0 + alpha / (alpha + 2.0));
  const double s = alpha + 2.0 * k;
  return 0.5 * (1.0 + alpha * alpha / (s * (s + 2.0)));
}

double recurrence_a(int k, double alpha, double c) {
  if (k <= 0) return 0.0;
  const double s = alpha + 2.0 * k;
  return k * (k + alpha) * c * c / (s * std::sqrt(s + 1.0) * std::sqrt(s - 1.0));
}

TridiagonalOperator build_operator(const ProlateParams& p, int K) {
  if (K < 1) throw DomainError("build_operator: K must be >= 1");
  if (!(p.alpha >= -0.5) || !(p.c >= 0.0)) throw DomainError("build_operator: invalid parameters");
  TridiagonalOperator op;
  op.params = p;
  op.diag.resize(static_cast<std::size_t>(K));
  op.offdiag.resize(static_cast<std::size_t>(K - 1));
  for (int k = 0; k < K; ++k) {
    const double s = p.alpha + 2.0 * k;
    op.diag[k] = (s + 0.5) * (s + 1.5) + p.c * p.c * recurrence_b(k, p.alpha);
  }
  for (int k = 0; k + 1 < K; ++k) op.offdiag[k] = recurrence_a(k + 1, p.alpha, p.c);
  return op;
}

namespace {

double op_norm(const TridiagonalOperator& op) {
  double m = 0.0;
  const int K = op.size();
  for (int i = 0; i < K; ++i) {
    const double r = std::fabs(op.diag[i]) + (i > 0 ? std::fabs(op.offdiag[i - 1]) : 0.0) +
                     (i + 1 < K ? std::fabs(op.offdiag[i]) : 0.0);
    m = std::max(m, r);
  }
  return m;
}

double residual(const TridiagonalOperator& op, const std::vector<double>& v, double chi) {
  const int K = op.size();
  double s = 0.0;
  for (int i = 0; i < K; ++i) {
    double r = (op.diag[i] - chi) * v[i];
    if (i > 0) r += op.offdiag[i - 1] * v[i - 1];
    if (i + 1 < K) r += op.offdiag[i] * v[i + 1];
    s += r * r;
  }
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& v, int i) {
  std::size_t pick = static_cast<std::size_t>(i);
  if (v[pick] == 0.0) {
    pick = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
      if (std::fabs(v[k]) > std::fabs(v[pick])) pick = k;
  }
  if (v[pick] < 0.0)
    for (double& t : v) t = -t;
}

// eigenpair number n of op, with residual certification
std::pair<double, std::vector<double>> eigenpair(const TridiagonalOperator& op, int n) {
  const double chi = linalg::tridiag_eigenvalue(op.diag, op.offdiag, n);
  std::vector<double> v = linalg::tridiag_inverse_iteration(op.diag, op.offdiag, chi, n);
  const double tol = 1e-11 * std::max(op_norm(op), 1.0);
  if (!(residual(op, v, chi) <= tol)) {
    // decoupled blocks: e_n may have no component along the wanted vector
    int seed = 0;
    for (int k = 1; k < op.size(); ++k)
      if (std::fabs(op.diag[k] - chi) < std::fabs(op.diag[seed] - chi)) seed = k;
    v = linalg::tridiag_inverse_iteration(op.diag, op.offdiag, chi, seed);
  }
  if (!(residual(op, v, chi) <= tol))
    throw ConvergenceError("eig_tridiagonal: residual too large for index " + std::to_string(n));
  return {chi, std::move(v)};
}

}  // namespace

EigenPairs eig_tridiagonal(const TridiagonalOperator& op, int count) {
  if (count < 1 || 2 * count > op.size())
    throw ContractError("eig_tridiagonal: count must satisfy 1 <= count <= K/2");
  EigenPairs out;
  for (int i = 0; i < count; ++i) {
    auto [chi, v] = eigenpair(op, i);
    fix_sign(v, i);
    out.chis.push_back(chi);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

double limit_at_zero(const CpswfFunction& psi) {
  const double a = psi.params.alpha;
  double s = 0.0, binom = 1.0;
  for (int k = 0; k < psi.K(); ++k) {
    if (k > 0) binom *= (k + a) / k;
    s += psi.d[k] * std::sqrt(2.0 * (2.0 * k + a + 1.0)) * binom;
  }
  return s;
}

namespace {

// mu from the behaviour of both sides of H_c psi = mu psi at the origin:
// H_c psi(x) ~ (c x)^{alpha+1/2} / (2^alpha Gamma(alpha+1)) * d_0 / sqrt(2(alpha+1))
double mu_from_origin(const CpswfFunction& psi) {
  const double a = psi.params.alpha;
  const double u0 = limit_at_zero(psi);
  const double lognum = (a + 0.5) * std::log(psi.params.c) - a * std::log(2.0) - std::lgamma(a + 1.0) -
                        0.5 * std::log(2.0 * (a + 1.0));
  return psi.d[0] * std::exp(lognum) / u0;
}

CpswfFunction solve_at(const ProlateParams& p, int n, int K) {
  const TridiagonalOperator op = build_operator(p, K);
  auto [chi, e] = eigenpair(op, n);
  // the recurrence is written for (-1)^k times the T-basis coefficients
  for (int k = 1; k < K; k += 2) e[k] = -e[k];
  fix_sign(e, n);
  CpswfFunction f;
  f.params = p;
  f.n = n;
  f.chi = chi;
  f.d = std::move(e);
  f.q = p.c * p.c / chi;
  return f;
}

}  // namespace

CpswfFunction compute(const ProlateParams& p, int n) {
  p.validate();
  if (n < 0 || n > 200) throw DomainError("compute: n outside [0, 200]");
  int K = std::max(2 * n + 30, static_cast<int>(std::ceil(2.0 * n + p.c)));
  if (K > 4096) throw ConvergenceError("compute: truncation cap 4096 exceeded for n=" + std::to_string(n));
  CpswfFunction prev = solve_at(p, n, K);
  for (;;) {
    const int K2 = 2 * K;
    if (K2 > 4096) throw ConvergenceError("compute: truncation cap 4096 exceeded for n=" + std::to_string(n));
    CpswfFunction cur = solve_at(p, n, K2);
    const bool tail_ok = std::fabs(prev.d.back()) <= 1e-14;
    const bool chi_ok = std::fabs(cur.chi - prev.chi) <= 1e-12 * std::fabs(cur.chi);
    if (tail_ok && chi_ok) break;
    prev = std::move(cur);
    K = K2;
  }
  prev.mu = mu_from_origin(prev);
  return prev;
}

std::vector<CpswfFunction> compute_range(const ProlateParams& p, int nmax) {
  std::vector<CpswfFunction> out;
  out.reserve(static_cast<std::size_t>(nmax + 1));
  for (int n = 0; n <= nmax; ++n) out.push_back(compute(p, n));
  return out;
}

namespace {

double clenshaw(const CpswfFunction& psi, double x) {
  const double a = psi.params.alpha;
  const double u = 1.0 - 2.0 * x * x;
  const int K = psi.K();
  double b1 = 0.0, b2 = 0.0;
  for (int k = K - 1; k >= 0; --k) {
    const double ck = psi.d[k] * std::sqrt(2.0 * (2.0 * k + a + 1.0));
    const auto s1 = detail::jacobi_step(k + 1, a);
    const auto s2 = detail::jacobi_step(k + 2, a);
    const double b0 = ck + (s1.a * u + s1.b) * b1 - s2.g * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

}  // namespace

double evaluate(const CpswfFunction& psi, double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("evaluate: x outside (0,1]");
  return std::pow(x, psi.params.alpha + 0.5) * clenshaw(psi, x);
}

std::vector<double> evaluate(const CpswfFunction& psi, const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(evaluate(psi, x));
  return out;
}

GridFunction sample(const CpswfFunction& psi, const RulePtr& rule) {
  return GridFunction(rule, evaluate(psi, rule->nodes));
}

namespace {

// ratio (sum_k d_k j_k(x)) / psi(x) together with the cancellation factor
// sum_k |d_k j_k(x)| / |sum_k d_k j_k(x)| of the numerator
std::pair<double, double> mu_at(const CpswfFunction& psi, double x, double psix) {
  const double a = psi.params.alpha, c = psi.params.c;
  double s = 0.0, sa = 0.0;
  for (int k = 0; k < psi.K(); ++k) {
    const double t = psi.d[k] * spherical_j(k, a, c, x);
    s += t;
    sa += std::fabs(t);
  }
  const double kappa = s != 0.0 ? sa / std::fabs(s) : INFINITY;
  return {s / psix, kappa};
}

}  // namespace

MuEstimate mu_spectral(const CpswfFunction& psi) {
  constexpr int G = 200;
  std::vector<double> xs(G), v(G), mu(G), kap(G);
  double vmax = 0.0;
  for (int i = 0; i < G; ++i) {
    xs[i] = (i + 0.5) / G;
    v[i] = evaluate(psi, xs[i]);
    vmax = std::max(vmax, std::fabs(v[i]));
  }
  if (!(vmax >= 1e-6)) throw ConvergenceError("mu_spectral: |psi| below 1e-6 at both candidate points");
  for (int i = 0; i < G; ++i) {
    if (v[i] == 0.0) {
      mu[i] = 0.0;
      kap[i] = INFINITY;
      continue;
    }
    std::tie(mu[i], kap[i]) = mu_at(psi, xs[i], v[i]);
  }
  // best-conditioned point, then the best one at least 0.05 away for the check
  int best = 0;
  for (int i = 1; i < G; ++i)
    if (kap[i] < kap[best]) best = i;
  int second = -1;
  for (int i = 0; i < G; ++i) {
    if (std::fabs(xs[i] - xs[best]) < 0.05 || !std::isfinite(kap[i])) continue;
    if (second < 0 || kap[i] < kap[second]) second = i;
  }
  if (!std::isfinite(kap[best])) throw ConvergenceError("mu_spectral: numerator vanishes on the whole grid");
  MuEstimate m;
  m.x_star = xs[best];
  m.mu = mu[best];
  m.kappa = kap[best];
  if (second >= 0) {
    m.x_check = xs[second];
    m.mu_check = mu[second];
    m.kappa_check = kap[second];
    m.rel_diff = std::fabs(m.mu_check - m.mu) / std::max(std::fabs(m.mu), 1e-300);
    m.certified = m.rel_diff <= 1e-9;
  }
  return m;
}

double slepian_lower(const ProlateParams& p, int n) {
  const double s = 2.0 * n + p.alpha;
  return (s + 0.5) * (s + 1.5);
}

double slepian_upper(const ProlateParams& p, int n) { return slepian_lower(p, n) + p.c * p.c; }

double improved_lower(const ProlateParams& p, int n, double eps) {
  return slepian_lower(p, n) + (0.25 - eps) * p.c * p.c;
}

}  // namespace cpswf
