#include "cpswf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cpswf/asymptotics.hpp"
#include "cpswf/errors.hpp"
#include "cpswf/sobolev.hpp"
#include "cpswf/specfun.hpp"

namespace cpswf {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "fail";
}

namespace {

using Check = CheckResult (*)(const VerifyConfig&);

CheckResult make(const std::string& name, bool ok, double margin) {
  CheckResult r;
  r.name = name;
  r.status = ok ? CheckStatus::pass : CheckStatus::fail;
  r.worst_margin = margin;
  return r;
}

CheckResult skipped(const std::string& name, const std::string& why) {
  CheckResult r;
  r.name = name;
  r.status = CheckStatus::skipped;
  r.note = why;
  return r;
}

double gram_dev(const std::vector<GridFunction>& g) {
  double w = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) w = std::max(w, std::fabs(inner_product(g[i], g[j]) - (i == j ? 1.0 : 0.0)));
  return w;
}

constexpr double kGramTol = 1e-10;

CheckResult psi_gram(const VerifyConfig& cfg) {
  const RulePtr rule = make_rule(cfg.rule_size);
  std::vector<GridFunction> g;
  for (const auto& f : compute_range(cfg.params, cfg.nmax)) g.push_back(sample(f, rule));
  const double dev = gram_dev(g);
  auto r = make("psi_gram", dev <= kGramTol, 1.0 - dev / kGramTol);
  r.parameters = {{"nmax", cfg.nmax}, {"rule_size", cfg.rule_size}, {"max_deviation", dev}};
  return r;
}

CheckResult t_gram(const VerifyConfig& cfg) {
  const RulePtr rule = make_rule(cfg.rule_size);
  std::vector<GridFunction> g;
  for (int n = 0; n <= 30; ++n)
    g.push_back(GridFunction::sample(rule, [&](double x) { return jacobi_T(n, cfg.params.alpha, x); }));
  const double dev = gram_dev(g);
  auto r = make("t_gram", dev <= kGramTol, 1.0 - dev / kGramTol);
  r.parameters = {{"nmax", 30}, {"rule_size", cfg.rule_size}, {"max_deviation", dev}};
  return r;
}

CheckResult phi_gram(const VerifyConfig& cfg) {
  const RulePtr rule = make_rule(cfg.rule_size);
  const int J = std::min(30, cfg.rule_size / 8);
  const BesselZeroTable t = bessel_zero(cfg.params.alpha, J);
  std::vector<GridFunction> g;
  for (int j = 1; j <= J; ++j) g.push_back(GridFunction::sample(rule, [&](double x) { return phi(j, t, x); }));
  const double dev = gram_dev(g);
  auto r = make("phi_gram", dev <= kGramTol, 1.0 - dev / kGramTol);
  r.parameters = {{"jmax", J}, {"rule_size", cfg.rule_size}, {"max_deviation", dev}};
  return r;
}

CheckResult hankel_eigenrelation(const VerifyConfig& cfg) {
  constexpr double tol = 1e-8;
  const RulePtr rule = make_rule(std::max(cfg.rule_size, 256));
  const HankelKernel H(cfg.params, rule);
  double w = 0.0;
  for (const auto& f : compute_range(cfg.params, cfg.nmax)) {
    const GridFunction g = sample(f, rule);
    const GridFunction h = H.apply(g);
    for (std::size_t i = 0; i < g.values.size(); ++i) w = std::max(w, std::fabs(h.values[i] - f.mu * g.values[i]));
  }
  auto r = make("hankel_eigenrelation", w <= tol, 1.0 - w / tol);
  r.parameters = {{"nmax", cfg.nmax}, {"rule_size", rule->size()}, {"max_residual", w}};
  return r;
}

constexpr int kBoundsN = 60;

CheckResult slepian_bracket(const VerifyConfig& cfg) {
  const int nmax = std::max(cfg.nmax, kBoundsN);
  double margin = INFINITY;
  bool ok = true;
  const auto fam = compute_range(cfg.params, nmax);
  for (int n = 0; n <= nmax; ++n) {
    const double lo = slepian_lower(cfg.params, n), hi = slepian_upper(cfg.params, n);
    ok = ok && fam[n].chi > lo && fam[n].chi < hi;
    margin = std::min(margin, std::min(fam[n].chi - lo, hi - fam[n].chi) / (hi - lo));
  }
  auto r = make("slepian_bracket", ok, margin);
  r.parameters = {{"nmax", nmax}};
  return r;
}

CheckResult improved_bound(const VerifyConfig& cfg) {
  constexpr double eps = 0.1;
  constexpr int n0max = 40;
  const int n0 = improved_bound_onset(compute_range(cfg.params, kBoundsN), eps);
  auto r = make("improved_bound", n0 <= n0max, double(n0max - n0) / n0max);
  r.parameters = {{"eps", eps}, {"nmax", kBoundsN}, {"n0", n0}, {"n0_limit", n0max}};
  return r;
}

CheckResult bessel_type(const VerifyConfig& cfg) {
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid_size));
  for (int i = 0; i < cfg.grid_size; ++i) grid[i] = 0.05 + (0.999 - 0.05) * i / (cfg.grid_size - 1.0);
  double worst = 0.0;
  int cases = 0, flagged = 0;
  for (const auto& f : compute_range(cfg.params, cfg.nmax)) {
    if (!(f.q <= 0.5)) continue;
    const ApproxReport rep = bessel_type_approx(f, grid);
    worst = std::max(worst, rep.worst_ratio);
    flagged += rep.flagged;
    ++cases;
  }
  if (!cases) return skipped("bessel_type", "no n with q <= 1/2");
  auto r = make("bessel_type", flagged == 0, 1.0 - worst);
  r.parameters = {{"cases", cases}, {"grid_size", cfg.grid_size}, {"flagged_points", flagged}, {"max_error_over_bound", worst}};
  return r;
}

CheckResult sup_localization(const VerifyConfig& cfg) {
  const double a = cfg.params.alpha, c = cfg.params.c;
  if (!(a >= 0.5) || !(c * c > a * a - 0.25)) return skipped("sup_localization", "needs alpha >= 1/2 and c^2 > alpha^2 - 1/4");
  double margin = INFINITY;
  int cases = 0, failed = 0;
  for (const auto& f : compute_range(cfg.params, cfg.nmax)) {
    if (!(f.q <= 0.5)) continue;
    const SupLocalization s = sup_localization_check(f);
    ++cases;
    if (!s.pass) ++failed;
    margin = std::min(margin, std::min(s.x_star - s.delta1, s.delta2 - s.x_star) / s.delta2);
  }
  if (!cases) return skipped("sup_localization", "no n with q <= 1/2");
  auto r = make("sup_localization", failed == 0, margin);
  r.parameters = {{"cases", cases}, {"failed", failed}};
  return r;
}

CheckResult jacobi_type(const VerifyConfig& cfg) {
  constexpr double spread_limit = 2.0, slope_target = -1.0, slope_tol = 0.3;
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid_size));
  for (int i = 0; i < cfg.grid_size; ++i) grid[i] = (i + 0.5) / cfg.grid_size;
  const auto fam = compute_range(cfg.params, 40);
  double kmin = INFINITY, kmax = 0.0;
  std::vector<double> ln, la;
  for (int n = 5; n <= 40; ++n) {
    const ApproxReport rep = jacobi_type_approx(fam[n], grid);
    kmin = std::min(kmin, rep.scaled_constant);
    kmax = std::max(kmax, rep.scaled_constant);
    const double d = std::fabs(rep.A - 1.0);
    if (d > 0.0) {
      ln.push_back(std::log(double(n)));
      la.push_back(std::log(d));
    }
  }
  const double spread = kmax / kmin;
  const double slope = ln.size() >= 2 ? fit_line(ln, la).slope : NAN;
  const double m = std::min(1.0 - spread / spread_limit, 1.0 - std::fabs(slope - slope_target) / slope_tol);
  auto r = make("jacobi_type", spread <= spread_limit && std::fabs(slope - slope_target) <= slope_tol, m);
  r.parameters = {{"n_lo", 5}, {"n_hi", 40}, {"scaled_constant_spread", spread}, {"A_minus_1_slope", slope}};
  return r;
}

CheckResult coefficient_signs(const VerifyConfig& cfg) {
  int sign = 0, mono = 0, terms = 0;
  for (const auto& f : compute_range(cfg.params, cfg.nmax)) {
    const auto rep = coefficient_decay_report(f);
    sign += rep.sign_violations;
    mono += rep.monotone_violations;
    terms += rep.n_alpha + 1;
  }
  const int bad = sign + mono;
  auto r = make("coefficient_signs", bad == 0, bad == 0 ? 1.0 : -double(bad) / std::max(terms, 1));
  r.parameters = {{"nmax", cfg.nmax}, {"sign_violations", sign}, {"monotone_violations", mono}, {"admissible_terms", terms}};
  return r;
}

CheckResult moment_bound(const VerifyConfig& cfg) {
  if (!(cfg.params.alpha > 0.0)) return skipped("moment_bound", "stated for alpha > 0");
  const RulePtr rule = make_rule(cfg.rule_size);
  double margin = INFINITY;
  int cases = 0, failed = 0;
  for (const auto& f : compute_range(cfg.params, std::min(cfg.nmax, 20)))
    for (int k = 0; k <= 3; ++k) {
      if (!moment_hypothesis(f, k)) continue;
      const MomentCheck m = moment_check(f, k, *rule);
      ++cases;
      if (!m.pass) ++failed;
      margin = std::min(margin, std::min(m.moment, m.bound - m.moment) / m.bound);
    }
  if (!cases) return skipped("moment_bound", "no admissible (n, k)");
  auto r = make("moment_bound", failed == 0, margin);
  r.parameters = {{"cases", cases}, {"failed", failed}};
  return r;
}

CheckResult coupling_decay(const VerifyConfig& cfg) {
  constexpr double exponent_limit = 0.25;
  const int n_lo = static_cast<int>(std::ceil(std::numbers::e * cfg.params.c / 4.0)) + 1;
  const int n_hi = std::max(30, n_lo + 2);
  const BesselZeroTable table = bessel_zero(cfg.params.alpha, 40);
  const CouplingReport rep = coupling_decay_report(compute_range(cfg.params, n_hi), table, n_lo, n_hi, 40);
  if (rep.empty) return skipped("coupling_decay", "admissible (j, n) range is empty");
  const bool ok = rep.a > 0.0 && rep.scaling_exponent <= exponent_limit;
  auto r = make("coupling_decay", ok, std::min(rep.a, exponent_limit - rep.scaling_exponent));
  r.parameters = {{"n_lo", n_lo}, {"n_hi", n_hi}, {"a", rep.a}, {"M", rep.M}, {"scaling_exponent", rep.scaling_exponent}, {"pairs", rep.pairs}};
  return r;
}

CheckResult sl_truncation(const VerifyConfig& cfg) {
  const auto fam = compute_range(cfg.params, 49);
  std::vector<double> chis;
  for (const auto& f : fam) chis.push_back(f.chi);
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> pickN(0, 48);
  const double rs[] = {0.5, 1.0, 2.0, 3.7};
  double margin = INFINITY;
  int failed = 0;
  for (int t = 0; t < 200; ++t) {
    SpectralFunction u;
    u.basis = Basis::psi;
    u.alpha = cfg.params.alpha;
    for (int n = 0; n < 50; ++n) u.coeffs.push_back(gauss(rng));
    const double r = rs[t % 4];
    const int N = pickN(rng);
    for (double delta : {0.0, r / 2.0, r}) {
      const auto rep = sl_truncation_check(u, chis, r, N, delta);
      if (!rep.holds) ++failed;
      margin = std::min(margin, (rep.rhs - rep.lhs) / rep.rhs);
    }
  }
  auto r = make("sl_truncation", failed == 0, margin);
  r.parameters = {{"vectors", 200}, {"terms", 50}, {"failed", failed}};
  return r;
}

CheckResult truncation_rate(const VerifyConfig& cfg) {
  constexpr double slack = 0.2;
  const double c = cfg.params.c;
  const int n_lo = static_cast<int>(std::ceil(std::numbers::e * c / 4.0)) + 1;
  const int n_hi = std::max(30, n_lo + 3);
  const int J = cfg.J;
  const RulePtr rule = make_rule(8 * J);
  auto table = std::make_shared<const BesselZeroTable>(bessel_zero(cfg.params.alpha, std::max(J, n_hi + 1)));
  auto fam = make_family(cfg.params, n_hi);
  std::vector<int> Ns;
  for (int N = n_lo; N <= n_hi; ++N) Ns.push_back(N);
  const auto rows = phi_table(*table, *rule, J);
  double margin = INFINITY;
  bool ok = true;
  std::vector<std::pair<std::string, double>> slopes;
  for (double rr : {1.0, 2.0, 4.0}) {
    const SpectralFunction g = fb_power_law(table, rr + 0.5 + 0.01, J);
    std::vector<double> v(rule->nodes.size(), 0.0);
    for (int j = 0; j < J; ++j)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.coeffs[j] * rows[j][i];
    const RateReport rep = convergence_study(GridFunction(rule, v), fam, *table, Ns, rr);
    const bool pass = rep.slope <= -rr + slack;
    ok = ok && pass;
    margin = std::min(margin, (-rr + slack - rep.slope) / rr);
    slopes.push_back({"slope_r" + std::to_string(int(rr)), rep.slope});
  }
  auto out = make("truncation_rate", ok, margin);
  out.parameters = {{"n_lo", n_lo}, {"n_hi", n_hi}, {"J", J}};
  out.parameters.insert(out.parameters.end(), slopes.begin(), slopes.end());
  return out;
}

struct Entry {
  const char* name;
  const char* suite;
  Check fn;
};

const Entry kChecks[] = {
    {"psi_gram", "orthonormality", psi_gram},
    {"t_gram", "orthonormality", t_gram},
    {"phi_gram", "orthonormality", phi_gram},
    {"hankel_eigenrelation", "orthonormality", hankel_eigenrelation},
    {"slepian_bracket", "bounds", slepian_bracket},
    {"improved_bound", "bounds", improved_bound},
    {"bessel_type", "approximations", bessel_type},
    {"sup_localization", "approximations", sup_localization},
    {"jacobi_type", "approximations", jacobi_type},
    {"coefficient_signs", "decay", coefficient_signs},
    {"moment_bound", "decay", moment_bound},
    {"coupling_decay", "decay", coupling_decay},
    {"sl_truncation", "truncation", sl_truncation},
    {"truncation_rate", "truncation", truncation_rate},
};

}  // namespace

bool is_suite(const std::string& name) {
  return name == "all" || name == "orthonormality" || name == "bounds" || name == "approximations" ||
         name == "decay" || name == "truncation";
}

std::vector<std::string> suite_members(const std::string& name) {
  if (!is_suite(name)) throw ContractError("unknown suite: " + name);
  std::vector<std::string> out;
  for (const auto& e : kChecks)
    if (name == "all" || name == e.suite) out.push_back(e.name);
  return out;
}

CheckPlan plan_checks(const std::string& suite, const VerifyConfig& cfg) {
  CheckPlan plan;
  plan.names = suite_members(suite);
  std::vector<Check> fns;
  for (const auto& nm : plan.names)
    for (const auto& e : kChecks)
      if (nm == e.name) fns.push_back(e.fn);
  plan.run = [fns, cfg](std::size_t i) { return fns.at(i)(cfg); };
  return plan;
}

}  // namespace cpswf
