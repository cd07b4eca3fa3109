#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "cpswf/asymptotics.hpp"
#include "cpswf/cpswf.hpp"
#include "cpswf/errors.hpp"
#include "cpswf/sobolev.hpp"
#include "cpswf/specfun.hpp"
#include "doctest.h"

using namespace cpswf;

namespace {
std::shared_ptr<const BesselZeroTable> zeros(double alpha, int J) {
  return std::make_shared<const BesselZeroTable>(bessel_zero(alpha, J));
}

SpectralFunction psi_series(std::shared_ptr<const CpswfFamily> fam, std::vector<double> coeffs) {
  SpectralFunction s;
  s.basis = Basis::psi;
  s.alpha = fam->params.alpha;
  s.family = std::move(fam);
  s.coeffs = std::move(coeffs);
  return s;
}

double sum_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}
}  // namespace

TEST_SUITE("sobolev") {
  TEST_CASE("Fourier-Bessel analysis") {
    const auto tab = zeros(0.0, 200);
    const auto rule = make_rule(1600);
    const auto p2 = GridFunction::sample(rule, [&](double x) { return phi(2, *tab, x); });
    const auto g = fb_analyze(p2, tab, 40);
    REQUIRE(g.coeffs.size() == 40);
    for (int j = 0; j < 40; ++j) CHECK(std::abs(g.coeffs[j] - (j == 1 ? 1.0 : 0.0)) <= 1e-12);

    const auto t0 = GridFunction::sample(rule, [](double x) { return jacobi_T(0, 0.0, x); });
    const auto b = fb_analyze(t0, tab, 200);
    // alpha = 0: T_0 = sqrt(2x) has b_j = 2 / lambda_j, and sum_j 4 / lambda_j^2 = 1
    double partial = 0.0;
    for (int j = 1; j <= 200; ++j) {
      CHECK(std::abs(std::abs(b.coeffs[j - 1]) - 2.0 / tab->lambda(j)) <= 1e-12);
      partial += 4.0 / (tab->lambda(j) * tab->lambda(j));
    }
    CHECK(sum_sq(b.coeffs) == doctest::Approx(partial).epsilon(1e-12));
    CHECK(sum_sq(b.coeffs) >= 0.997);
    CHECK(sum_sq(b.coeffs) <= 1.0 + 1e-12);

    CHECK_THROWS_AS(fb_analyze(t0, tab, 201), ContractError);
    const auto small = GridFunction::sample(make_rule(100), [](double x) { return x; });
    CHECK_THROWS_AS(fb_analyze(small, tab, 200), ResolutionError);
  }

  TEST_CASE("Fourier-Bessel coefficients of psi_n match the closed form") {
    const ProlateParams p{1.0, 5.0};
    const auto tab = zeros(1.0, 30);
    const auto rule = make_rule(512);
    for (int n : {0, 3, 8}) {
      const auto f = compute(p, n);
      const auto g = fb_analyze(sample(f, rule), tab, 30);
      for (int j = 1; j <= 30; ++j) CHECK(std::abs(g.coeffs[j - 1] - coupling(f, *tab, j)) <= 1e-12);
    }
  }

  TEST_CASE("synthesis round trip") {
    const auto tab = zeros(0.5, 60);
    const auto rule = make_rule(512);
    SpectralFunction s;
    s.basis = Basis::phi;
    s.alpha = 0.5;
    s.table = tab;
    s.coeffs.assign(60, 0.0);
    for (int j = 0; j < 60; ++j) s.coeffs[j] = std::pow(j + 1.0, -2.0) * ((j % 3) ? 1.0 : -1.0);
    const auto f = synthesize(s, rule);
    const auto back = fb_analyze(f, tab, 60);
    for (int j = 0; j < 60; ++j) CHECK(std::abs(back.coeffs[j] - s.coeffs[j]) <= 1e-11);
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(sum_sq(s.coeffs))).epsilon(1e-12));

    s.coeffs.assign(60, 0.0);
    for (double v : synthesize(s, rule).values) CHECK(v == 0.0);

    s.coeffs.assign(4, 0.0);
    s.coeffs[3] = 1.0;
    const auto single = synthesize(s, rule);
    for (int i = 0; i < rule->size(); i += 37) CHECK(single.values[i] == doctest::Approx(phi(4, *tab, rule->nodes[i])));

    const auto fam = make_family({0.5, 4.0}, 10);
    std::vector<double> c(11, 0.0);
    c[2] = 0.6;
    c[7] = -0.8;
    const auto ps = synthesize(psi_series(fam, c), rule);
    const auto pr = project(ps, fam, 10);
    for (int n = 0; n <= 10; ++n) CHECK(std::abs(pr.coeffs[n] - c[n]) <= 1e-12);
  }

  TEST_CASE("Sobolev norms") {
    const auto tab = zeros(0.0, 100);
    SpectralFunction s;
    s.basis = Basis::phi;
    s.table = tab;
    s.coeffs = {1.0};
    const SobolevSpec h0{SobolevFlavor::hankel, 0.0}, h1{SobolevFlavor::hankel, 1.0};
    CHECK(sobolev_norm(s, h0, tab->zeros) == doctest::Approx(1.0));
    CHECK(sobolev_norm(s, h1, tab->zeros) == doctest::Approx(tab->lambda(1)).epsilon(1e-15));

    // b_j = lambda_j^{-1}: the r = 1/2 norm diverges like log J, r = 1 grows like sqrt(J)
    std::vector<double> growth;
    for (int J : {10, 20, 40, 80}) {
      s.coeffs.assign(J, 0.0);
      for (int j = 0; j < J; ++j) s.coeffs[j] = 1.0 / tab->zeros[j];
      growth.push_back(sobolev_norm(s, h1, tab->zeros));
    }
    for (std::size_t i = 1; i < growth.size(); ++i) CHECK(growth[i] / growth[i - 1] == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));

    double prev = 0.0;
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
      const double v = sobolev_norm(s, {SobolevFlavor::hankel, r}, tab->zeros);
      CHECK(v >= prev);
      prev = v;
    }

    CHECK_THROWS_AS(sobolev_norm(s, {SobolevFlavor::sturm_liouville, 1.0}, tab->zeros), ContractError);
    CHECK_THROWS_AS(sobolev_norm(s, {SobolevFlavor::hankel, -1.0}, tab->zeros), DomainError);

    const auto fam = make_family({0.0, 5.0}, 5);
    const auto ps = psi_series(fam, {0.0, 0.0, 1.0});
    const auto chis = fam->chis();
    CHECK(sobolev_norm(ps, {SobolevFlavor::sturm_liouville, 1.0}, chis) == doctest::Approx(std::sqrt(chis[2])));
    CHECK_THROWS_AS(sobolev_norm(ps, h1, chis), ContractError);
  }

  TEST_CASE("integer derivative norms") {
    const auto tab = zeros(1.0, 40);
    const auto rule = make_rule(512);
    SpectralFunction s;
    s.basis = Basis::phi;
    s.table = tab;
    s.coeffs = {1.0};
    CHECK(derivative_norm_integer(s, 0, rule) == doctest::Approx(1.0).epsilon(1e-12));
    // int_0^1 2x J_{a+1}(lambda x)^2 dx = J_{a+1}(lambda)^2 when J_a(lambda) = 0
    CHECK(derivative_norm_integer(s, 1, rule) == doctest::Approx(tab->lambda(1)).epsilon(1e-12));

    s.coeffs.assign(40, 0.0);
    for (int j = 0; j < 40; ++j) s.coeffs[j] = std::pow(j + 1.0, -3.0);
    CHECK(derivative_norm_integer(s, 0, rule) == doctest::Approx(std::sqrt(sum_sq(s.coeffs))).epsilon(1e-12));
    for (int r : {1, 2}) {
      double semi = 0.0;
      for (int k = 0; k <= r; ++k) semi += std::pow(derivative_norm_integer(s, k, rule), 2);
      const double ratio = std::sqrt(semi) / sobolev_norm(s, {SobolevFlavor::hankel, double(r)}, tab->zeros);
      CAPTURE(r);
      CHECK(ratio >= 0.1);
      CHECK(ratio <= 10.0);
    }
    CHECK_THROWS_AS(derivative_norm_integer(s, 5, rule), ContractError);
  }

  TEST_CASE("projection onto the first N+1 CPSWFs") {
    const ProlateParams p{0.5, 6.0};
    const auto fam = make_family(p, 20);
    const auto rule = make_rule(512);
    const auto f3 = sample(fam->psi[3], rule);
    const auto g = project(f3, fam, 5);
    for (int n = 0; n <= 5; ++n) CHECK(std::abs(g.coeffs[n] - (n == 3 ? 1.0 : 0.0)) <= 1e-12);
    const auto g7 = project(sample(fam->psi[7], rule), fam, 20);
    for (int n = 0; n <= 20; ++n) CHECK(std::abs(g7.coeffs[n] - (n == 7 ? 1.0 : 0.0)) <= 1e-11);

    const auto h = GridFunction::sample(rule, [](double x) { return std::pow(x, 1.0) * std::exp(-x) * (1.0 - x); });
    double prev = 1e300;
    const double nf = l2_norm(h);
    for (int N = 0; N <= 15; ++N) {
      const auto a = project(h, fam, N);
      const auto back = synthesize(a, rule);
      std::vector<double> diff(rule->size());
      for (int i = 0; i < rule->size(); ++i) diff[i] = h.values[i] - back.values[i];
      const double err = l2_norm(GridFunction(rule, diff));
      CHECK(err <= prev + 1e-14);
      CHECK(l2_norm(back) <= nf + 1e-14);
      prev = err;
      // idempotent
      const auto again = project(back, fam, N);
      for (int n = 0; n <= N; ++n) CHECK(std::abs(again.coeffs[n] - a.coeffs[n]) <= 1e-12);
    }
    CHECK_THROWS_AS(project(h, fam, 21), ContractError);
  }

  TEST_CASE("Parseval in both bases") {
    const auto tab = zeros(0.0, 200);
    const auto rule = make_rule(1600);
    const auto fam = make_family({0.0, 2.0}, 60);
    const auto f = synthesize(fb_power_law(tab, 2.0, 30), rule);
    const double nf = l2_norm(f);
    CHECK(std::sqrt(sum_sq(fb_analyze(f, tab, 200).coeffs)) == doctest::Approx(nf).epsilon(1e-10));
    CHECK(std::sqrt(sum_sq(project(f, fam, 60).coeffs)) == doctest::Approx(nf).epsilon(1e-6));
  }

  TEST_CASE("Sturm-Liouville truncation inequality") {
    const auto fam = make_family({1.0, 5.0}, 60);
    const auto chis = fam->chis();
    // saturated by psi_{N+1}
    for (int N : {3, 10}) {
      std::vector<double> c(61, 0.0);
      c[N + 1] = 1.0;
      const auto rep = sl_truncation_check(psi_series(fam, c), chis, 2.0, N, 1.0);
      CHECK(rep.holds);
      CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-12));
    }
    std::vector<double> c0(61, 0.0);
    c0[0] = 1.0;
    const auto z = sl_truncation_check(psi_series(fam, c0), chis, 1.0, 0, 0.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.holds);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> pickN(0, 40);
    int strict = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> c(50);
      for (double& v : c) v = nd(rng);
      const double r = 4.0 * (trial % 5) / 4.0;
      const double delta = r * 0.5;
      const auto rep = sl_truncation_check(psi_series(fam, c), chis, r, pickN(rng), delta);
      CHECK(rep.holds);
      if (rep.lhs < rep.rhs * (1 - 1e-6)) ++strict;
      CHECK(rep.lhs_l2 <= rep.lhs * (1.0 + 1e-14) + (delta == 0.0 ? 0.0 : 1e300));
    }
    CHECK(strict > 500);
    CHECK_THROWS_AS(sl_truncation_check(psi_series(fam, c0), chis, 1.0, 2, 2.0), DomainError);
  }

  TEST_CASE("convergence study") {
    const double c = 1.0;
    const auto fam = make_family({0.0, c}, 31);
    const auto tab = bessel_zero(0.0, 200);
    const auto rule = make_rule(1600);
    std::vector<int> Ns;
    for (int N = static_cast<int>(std::ceil(std::exp(1.0) * c / 4)) + 1; N <= 30; ++N) Ns.push_back(N);

    const auto psi2 = sample(fam->psi[2], rule);
    const auto exact = convergence_study(psi2, fam, tab, Ns, 0.0);
    for (const auto& row : exact.rows) CHECK(row.error <= 1e-13);
    CHECK(exact.used == 0);

    const auto t0 = GridFunction::sample(rule, [](double x) { return jacobi_T(0, 0.0, x); });
    const auto smooth = convergence_study(t0, fam, tab, Ns, 0.0);
    REQUIRE(smooth.used >= 2);
    CHECK(smooth.slope < -4.0);

    const auto ztab = std::make_shared<const BesselZeroTable>(tab);
    const auto f = synthesize(fb_power_law(ztab, 2.0 + 0.51, 200), rule);
    const auto rough = convergence_study(f, fam, tab, Ns, 2.0);
    CHECK(rough.slope <= -1.8);
    CHECK(rough.rows.size() == Ns.size());

    const auto wide = make_family({0.0, 20.0}, 31);
    CHECK_THROWS_AS(convergence_study(f, wide, tab, {10, 20}, 2.0), HypothesisError);
  }

  TEST_CASE("line fit") {
    const auto fit = fit_line({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0});
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.rms <= 1e-15);
    CHECK_THROWS_AS(fit_line({1.0}, {1.0}), ContractError);
  }
}
