#pragma once

#include <cmath>
#include <memory>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace cpswf {

template <class Real>
struct BasicRule {
  std::vector<Real> nodes;    // strictly increasing in (0,1)
  std::vector<Real> weights;  // positive, summing to 1
  int size() const { return static_cast<int>(nodes.size()); }
};

using QuadratureRule = BasicRule<double>;
using RulePtr = std::shared_ptr<const QuadratureRule>;

// m-point Gauss-Legendre rule mapped to (0,1); Newton on P_m from Chebyshev-type guesses
template <class Real>
BasicRule<Real> gauss_legendre_t(int m) {
  using std::abs;
  using std::cos;
  if (m < 1 || m > 4096) throw std::domain_error("gauss_legendre: m outside [1, 4096]");
  BasicRule<Real> r;
  r.nodes.assign(static_cast<std::size_t>(m), Real(0));
  r.weights.assign(static_cast<std::size_t>(m), Real(0));
  if (m == 1) {
    r.nodes[0] = Real(1) / Real(2);
    r.weights[0] = Real(1);
    return r;
  }
  const Real pi = boost::math::constants::pi<Real>();
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // root number i+1 of P_m on (-1,1), counted from +1 downwards
    Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(m) + Real(0.5)));
    Real dp = Real(1);
    for (int it = 0; it < 100; ++it) {
      Real p0 = Real(1), p1 = x;
      for (int k = 2; k <= m; ++k) {
        const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Real(m) * (x * p1 - p0) / (x * x - Real(1));
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= Real(4) * std::numeric_limits<Real>::epsilon()) break;
    }
    // final derivative at the converged root
    {
      Real p0 = Real(1), p1 = x;
      for (int k = 2; k <= m; ++k) {
        const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Real(m) * (x * p1 - p0) / (x * x - Real(1));
    }
    const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    const std::size_t hi = static_cast<std::size_t>(m - 1 - i), lo = static_cast<std::size_t>(i);
    r.nodes[hi] = (Real(1) + x) / Real(2);
    r.nodes[lo] = (Real(1) - x) / Real(2);
    r.weights[hi] = w / Real(2);
    r.weights[lo] = w / Real(2);
  }
  return r;
}

QuadratureRule gauss_legendre(int m);
RulePtr make_rule(int m);

struct GridFunction {
  RulePtr rule;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(RulePtr r, std::vector<double> v);
  // sample f at the nodes of r
  template <class F>
  static GridFunction sample(RulePtr r, F&& f) {
    std::vector<double> v;
    v.reserve(r->nodes.size());
    for (double x : r->nodes) v.push_back(f(x));
    return GridFunction(std::move(r), std::move(v));
  }
};

double integrate(const GridFunction& f);
double inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

}  // namespace cpswf
