#include "cpswf/quadrature.hpp"

#include "cpswf/errors.hpp"

namespace cpswf {

QuadratureRule gauss_legendre(int m) {
  if (m < 1 || m > 4096) throw DomainError("gauss_legendre: m outside [1, 4096]");
  // endpoint weights lose digits through 1 - x^2 in double; build in long double and round
  const auto wide = gauss_legendre_t<long double>(m);
  QuadratureRule r;
  r.nodes.assign(wide.nodes.begin(), wide.nodes.end());
  r.weights.assign(wide.weights.begin(), wide.weights.end());
  return r;
}

RulePtr make_rule(int m) { return std::make_shared<const QuadratureRule>(gauss_legendre(m)); }

GridFunction::GridFunction(RulePtr r, std::vector<double> v) : rule(std::move(r)), values(std::move(v)) {
  if (!rule) throw ContractError("GridFunction: null rule");
  if (values.size() != rule->nodes.size()) throw ContractError("GridFunction: length does not match rule");
}

double integrate(const GridFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.rule->weights[i] * f.values[i];
  return s;
}

namespace {

bool same_rule(const QuadratureRule& a, const QuadratureRule& b) {
  return &a == &b || (a.nodes == b.nodes && a.weights == b.weights);
}

}  // namespace

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!f.rule || !g.rule || !same_rule(*f.rule, *g.rule))
    throw ContractError("inner_product: functions live on different rules");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.rule->weights[i] * f.values[i] * g.values[i];
  return s;
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

}  // namespace cpswf
