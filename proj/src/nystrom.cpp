#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/float128.hpp>

#include "cpswf/cpswf.hpp"
#include "cpswf/errors.hpp"
#include "cpswf/linalg.hpp"
#include "cpswf/specfun.hpp"

namespace cpswf {

namespace {

template <class Real>
Real kernel(Real alpha, Real c, Real x, Real y) {
  using std::sqrt;
  const Real z = c * x * y;
  return sqrt(z) * boost::math::cyl_bessel_j(alpha, z);
}

template <class Real>
std::vector<double> nystrom_impl(const ProlateParams& p, const BasicRule<Real>& rule, int count) {
  using std::sqrt;
  const int m = rule.size();
  if (m < 256) throw ResolutionError("nystrom_spectrum: rule needs at least 256 nodes");
  if (count < 1 || count > m) throw ContractError("nystrom_spectrum: count outside [1, m]");
  const Real alpha(p.alpha), c(p.c);
  std::vector<Real> a(static_cast<std::size_t>(m) * m);
  std::vector<Real> sw(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) sw[i] = sqrt(rule.weights[i]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const Real v = sw[i] * sw[j] * kernel(alpha, c, rule.nodes[i], rule.nodes[j]);
      a[static_cast<std::size_t>(i) * m + j] = v;
      a[static_cast<std::size_t>(j) * m + i] = v;
    }
  std::vector<Real> ev = linalg::symmetric_eigenvalues(a, m);
  std::vector<double> out;
  out.reserve(ev.size());
  for (const Real& v : ev) out.push_back(static_cast<double>(v));
  std::stable_sort(out.begin(), out.end(), [](double x, double y) { return std::fabs(x) > std::fabs(y); });
  out.resize(static_cast<std::size_t>(count));
  return out;
}

}  // namespace

std::vector<double> nystrom_spectrum(const ProlateParams& p, const QuadratureRule& rule, int count) {
  p.validate();
  return nystrom_impl<double>(p, rule, count);
}

std::vector<double> nystrom_spectrum_extended(const ProlateParams& p, int m, int count) {
  using boost::multiprecision::float128;
  p.validate();
  const BasicRule<float128> rule = gauss_legendre_t<float128>(m);
  return nystrom_impl<float128>(p, rule, count);
}

HankelKernel::HankelKernel(const ProlateParams& p, RulePtr rule) : p_(p), rule_(std::move(rule)) {
  p_.validate();
  if (!rule_) throw ContractError("HankelKernel: null rule");
  n_ = rule_->size();
  if (n_ < 256) throw ResolutionError("hankel_apply: rule needs at least 256 nodes");
  k_.resize(static_cast<std::size_t>(n_) * n_);
  const auto& x = rule_->nodes;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = kernel(p_.alpha, p_.c, x[i], x[j]);
      k_[static_cast<std::size_t>(i) * n_ + j] = v;
      k_[static_cast<std::size_t>(j) * n_ + i] = v;
    }
}

GridFunction HankelKernel::apply(const GridFunction& f) const {
  if (!f.rule || (f.rule != rule_ && (f.rule->nodes != rule_->nodes || f.rule->weights != rule_->weights)))
    throw ContractError("HankelKernel::apply: function lives on a different rule");
  const auto& w = rule_->weights;
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* row = &k_[static_cast<std::size_t>(i) * n_];
    for (int j = 0; j < n_; ++j) s += row[j] * w[j] * f.values[j];
    out[i] = s;
  }
  return GridFunction(rule_, std::move(out));
}

GridFunction hankel_apply(const GridFunction& f, const ProlateParams& p) {
  return HankelKernel(p, f.rule).apply(f);
}

}  // namespace cpswf
