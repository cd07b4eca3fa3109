#pragma once

namespace cpswf::detail {

// P_n = (a u + b) P_{n-1} - g P_{n-2} for the Jacobi family (alpha, 0), n >= 1
struct JacobiStep {
  double a, b, g;
};

inline JacobiStep jacobi_step(int n, double alpha) {
  if (n == 1) return {(alpha + 2.0) / 2.0, alpha / 2.0, 0.0};
  const double nn = n;
  const double s = 2.0 * nn + alpha;
  const double den = 2.0 * nn * (nn + alpha) * (s - 2.0);
  return {(s - 1.0) * s * (s - 2.0) / den, (s - 1.0) * alpha * alpha / den,
          2.0 * (nn + alpha - 1.0) * (nn - 1.0) * s / den};
}

}  // namespace cpswf::detail
