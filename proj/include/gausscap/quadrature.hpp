#ifndef GAUSSCAP_QUADRATURE_HPP
#define GAUSSCAP_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace gausscap {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached per order; safe to call from several threads.
const QuadratureRule& gauss_legendre(int order);

/// Integral of f over [0, 1] with a fixed Gauss-Legendre order.
double integrate_unit(const std::function<double(double)>& f, int order);

struct AdaptiveIntegral {
  double value = 0.0;
  int order = 0;
  bool converged = false;
};

/// Doubles the Gauss-Legendre order (start, 2 start, ...) until two
/// successive estimates agree to rel_tol.
AdaptiveIntegral integrate_unit_adaptive(const std::function<double(double)>& f,
                                         double rel_tol = 1e-8, int start_order = 32,
                                         int max_order = 8192);

}  // namespace gausscap

#endif  // GAUSSCAP_QUADRATURE_HPP
