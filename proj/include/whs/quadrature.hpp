#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace whs::quad {

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on P_n; results are cached per order.
const Rule& gauss_legendre(std::size_t order);

template <typename F>
double integrate(F&& f, double a, double b, std::size_t order) {
  const Rule& r = gauss_legendre(order);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * s;
}

/// Composite rule over `panels` equal sub-intervals.
template <typename F>
double integrate_composite(F&& f, double a, double b, std::size_t panels, std::size_t order) {
  const double h = (b - a) / static_cast<double>(panels);
  double s = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double hi = (p + 1 == panels) ? b : lo + h;
    s += integrate(f, lo, hi, order);
  }
  return s;
}

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// Globally adaptive Gauss–Legendre: a panel is accepted when the order-n and
/// order-2n rules agree within its share of the tolerance, otherwise it is
/// bisected.
Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, double rel_tol, std::size_t order = 16,
                            std::size_t max_panels = 1 << 14);

}  // namespace whs::quad
