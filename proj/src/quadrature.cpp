#include "whs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace whs::quad {

namespace {

Rule compute_rule(std::size_t n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(std::size_t order) {
  if (order == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    if (order == 1)
      it = cache.emplace(order, Rule{{0.0}, {2.0}}).first;
    else
      it = cache.emplace(order, compute_rule(order)).first;
  }
  return it->second;
}

Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, double rel_tol, std::size_t order,
                            std::size_t max_panels) {
  struct Panel {
    double lo, hi, value, error;
  };
  auto eval = [&](double lo, double hi) {
    const double coarse = integrate(f, lo, hi, order);
    const double fine = integrate(f, lo, hi, 2 * order);
    return Panel{lo, hi, fine, std::abs(fine - coarse)};
  };
  std::vector<Panel> panels{eval(a, b)};
  Estimate est;
  while (true) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    est.value = total;
    est.error = err;
    est.panels = panels.size();
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
      est.converged = true;
      return est;
    }
    if (panels.size() >= max_panels) return est;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    panels[worst] = eval(p.lo, mid);
    panels.push_back(eval(mid, p.hi));
  }
}

}  // namespace whs::quad
